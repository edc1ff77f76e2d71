"""Walk through the idempotents, Morita certificates and involutions for SL2(3).

    python3 demos/sl2_walkthrough.py [q] [character exponent]
"""

import sys

from peterweyl.scenarios import (
    Scenario,
    build_context,
    certificate_report,
    dimension_report,
    idempotent_report,
    involution_report,
    morita_report,
)


def main():
    q = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    k = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    ctx = build_context(Scenario("SL2", q, (k,)))

    ids = idempotent_report(ctx)
    print(f"group {ids['group']}")
    print(f"torus character {ids['character']}, Weyl orbit {ids['orbit']}")
    print(f"constituents of the induced representation: {[x.get('degree') for x in ids['Xi']]}")
    for name in ("sigma", "delta", "xi"):
        s = ids[name]
        print(f"  e_{name}: idempotent={s['idempotent']} star-fixed={s['star_fixed']}")
    print(f"  compatibility: {ids['compatibility']}")

    dims = dimension_report(ctx)
    print("dimensions:", {k: v for k, v in dims.items() if k != "seconds"})

    cert = certificate_report(ctx)["formula"]
    print("full-idempotent certificate:", {k: v for k, v in cert.items() if k != "summary"})

    mor = morita_report(ctx)
    print("Morita factorization:", mor["factorization"])
    print("center transfer:", {k: v for k, v in mor["center"].items() if isinstance(v, bool)})

    inv = involution_report(ctx)
    flat = {k: v for k, v in inv.items() if isinstance(v, bool)}
    print("involution checks:", flat)


if __name__ == "__main__":
    main()
