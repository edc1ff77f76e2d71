"""Acceptance suite: eight exact-arithmetic criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly as a script.
"""

import functools
import time

import pytest

from peterweyl.algebra import GroupAlgebraElement
from peterweyl.groups import build_group
from peterweyl.linalg import span_rank
from peterweyl.scenarios import (
    DEFAULT_SCENARIOS,
    Scenario,
    affine_report,
    all_true,
    build_context,
    certificate_report,
    dimension_report,
    fourier_report,
    idempotent_report,
    involution_report,
    matrix_coefficient_report,
    morita_report,
)

SCENARIO_BUDGET = 30.0
AFFINE_BUDGET = 10.0


@functools.lru_cache(maxsize=None)
def context(sc: Scenario):
    return build_context(sc)


def _line(number, title, ok, detail=""):
    return f"criterion {number} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")


def criterion_1():
    worst, ok = 0.0, True
    for sc in DEFAULT_SCENARIOS:
        start = time.perf_counter()
        ctx = build_context(sc)
        report = idempotent_report(ctx)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        checks = [report[k]["idempotent"] and report[k]["star_fixed"] and report[k]["support"] for k in ("sigma", "delta", "xi")]
        ok = ok and all(checks) and report["xi"]["central"] and all(report["compatibility"].values()) and elapsed < SCENARIO_BUDGET
    return ok, f"slowest scenario {worst:.2f}s"


def _brute_force_double_cosets(chain):
    G, B = chain.G, chain.B
    seen, count = set(), 0
    for g in range(G.order):
        if g not in seen:
            count += 1
            seen |= {G.mul(G.mul(a, g), b) for a in B for b in B}
    return count


def criterion_2():
    ok = True
    for sc in DEFAULT_SCENARIOS:
        ctx = context(sc)
        d = dimension_report(ctx)
        G = ctx.chain.G
        e = ctx.e_xi.element
        brute_big = span_rank([(e * GroupAlgebraElement.delta(G, g) * e).coeffs for g in range(G.order)])
        ok = ok and d["dim H_B"] == d["#B\\G/B"] == _brute_force_double_cosets(ctx.chain) == 2
        ok = ok and d["dim H_Xi"] == d["sum deg^2"] == brute_big
        ok = ok and d["dim Z(H_Xi)"] == d["dim Z(H_sigma)"] == d["|Xi|"]
    first = dimension_report(context(DEFAULT_SCENARIOS[0]))
    second = dimension_report(context(DEFAULT_SCENARIOS[1]))
    ok = ok and first["dim H_Xi"] == 5 and second["dim H_Xi"] == 10
    return ok, "dim H_Xi = 5 for SL2(2), 10 for SL2(3)"


def criterion_3():
    ok = True
    for sc in DEFAULT_SCENARIOS:
        r = certificate_report(context(sc))["formula"]
        ok = ok and r["sum a*b = e_Xi"] and r["sum s c c* = e_Xi"] and r["scales totally positive"]
        ok = ok and r["a in H(Xi,small)"] and r["b in H(small,Xi)"]
    return ok, ""


def criterion_4():
    ok = True
    for sc in DEFAULT_SCENARIOS:
        r = morita_report(context(sc))
        ok = ok and all(r["factorization"].values())
        ok = ok and all(rt["intertwiner"] and rt["natural"] and rt["roundtrip_dim"] == rt["dim"] for rt in r["roundtrips"].values())
        c = r["center"]
        ok = ok and c["central"] and c["bijective"] and c["unital"] and c["multiplicative"] and c["certificate independent"]
    return ok, ""


def criterion_5():
    ok = all(all_true(matrix_coefficient_report(context(sc))) for sc in DEFAULT_SCENARIOS)
    return ok, ""


def criterion_6():
    ok = True
    for sc in DEFAULT_SCENARIOS:
        r = involution_report(context(sc))
        ok = ok and all_true(r)
    return ok, ""


def criterion_7():
    r = affine_report(length=8, theta_range=6, bernstein_range=3, relation_length=6)
    return all_true(r) and r["seconds"] < AFFINE_BUDGET, f"{r['seconds']:.2f}s"


def criterion_8():
    ok, total = True, 0
    for family, q in (("SL2", 2), ("SL2", 3), ("GL2", 3)):
        ctx = context(Scenario(family, q, (0,) * (1 if family == "SL2" else 2), seed=q))
        r = fourier_report(ctx, pairs=100)
        ok = ok and r["agree"] == r["pairs"] == 100 and 0 < r["equal pairs"] < 100
        total += r["agree"]
    return ok, f"{total}/300 pairs agree"


CRITERIA = [
    (1, "idempotent suite", criterion_1),
    (2, "dimension ledger", criterion_2),
    (3, "full-idempotent certificates", criterion_3),
    (4, "Morita suite", criterion_4),
    (5, "matrix-coefficient suite", criterion_5),
    (6, "involution suite", criterion_6),
    (7, "affine suite", criterion_7),
    (8, "Fourier separation oracle", criterion_8),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail))
    assert ok


def test_every_scenario_family_is_buildable():
    for family, q in (("SL2", 5), ("SL2", 7), ("GL2", 2), ("GL3", 2)):
        assert build_group(family, q).G.order > 0


if __name__ == "__main__":
    for number, title, fn in CRITERIA:
        print(_line(number, title, *fn()))
