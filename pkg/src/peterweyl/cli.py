"""Command line entry point: ``peterweyl <command> ...``.

Scenario commands take either flags (--family/--q/--character) or a YAML or
JSON config listing scenarios; reports are printed (or written) as JSON.

Example config::

    max_conductor: 120
    sections: [idempotents, morita]
    scenarios:
      - {family: SL2, q: 3, character: [1]}
      - {family: GL2, q: 3, character: [0, 1], seed: 7}
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from peterweyl import affine
from peterweyl.errors import PeterWeylError
from peterweyl.groups import build_group, double_cosets
from peterweyl.reps import character_table, irreducible_models
from peterweyl.scalars import set_max_conductor
from peterweyl.scenarios import (
    DEFAULT_SCENARIOS,
    SECTIONS,
    Scenario,
    affine_report,
    all_true,
    build_context,
    involution_report,
    morita_report,
)


def load_config(path) -> dict:
    text = Path(path).read_text()
    data = json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at the top level")
    return data


def _scenarios(args) -> tuple[list, dict]:
    config = load_config(args.config) if args.config else {}
    if "max_conductor" in config:
        set_max_conductor(int(config["max_conductor"]))
    if args.family:
        chars = args.character if args.character is not None else []
        scs = [Scenario(args.family, args.q, tuple(chars), tuple(args.parabolic) if args.parabolic else None, args.seed)]
    elif config.get("scenarios"):
        scs = [Scenario.from_dict(d) for d in config["scenarios"]]
    else:
        scs = list(DEFAULT_SCENARIOS)
    return scs, config


def _emit(report, args) -> None:
    text = json.dumps(report, indent=2, default=str)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _scenario_args(p) -> None:
    p.add_argument("--config", help="YAML or JSON scenario file")
    p.add_argument("--family", choices=["SL2", "GL2", "GL3"])
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--character", type=int, nargs="*", help="torus character exponents")
    p.add_argument("--parabolic", type=int, nargs="*", help="block sizes of a standard parabolic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def cmd_group(args) -> int:
    chain = build_group(args.family, args.q, args.parabolic)
    G = chain.G
    report = {
        **chain.describe(),
        "classes": len(G.classes),
        "#B\\G/B": len(double_cosets(G, chain.B, chain.B)),
        "weyl_representatives": [G.format(w) for w in chain.weyl_representatives],
        "torus_characters": [c.label() for c in chain.characters()],
    }
    if args.characters:
        report["character_table"] = character_table(irreducible_models(G))
    _emit(report, args)
    return 0


def _run_sections(args, sections, **kwargs) -> int:
    scs, config = _scenarios(args)
    sections = sections or config.get("sections") or list(SECTIONS)
    reports = []
    for sc in scs:
        ctx = build_context(sc)
        entry = {"scenario": sc.label()}
        for name in sections:
            fn = SECTIONS[name]
            entry[name] = fn(ctx, **kwargs.get(name, {}))
        reports.append(entry)
    ok = all_true(reports)
    _emit({"ok": ok, "reports": reports}, args)
    return 0 if ok else 1


def cmd_run(args) -> int:
    return _run_sections(args, args.sections)


def cmd_idempotents(args) -> int:
    return _run_sections(args, ["idempotents", "dimensions"])


def cmd_morita(args) -> int:
    return _run_sections(args, ["certificates", "morita"], morita={"tables": args.tables})


def cmd_involutions(args) -> int:
    return _run_sections(args, ["involutions"], involutions={"show_action": args.action})


def cmd_affine(args) -> int:
    report = {}
    for text in args.expr or []:
        x = affine.parse_expression(text)
        entry = {"T basis": str(x), "Bernstein basis": x.bernstein_str()}
        if args.bullet:
            entry["bullet"] = str(affine.bullet(x))
        if args.star:
            entry["star"] = str(affine.star_affine(x))
        if args.specialize is not None:
            entry[f"q={args.specialize}"] = {str(w): str(c) for w, c in x.specialize(args.specialize).items()}
        report[text] = entry
    if args.verify or not args.expr:
        report["relations"] = affine_report(length=args.length)
    _emit(report, args)
    return 0 if all_true(report) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="peterweyl", description="Exact Peter-Weyl idempotent computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="describe a group and its subgroup chain")
    p.add_argument("--family", choices=["SL2", "GL2", "GL3"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--parabolic", type=int, nargs="*")
    p.add_argument("--characters", action="store_true", help="include the character table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("run", help="run report sections over scenarios")
    _scenario_args(p)
    p.add_argument("--sections", nargs="*", choices=list(SECTIONS))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("idempotents", help="idempotent and dimension reports")
    _scenario_args(p)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("morita", help="full-idempotent certificates and Morita checks")
    _scenario_args(p)
    p.add_argument("--tables", action="store_true", help="include center multiplication tables")
    p.set_defaults(func=cmd_morita)

    p = sub.add_parser("involutions", help="extended involution, bimodule swap and forms")
    _scenario_args(p)
    p.add_argument("--action", action="store_true", help="print the extension's matrix on the corner basis")
    p.set_defaults(func=cmd_involutions)

    p = sub.add_parser("affine", help="evaluate expressions in the affine Hecke algebra of type A1")
    p.add_argument("expr", nargs="*", help="e.g. 'Th[1]*T[s1] - (q-1)*Th[1]'")
    p.add_argument("--bullet", action="store_true")
    p.add_argument("--star", action="store_true")
    p.add_argument("--specialize", type=int)
    p.add_argument("--verify", action="store_true", help="also run the relation checks")
    p.add_argument("--length", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_affine)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PeterWeylError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
