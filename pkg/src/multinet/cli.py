"""Command-line front end.

Exit status: 0 on success, 1 when a checked property fails, 2 on usage,
input or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import config
from .connectives import girard_type, nondecomposability_probe
from .dsl import parse_program
from .errors import MultinetError
from .expansion import ExpansionSite, check_conditions, compose_site, one_sided_conditions
from .formulas import formula_structure, parse_formula
from .hypergraph import connected_components
from .mstructure import (
    MStructure,
    behavior,
    component_witness,
    enumerate_switchings,
    first_failing_test,
    is_component,
    is_correct,
    is_net,
    is_transitory,
    test,
    test_behavior,
)
from .program import compile_method, labelled, run, seed
from .serialization import (
    dumps,
    link_type_to_json,
    partition_set_from_json,
    partition_set_to_json,
    structure_from_json,
    structure_to_json,
    to_dot,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_structure(path: str) -> MStructure:
    return structure_from_json(_load_json(path))


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


PROPERTIES = ("correct", "net", "component", "transitory")


def cmd_check(args) -> int:
    s = _load_structure(args.file)
    verdict = {
        "correct": is_correct(s),
        "net": is_net(s),
        "component": is_component(s),
        "transitory": is_transitory(s),
    }
    ok = verdict[args.require]
    out = dict(verdict)
    if not ok or args.witness:
        sigma = first_failing_test(s)
        if sigma is not None:
            comps = connected_components(test(s, sigma))
            out["witness"] = {"switching": sigma.to_json(), "components": comps.to_json()}
        cw = component_witness(s)
        if cw is not None:
            out["component_witness"] = cw.to_json()
    _emit(out)
    return 0 if ok else 1


def cmd_behavior(args) -> int:
    s = _load_structure(args.file)
    b = behavior(s)
    if args.labels:
        b = labelled(s, b)
    _emit(partition_set_to_json(b))
    return 0


def cmd_tests(args) -> int:
    s = _load_structure(args.file)
    rows = []
    for sigma in enumerate_switchings(s):
        t = test(s, sigma)
        rows.append(
            {
                "switching": sigma.to_json(),
                "uedges": [sorted(e) for e in t.uedges],
                "behavior": test_behavior(s, sigma).to_json(),
            }
        )
    _emit(rows)
    return 0


def _parse_glue(text: str) -> tuple[tuple[str, str], ...]:
    pairs = []
    for item in text.split(","):
        left, sep, right = item.partition("=")
        if not sep or not left.strip() or not right.strip():
            raise UsageError(f"bad glue pair {item!r}; expected hostInput=guestOutput")
        pairs.append((left.strip(), right.strip()))
    return tuple(pairs)


def cmd_expand(args) -> int:
    site = ExpansionSite(_load_structure(args.host), _load_structure(args.guest), _parse_glue(args.glue))
    report = one_sided_conditions(site) if args.one_sided else check_conditions(site)
    out = {"expands": report.ok, "failed_condition": report.failed}
    if report.ok:
        composite = compose_site(site).structure
        if args.format == "dot":
            sys.stdout.write(to_dot(composite, args.unicode))
            return 0
        out["composite"] = structure_to_json(composite)
    _emit(out)
    return 0 if report.ok else 1


def _goal(args, program) -> tuple[str, ...]:
    text = args.goal or args.seed_goal
    if text:
        atoms = tuple(a.strip() for a in text.split(",") if a.strip())
        if not atoms:
            raise UsageError("empty goal")
        return atoms
    if program.goals:
        return program.goals[-1]
    raise UsageError("no goal given (use --goal or a '?-' line)")


def cmd_run(args) -> int:
    program = parse_program(_read(args.program))
    goal = _goal(args, program)
    result = run(
        program,
        seed(goal),
        depth=args.depth,
        find_all=args.all,
        concurrent=not args.sequential,
        atomic=args.atomic,
    )
    if args.format == "dot":
        for k, sol in enumerate(result.solutions):
            sys.stdout.write(to_dot(sol.structure, args.unicode, name=f"solution{k + 1}"))
    else:
        out = result.to_json()
        out["goal"] = list(goal)
        for entry, sol in zip(out["solutions"], result.solutions):
            entry["structure"] = structure_to_json(sol.structure)
        _emit(out)
    return 0 if result.status == "solved" else 1


def cmd_connective(args) -> int:
    polarity = "dual" if args.dual or args.family == "Gdual" else "primal"
    g = girard_type(args.u, args.v, polarity, allow_nonprime=args.allow_nonprime)
    _emit(link_type_to_json(g.link))
    return 0


def cmd_probe(args) -> int:
    if args.formula:
        s = formula_structure(parse_formula(args.formula))
        target = behavior(s)
        n = len(s.inputs)
    elif args.target:
        target = partition_set_from_json(_load_json(args.target))
        n = args.inputs if args.inputs is not None else len([x for x in target.ground if x != "o1"])
    else:
        raise UsageError("probe needs --target or --formula")
    found = nondecomposability_probe(target, n)
    _emit({"found": found is not None, "structure": structure_to_json(found) if found else None})
    return 0


def cmd_export(args) -> int:
    if args.method:
        program = parse_program(_read(args.file))
        try:
            s = compile_method(program.method(args.method), program.signature)
        except KeyError:
            raise UsageError(f"no method named {args.method!r}") from None
    elif args.formula:
        s = formula_structure(parse_formula(args.file))
    else:
        s = _load_structure(args.file)
    if args.format == "dot":
        sys.stdout.write(to_dot(s, args.unicode))
    else:
        _emit(structure_to_json(s))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound-switchings", type=int, metavar="N", default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="multinet", description="Multiplicative structures toolkit")
    p.add_argument("--bound-switchings", type=int, metavar="N", help="maximum number of switchings")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", parents=[common], help="correctness, net, component and transitory verdicts")
    c.add_argument("file")
    c.add_argument("--require", choices=PROPERTIES, default="correct")
    c.add_argument("--witness", action="store_true", help="always include witnesses")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("behavior", parents=[common], help="the set of border partitions")
    b.add_argument("file")
    b.add_argument("--labels", action="store_true", help="name border vertices by label")
    b.set_defaults(func=cmd_behavior)

    t = sub.add_parser("tests", parents=[common], help="every switching with its test")
    t.add_argument("file")
    t.set_defaults(func=cmd_tests)

    e = sub.add_parser("expand", parents=[common], help="glue a guest below a host")
    e.add_argument("--host", required=True)
    e.add_argument("--guest", required=True)
    e.add_argument("--glue", required=True, help="hostInput=guestOutput,...")
    e.add_argument("--one-sided", action="store_true", help="use the coarser sufficient check")
    e.add_argument("--format", choices=("json", "dot"), default="json")
    e.add_argument("--unicode", action="store_true")
    e.set_defaults(func=cmd_expand)

    r = sub.add_parser("run", parents=[common], help="search for input-free states")
    r.add_argument("program")
    r.add_argument("--goal")
    r.add_argument("--seed-goal")
    r.add_argument("--depth", type=int, default=4)
    r.add_argument("--all", action="store_true", help="all solutions within the depth")
    r.add_argument("--sequential", action="store_true", help="one method per step")
    r.add_argument("--atomic", action="store_true", help="apply methods as single links")
    r.add_argument("--format", choices=("json", "dot"), default="json")
    r.add_argument("--unicode", action="store_true")
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("connective", parents=[common], help="a Girard link type")
    g.add_argument("family", choices=("G", "Gdual"))
    g.add_argument("u", type=int)
    g.add_argument("v", type=int)
    g.add_argument("--dual", action="store_true")
    g.add_argument("--allow-nonprime", action="store_true")
    g.set_defaults(func=cmd_connective)

    pr = sub.add_parser("probe", parents=[common], help="search formula trees for a behavior")
    pr.add_argument("--target")
    pr.add_argument("--formula")
    pr.add_argument("--inputs", type=int)
    pr.set_defaults(func=cmd_probe)

    x = sub.add_parser("export", parents=[common], help="print a structure as JSON or DOT")
    x.add_argument("file", help="structure JSON, program file (with --method) or formula text (with --formula)")
    x.add_argument("--method")
    x.add_argument("--formula", action="store_true")
    x.add_argument("--format", choices=("json", "dot"), default="json")
    x.add_argument("--unicode", action="store_true")
    x.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config.set_override("switchings", args.bound_switchings)
    try:
        return args.func(args)
    except (UsageError, MultinetError, ValueError) as exc:
        print(f"multinet: {exc}", file=sys.stderr)
        return 2
    finally:
        config.set_override("switchings", None)


if __name__ == "__main__":
    sys.exit(main())
