"""``symcut`` command line: divide, verify, sweep, demo, gen.

Exit codes: 0 success, 1 a verified property failed, 2 bad input (schema,
unknown property, unreadable file), 3 unsupported request, 4 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import permutations
from pathlib import Path

from .demos import DEMOS, SIZED, DemoFailure
from .errors import CapabilityError, DomainError, ResourceLimitError, SchemaError
from .fairness import MAX_SYMMETRY_PLAYERS, fairness_report
from .instances import dump_json, generate, instance_to_json, load_instance
from .protocols import PROTOCOLS, Division, run_protocol, sym_prop
from .valuation import format_rational as fr

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPABILITY, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _emit(obj, output) -> None:
    text = dump_json(obj, output)
    if output is None:
        sys.stdout.write(text)


def _divide(name: str, vs, args) -> Division:
    if name == "symprop":
        return sym_prop(vs, max_players=args.max_players, max_allocations=args.max_allocations)
    return run_protocol(name, vs)


def cmd_divide(args) -> int:
    vs = load_instance(args.input)
    d = _divide(args.algorithm, vs, args)
    _emit(d.to_json(), args.output)
    if args.output is not None:
        for name, val in zip(d.names, d.values):
            print(f"{name}: {fr(val)}")
        print(f"queries: {d.ledger.eval_count} eval, {d.ledger.cut_count} cut")
    return EXIT_OK


def cmd_verify(args) -> int:
    vs = load_instance(args.instance)
    try:
        d = Division.from_json(json.loads(Path(args.division).read_text()))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{args.division}: not valid JSON ({exc})") from exc
    if list(d.names) != [v.name for v in vs]:
        raise SchemaError(f"division players {list(d.names)} do not match the instance")
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    report = fairness_report(d, vs, props)
    obj = report.to_json()
    if args.output is not None:
        dump_json(obj, args.output)
    for v in report.verdicts:
        line = f"{v.prop}: {'pass' if v.passed else 'FAIL'}"
        if v.witness:
            line += "  " + json.dumps(v.to_json()["witness"])
        print(line)
    return EXIT_OK if report.passed else EXIT_FAIL


def _sweep_one(name: str, vs, sigma) -> list[Fraction]:
    d = run_protocol(name, [vs[s] for s in sigma])
    vals = [Fraction(0)] * len(vs)
    for k, s in enumerate(sigma):
        vals[s] = d.values[k]
    return vals


def cmd_sweep(args) -> int:
    vs = load_instance(args.instance)
    if len(vs) > MAX_SYMMETRY_PLAYERS:
        raise CapabilityError(f"sweep is capped at {MAX_SYMMETRY_PLAYERS} players")
    orders = list(permutations(range(len(vs))))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_one, [args.algorithm] * len(orders), [vs] * len(orders), orders))
    else:
        rows = [_sweep_one(args.algorithm, vs, s) for s in orders]
    symmetric = all(r == rows[0] for r in rows)
    names = [v.name for v in vs]
    print("order".ljust(3 * len(vs) + 2) + "  ".join(n.rjust(8) for n in names))
    for sigma, row in zip(orders, rows):
        label = " ".join(str(s + 1) for s in sigma)
        print(label.ljust(3 * len(vs) + 2) + "  ".join(fr(v).rjust(8) for v in row))
    print(f"symmetric: {'true' if symmetric else 'false'}")
    if args.output is not None:
        dump_json(
            {
                "algorithm": args.algorithm,
                "players": names,
                "rows": [{"order": [names[s] for s in sigma], "values": [fr(v) for v in row]}
                         for sigma, row in zip(orders, rows)],
                "symmetric": symmetric,
            },
            args.output,
        )
    return EXIT_OK


def cmd_demo(args) -> int:
    fn = DEMOS[args.name]
    try:
        lines = fn(args.n) if args.name in SIZED and args.n is not None else fn()
    except DemoFailure as exc:
        print(f"demo failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print("\n".join(lines))
    return EXIT_OK


def cmd_gen(args) -> int:
    vs = generate(args.n, args.k, args.seed, duplicates=args.duplicates, denom=args.denominator)
    _emit(instance_to_json(vs), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symcut", description="Exact fair cake division.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("divide", help="run a protocol on an instance")
    d.add_argument("-a", "--algorithm", required=True, choices=list(PROTOCOLS))
    d.add_argument("-i", "--input", required=True)
    d.add_argument("-o", "--output")
    d.add_argument("--max-players", type=int, default=12, help="SymProp enumeration cap")
    d.add_argument("--max-allocations", type=int, default=1_000_000, help="SymProp enumeration cap")
    d.set_defaults(func=cmd_divide)

    v = sub.add_parser("verify", help="check fairness properties of a division")
    v.add_argument("-i", "--instance", required=True)
    v.add_argument("-d", "--division", required=True)
    v.add_argument("-p", "--properties", default="proportional",
                   help="comma list of proportional, envy-free, equitable, aristotelian, query-bound")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a protocol under every input order")
    s.add_argument("-a", "--algorithm", required=True, choices=list(PROTOCOLS))
    s.add_argument("-i", "--instance", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("-j", "--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("demo", help="narrated worked examples")
    m.add_argument("name", choices=list(DEMOS))
    m.add_argument("--n", type=int, help="size parameter for the S-count demos")
    m.set_defaults(func=cmd_demo)

    g = sub.add_parser("gen", help="seeded random instance")
    g.add_argument("-n", type=int, required=True, help="players")
    g.add_argument("-k", type=int, default=3, help="density steps per player")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--duplicates", type=int, default=0, help="plant this many equal valuations")
    g.add_argument("--denominator", type=int, default=24, help="breakpoint grid")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
