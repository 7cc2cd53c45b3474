"""Command-line interface: ``grajac <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
Divisors are comma-separated integers; put ``--`` before positional
divisors that start with a minus sign.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import abelian, analysis, chipfiring, families, oracles
from .errors import GrajacError
from .graph import dumps_graph, loads_graph
from .linalg import loads_matrix, matrix_to_json, smith_normal_form
from .rng import DEFAULT_SEED

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _print(text: str) -> None:
    sys.stdout.write(text + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


# --- commands ------------------------------------------------------------


def _show_group(args, group) -> None:
    if args.format == "json":
        _emit(group.to_json())
    else:
        _print(abelian.render(group))


def cmd_pic(args) -> int:
    _show_group(args, analysis.picard_group(loads_graph(_read(args.file))))
    return EXIT_OK


def cmd_jac(args) -> int:
    _show_group(args, analysis.jacobian(loads_graph(_read(args.file))))
    return EXIT_OK


def cmd_snf(args) -> int:
    text = _read(args.file)
    if args.graph:
        m = analysis.laplacian(loads_graph(text))
    else:
        m = loads_matrix(text)
    res = smith_normal_form(m)
    if args.check and (res.p @ m @ res.q) != res.d:
        sys.stderr.write("round-trip check failed: P*M*Q != D\n")
        return EXIT_FAILED
    if args.format == "json":
        out = {"d": matrix_to_json(res.d), "diagonal": res.diagonal}
        if args.transforms:
            out["p"] = matrix_to_json(res.p)
            out["q"] = matrix_to_json(res.q)
        _emit(out)
    else:
        _print("diagonal: " + " ".join(map(str, res.diagonal)))
        if args.transforms:
            for name, mat in (("D", res.d), ("P", res.p), ("Q", res.q)):
                _print(f"{name} =")
                _print(str(mat))
    if args.check:
        sys.stderr.write("round-trip check passed: P*M*Q == D\n")
    return EXIT_OK


def cmd_scc(args) -> int:
    dec = analysis.scc(loads_graph(_read(args.file)))
    if args.format == "json":
        _emit(
            {
                "components": [sorted(c) for c in dec.components],
                "terminal": list(dec.terminal_flags),
            }
        )
    else:
        for comp, term in zip(dec.components, dec.terminal_flags):
            _print("{" + ", ".join(map(str, sorted(comp))) + "}" + (" terminal" if term else ""))
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"gen {args.family} requires {flags}")


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "cycle":
        _need(args, "orientation")
        g = families.gen_cycle(args.orientation)
    elif fam == "two-path":
        _need(args, "n", "k")
        g = families.gen_two_opposite_paths(args.n, args.k, args.p1)
    elif fam == "short-chain":
        _need(args, "n")
        g = families.gen_short_chain_cycle(args.n)
    elif fam == "long-chain":
        _need(args, "n")
        g = families.gen_long_chain_cycle(args.n)
    elif fam == "wheel":
        _need(args, "n")
        g = families.gen_wheel(args.n, args.variant)
    elif fam == "multipartite":
        _need(args, "layers")
        g = families.gen_multipartite(args.layers)
    elif fam == "tree":
        _need(args, "n")
        g = families.gen_random_tree(args.n, args.seed, args.bidirectional_prob, args.direction_rule)
    else:
        _need(args, "n", "k")
        g = families.single_term_cycle(args.n, args.k)
    _print(dumps_graph(g))
    return EXIT_OK


def _sweep_plan(args) -> list[tuple[str, dict]]:
    fam = args.family
    n_max = args.n_max
    if fam == "cycles":
        if args.exhaustive:
            return [("cycles-exhaustive", {"n_max": n_max or 6})]
        return [
            ("cycles-two-path", {"n_max": n_max or 12}),
            ("cycles-global-sink", {"n_max": n_max or 8}),
        ]
    if fam == "trees":
        return [("trees", {"n_max": n_max or 15, "count": args.count, "seed": args.seed})]
    if fam == "single-term":
        return [("cycles-single-term", {"n_max": n_max or 9})]
    if fam == "wheels":
        return [("wheels", {"n_max": n_max or 30})]
    if fam == "bipartite":
        return [("bipartite", {"a_max": args.size_max or 8, "b_max": args.size_max or 8})]
    size = args.size_max or 6
    return [("three-layer", {"a_max": size, "b_max": size, "c_max": size})]


def _write_records(args, records) -> None:
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                oracles.write_jsonl(records, fh)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    elif not args.quiet:
        oracles.write_jsonl(records, sys.stdout)


def cmd_verify(args) -> int:
    jobs = args.jobs or oracles.default_jobs()
    records = []
    for family, params in _sweep_plan(args):
        records.extend(oracles.run_sweep(family, jobs=jobs, **params))
    _write_records(args, records)
    passed, total = oracles.summarize(records)
    sys.stderr.write(f"passed {passed} / total {total}\n")
    return EXIT_OK if passed == total else EXIT_FAILED


def cmd_explore(args) -> int:
    jobs = args.jobs or oracles.default_jobs()
    if args.layers:
        params = {"layers": [args.layers]}
    else:
        params = {"t": args.t, "size_max": args.size_max}
    if params.get("t") is not None and params["t"] < 2:
        raise UsageError("--t must be at least 2")
    records = oracles.run_sweep("multipartite-explore", jobs=jobs, **params)
    if args.format == "json" or args.output:
        _write_records(args, records)
    else:
        for rec in records:
            layers = ",".join(map(str, rec.params["layers"]))
            diag = " ".join(map(str, rec.extra["snf_diagonal"]))
            _print(f"{layers}: {abelian.render(rec.computed)}  [snf {diag}]")
    return EXIT_OK


def cmd_chip(args) -> int:
    g = loads_graph(_read(args.file))
    parse = chipfiring.parse_divisor
    if args.action == "equiv":
        res = chipfiring.equivalent(g, parse(args.d1), parse(args.d2))
        if args.format == "json":
            _emit({"equivalent": res.equivalent, "witness": list(res.witness) if res.witness else None})
        else:
            _print("true" if res else "false")
            if res:
                _print("witness: " + chipfiring.format_divisor(res.witness))
    elif args.action == "class":
        label = chipfiring.picard_class(g, parse(args.d))
        if args.format == "json":
            _emit(label.to_json())
        else:
            _print(str(label))
    else:
        direction = chipfiring.Direction.BORROW if args.borrow else chipfiring.Direction.LEND
        out = chipfiring.fire(g, parse(args.d), args.vertex, direction)
        if args.format == "json":
            _emit(list(out))
        else:
            _print(chipfiring.format_divisor(out))
    return EXIT_OK


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    par = argparse.ArgumentParser(
        prog="grajac",
        description="Picard groups, Jacobians and chip-firing on directed multigraphs.",
    )
    sub = par.add_subparsers(dest="command", required=True, metavar="command")

    for name, func, help_ in (
        ("pic", cmd_pic, "Picard group of a graph file"),
        ("jac", cmd_jac, "Jacobian (torsion of Pic) of a graph file"),
        ("scc", cmd_scc, "strong components and terminal flags"),
    ):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.add_argument("file", help="graph JSON, or - for stdin")
        p.set_defaults(func=func)

    p = sub.add_parser("snf", parents=[fmt], help="Smith normal form of a matrix file")
    p.add_argument("file", help="matrix JSON, or - for stdin")
    p.add_argument("--transforms", action="store_true", help="also print P and Q")
    p.add_argument("--check", action="store_true", help="verify P*M*Q == D")
    p.add_argument("--graph", action="store_true", help="input is a graph; use its Laplacian")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("gen", help="generate a graph and print its JSON")
    p.add_argument(
        "family",
        choices=(
            "cycle",
            "two-path",
            "short-chain",
            "long-chain",
            "wheel",
            "multipartite",
            "tree",
            "single-term",
        ),
    )
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p1", type=int, default=1, help="forward path length (two-path)")
    p.add_argument("--orientation", help="orientation word over F, B, D")
    p.add_argument(
        "--variant",
        choices=[v.value for v in families.WheelVariant],
        default=families.WheelVariant.UNDIRECTED.value,
    )
    p.add_argument("--layers", type=_int_list, help="comma-separated layer sizes")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--bidirectional-prob", type=float, default=0.0)
    p.add_argument("--direction-rule", choices=families.DIRECTION_RULES, default="random")
    p.set_defaults(func=cmd_gen)

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--jobs", type=int, help="worker processes (default: $GRAJAC_JOBS or 1)")
    sweep.add_argument("--output", help="write JSON-lines records to this file")

    p = sub.add_parser("verify", parents=[sweep], help="check theorem predictions over a family")
    p.add_argument(
        "family", choices=("trees", "cycles", "single-term", "wheels", "bipartite", "three-layer")
    )
    p.add_argument("--n-max", type=int)
    p.add_argument("--size-max", type=int, help="largest layer size (bipartite, three-layer)")
    p.add_argument("--count", type=int, default=500, help="number of random trees")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--exhaustive", action="store_true", help="cycles: every orientation word")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", parents=[fmt, sweep], help="SNF dumps for layered graphs")
    p.add_argument("--layers", type=_int_list, help="one explicit layer-size list")
    p.add_argument("--t", type=int, default=4, help="number of layers")
    p.add_argument("--size-max", type=int, default=3, help="largest layer size")
    p.set_defaults(func=cmd_explore, quiet=False)

    p = sub.add_parser("chip", help="chip-firing on a graph file")
    chip = p.add_subparsers(dest="action", required=True, metavar="action")
    q = chip.add_parser("equiv", parents=[fmt], help="decide linear equivalence")
    q.add_argument("file")
    q.add_argument("d1")
    q.add_argument("d2")
    q = chip.add_parser("class", parents=[fmt], help="Picard class label of a divisor")
    q.add_argument("file")
    q.add_argument("d")
    q = chip.add_parser("fire", parents=[fmt], help="lend or borrow at one vertex")
    q.add_argument("file")
    q.add_argument("d")
    q.add_argument("--vertex", type=int, required=True)
    way = q.add_mutually_exclusive_group()
    way.add_argument("--lend", action="store_true", help="default")
    way.add_argument("--borrow", action="store_true")
    p.set_defaults(func=cmd_chip)
    return par


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GrajacError) as exc:
        sys.stderr.write(f"grajac: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
