"""Command line interface.

Exit status: 0 on success, 1 for unreadable or malformed input, 2 when the
input is well formed but breaks a domain rule.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import aggregate as agg
from .errors import FclError, InvalidArgument, LinguisticError
from .fcl import parse, to_partition
from .partition import build_partition, resolve_stretch
from .render import dump_json, fmt, nodes_svg, partition_csv, partition_svg, rows_csv
from .tree import flatten, tree_from_dict

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2
# partition JSON keeps at least this many significant digits
JSON_MIN_DIGITS = 12


class InputError(Exception):
    """Unreadable or malformed command input."""


class _ArgumentParser(argparse.ArgumentParser):
    # usage errors are input failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror or exc}") from None


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_partition(args):
    text = _read(args.fcl)
    try:
        model = parse(text)
    except FclError as exc:
        raise InputError(exc.format(args.fcl)) from None
    var = args.var
    if var is None:
        names = model.variables()
        if len(names) != 1:
            raise InputError(f"{args.fcl}: error: --var is required ({len(names)} variables declared)")
        var = names[0]
    try:
        return to_partition(model, var)
    except FclError as exc:
        raise InputError(exc.format(args.fcl)) from None


def _render_partition(partition, args) -> str:
    if args.format == "csv":
        return partition_csv(partition, args.samples, args.precision)
    if args.format == "svg":
        return partition_svg(partition)
    return dump_json(partition.to_dict(), max(args.precision, JSON_MIN_DIGITS))


def cmd_partition(args) -> int:
    partition = _load_partition(args)
    _emit(_render_partition(partition, args), args.out)
    return EXIT_OK


_OPERAND = re.compile(r"^(?P<term>[A-Za-z][A-Za-z0-9_]*)(?P<offset>[+-].*)?$")


def _operand(text: str) -> agg.LinguisticValue:
    m = _OPERAND.match(text)
    if m is None:
        raise InputError(f"malformed operand {text!r} (expected TERM or TERM+offset)")
    offset = 0.0
    if m.group("offset"):
        try:
            offset = float(m.group("offset"))
        except ValueError:
            raise InputError(f"malformed offset in operand {text!r}") from None
    return agg.LinguisticValue(m.group("term"), offset)


def cmd_aggregate(args) -> int:
    partition = _load_partition(args)
    operands = [_operand(op) for op in args.operands]
    if args.op == "add":
        if len(operands) != 2:
            raise InputError("add takes exactly two operands")
        result = agg.add(partition, *operands)
    elif args.op == "mean":
        result = agg.mean(partition, operands)
    else:
        if not args.op_weights:
            raise InputError("wavg needs --op-weights")
        try:
            weights = [float(w) for w in args.op_weights.split(",")]
        except ValueError:
            raise InputError(f"malformed --op-weights {args.op_weights!r}") from None
        result = agg.apply_operator(partition, agg.weighted_mean(weights), operands)
    tt = result.lh_tuple
    payload = {
        "op": args.op,
        "beta": result.beta,
        "lh_tuple": {
            "level": tt.level,
            "labels": tt.labels,
            "index": tt.index,
            "alpha_abs": tt.alpha,
            "alpha_norm": tt.alpha / partition.span,
        },
        "value": {"term": result.value.term, "residual": result.value.residual},
    }
    _emit(dump_json(payload, args.precision), args.out)
    return EXIT_OK


def cmd_membership(args) -> int:
    partition = _load_partition(args)
    u = partition.universe.to_internal(args.u)
    hits = partition.fuzzify(u)
    payload = [{"term": name, "degree": d} for name, d in hits]
    _emit(dump_json(payload, args.precision, compact=True), args.out)
    return EXIT_OK


def cmd_flatten(args) -> int:
    text = _read(args.tree)
    try:
        root = tree_from_dict(json.loads(text))
    except (json.JSONDecodeError, InvalidArgument) as exc:
        raise InputError(f"{args.tree}: error: malformed tree JSON: {exc}") from None
    except RecursionError:
        raise InputError(f"{args.tree}: error: tree too deep") from None
    nodes = flatten(root)
    if args.format == "svg":
        out = nodes_svg(nodes)
    elif args.format == "csv":
        out = rows_csv(
            ["name", "level", "labels", "index", "position"],
            [[n.name, n.level, n.two_tuple.labels, n.index, fmt(n.position, args.precision)] for n in nodes],
        )
    else:
        out = dump_json(
            [
                {"name": n.name, "level": n.level, "labels": n.two_tuple.labels, "index": n.index, "position": n.position}
                for n in nodes
            ],
            args.precision,
        )
    _emit(out, args.out)
    return EXIT_OK


def _stretch_entries(text: str, path: str):
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p for p in re.split(r"[\s,()]+", line) if p]
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}:1: error: expected 'term stretch', got {raw.strip()!r}")
        entries.append((parts[0], parts[1]))
    return entries


def cmd_stretch(args) -> int:
    entries = _stretch_entries(_read(args.entries), args.entries)
    weights = None
    if args.weights:
        try:
            weights = json.loads(_read(args.weights))
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.weights}: error: malformed weight table: {exc}") from None
        if not isinstance(weights, dict):
            raise InputError(f"{args.weights}: error: weight table must be a JSON object")
    pairs = resolve_stretch(entries, weights)
    if args.partition:
        _emit(_render_partition(build_partition(pairs), args), args.out)
    elif args.format == "csv":
        _emit(rows_csv(["term", "v"], [[p.name, fmt(p.v, args.precision)] for p in pairs]), args.out)
    else:
        _emit(dump_json([{"term": p.name, "v": p.v} for p in pairs], args.precision), args.out)
    return EXIT_OK


def _positive_int(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--out", help="write to this file instead of standard output")
    common.add_argument("--precision", type=int, default=6, help="significant digits (default 6)")

    render = _ArgumentParser(add_help=False)
    render.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    render.add_argument("--samples", type=_positive_int, default=1001, help="CSV sampling resolution")

    source = _ArgumentParser(add_help=False)
    source.add_argument("--fcl", required=True, help="FCL script with a LING variable")
    source.add_argument("--var", help="variable name (optional when only one is declared)")

    parser = _ArgumentParser(prog="ling2tuple", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[source, render, common], help="build the unbalanced partition")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("aggregate", parents=[source, common], help="aggregate terms")
    p.add_argument("--op", choices=("mean", "add", "wavg"), default="mean")
    p.add_argument("--op-weights", help="comma-separated weights for wavg")
    p.add_argument("operands", nargs="+", help="TERM or TERM+offset")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("membership", parents=[source, common], help="fuzzify one value")
    p.add_argument("--u", type=float, required=True, help="value on the variable's own axis")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("flatten", parents=[render, common], help="flatten a strict binary tree")
    p.add_argument("tree", help="tree JSON file")
    p.set_defaults(func=cmd_flatten)

    p = sub.add_parser("stretch", parents=[render, common], help="resolve stretch factors into positions")
    p.add_argument("entries", help="file with one 'term stretch' entry per line")
    p.add_argument("--weights", help="JSON object mapping stretch term to positive weight")
    p.add_argument("--partition", action="store_true", help="print the resulting partition instead")
    p.set_defaults(func=cmd_stretch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except InputError as exc:
        msg = str(exc)
        print(msg if ": error: " in msg else f"ling2tuple: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except LinguisticError as exc:
        print(f"ling2tuple: error: [{exc.code}] {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
