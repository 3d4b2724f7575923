"""Command line entry point: one binary, subcommand per operation.

Every run is deterministic given its inputs and the --seed flag; output
rows are explicitly sorted and --json emits one object per row with
stable field names.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path as FilePath
from random import Random

from . import cells, charts, coha, partitions, paths, quiver, series

DEFAULT_SEED = 20240808


class DomainError(Exception):
    """User-facing failure of a domain precondition; exit code 1."""


def _load_quiver(path: str) -> quiver.FramedQuiver:
    try:
        return quiver.parse_quiver_file(FilePath(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DomainError(f"cannot read quiver file: {exc}") from None
    except quiver.QuiverError as exc:
        raise DomainError(f"bad quiver file: {exc}") from None


def _parse_dim(text: str, fq: quiver.FramedQuiver) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise DomainError(f"cannot parse dimension vector {text!r}") from None
    if len(d) != fq.vertex_count:
        raise DomainError(f"dimension vector needs {fq.vertex_count} entries")
    if any(x < 0 for x in d):
        raise DomainError("dimension entries must be non-negative")
    return d


def _parse_order(args, fq: quiver.FramedQuiver) -> paths.PathOrder:
    kind = args.order
    if kind == "shortlex":
        return paths.PathOrder.shortlex()
    if kind == "lex":
        return paths.PathOrder.lex()
    weights = {}
    if args.weights:
        for piece in args.weights.split(","):
            if "=" not in piece:
                raise DomainError(f"bad weight {piece!r}; use name=value")
            name, value = piece.split("=", 1)
            try:
                weights[name.strip()] = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"bad weight value {value!r}") from None
    try:
        return paths.PathOrder.weighted_shortlex(fq, weights)
    except (ValueError, quiver.QuiverError) as exc:
        raise DomainError(str(exc)) from None


def _emit(args, rows: list[dict], text_of) -> None:
    for row in rows:
        if args.json:
            print(json.dumps(row, sort_keys=True))
        else:
            print(text_of(row))


# -- polynomial expression grammar for the shuffle subcommand ---------------------
#
#   expr   := term (('+' | '-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' natural)*
#   atom   := integer | 'x[' i ',' k ']' | 'x' | '(' expr ')' | '-' atom
#
# Bare 'x' abbreviates x[0,1].


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(text[start:pos])
        elif ch in "+-*^()[],x":
            tokens.append(ch)
            pos += 1
        else:
            raise DomainError(f"unexpected character {ch!r} in expression")
    return tokens


class _ExprParser:
    def __init__(self, fq, d, tokens):
        self.fq = fq
        self.d = d
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise DomainError(
                f"expected {expected!r} in expression, found {tok!r}"
            )
        self.pos += 1
        return tok

    def parse(self) -> coha.SymPoly:
        result = self.expr()
        if self.peek() is not None:
            raise DomainError(f"trailing tokens in expression: {self.peek()!r}")
        return result

    def expr(self):
        left = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.factor()
        while self.peek() == "*":
            self.take("*")
            left = coha.cup_product(left, self.factor())
        return left

    def factor(self):
        base = self.atom()
        while self.peek() == "^":
            self.take("^")
            n = int(self.take())
            out = coha.unit(self.fq, self.d)
            for _ in range(n):
                out = coha.cup_product(out, base)
            base = out
        return base

    def atom(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.atom()
        if tok == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "x":
            self.take()
            if self.peek() == "[":
                self.take("[")
                i = int(self.take())
                self.take(",")
                k = int(self.take())
                self.take("]")
            else:
                i, k = 0, 1
            try:
                return coha.variable(self.fq, self.d, i, k)
            except (coha.CohaError, IndexError):
                raise DomainError(f"no variable x[{i},{k}] in degree {self.d}") from None
        if tok is not None and tok.isdigit():
            return coha.unit(self.fq, self.d).scale(int(self.take()))
        raise DomainError(f"unexpected token {tok!r} in expression")


def parse_element(fq, text: str) -> coha.SymPoly:
    """Parse "d=<dims>:<expression>" into a graded element."""
    if ":" not in text:
        raise DomainError("element must look like d=<dims>:<expression>")
    head, body = text.split(":", 1)
    head = head.strip()
    if not head.startswith("d="):
        raise DomainError("element must start with d=<dims>")
    d = _parse_dim(head[2:], fq)
    return _ExprParser(fq, d, _tokenize(body)).parse()


# -- subcommand implementations ---------------------------------------------------


def cmd_trees(args) -> int:
    fq = _load_quiver(args.quiver)
    order = _parse_order(args, fq)
    d = _parse_dim(args.dim, fq)
    rows = []
    for s in cells.enumerate_trees(fq, d, order):
        lam = partitions.tree_to_partition(fq, s, order)
        rows.append(
            {
                "tree": cells.format_tree(fq, s),
                "dim": cells.cell_dim(fq, s, order),
                "partition": partitions.format_partition(lam),
            }
        )
    _emit(args, rows, lambda r: f"{r['tree']} dim={r['dim']} partition={r['partition']}")
    return 0


def cmd_partitions(args) -> int:
    fq = _load_quiver(args.quiver)
    d = _parse_dim(args.dim, fq)
    rows = []
    for lam in partitions.enumerate_partitions(fq, d):
        rows.append(
            {
                "partition": partitions.format_partition(lam),
                "dim": partitions.partition_cell_dim(fq, d, lam),
            }
        )
    _emit(args, rows, lambda r: f"{r['partition']} dim={r['dim']}")
    return 0


def cmd_bijection(args) -> int:
    fq = _load_quiver(args.quiver)
    order = _parse_order(args, fq)
    if (args.tree is None) == (args.partition is None):
        raise DomainError("give exactly one of --tree or --partition")
    if args.tree is not None:
        try:
            s = cells.parse_tree(fq, order, args.tree)
        except (quiver.QuiverError, cells.CellError) as exc:
            raise DomainError(str(exc)) from None
        lam = partitions.tree_to_partition(fq, s, order)
        row = {
            "tree": cells.format_tree(fq, s),
            "partition": partitions.format_partition(lam),
        }
        _emit(args, [row], lambda r: r["partition"])
    else:
        if args.dim is None:
            raise DomainError("--partition needs --dim to fix the shape")
        d = _parse_dim(args.dim, fq)
        try:
            lam = partitions.parse_partition(fq, d, args.partition)
            s = partitions.partition_to_tree(fq, lam, order)
        except cells.CellError as exc:
            raise DomainError(str(exc)) from None
        row = {
            "tree": cells.format_tree(fq, s),
            "partition": partitions.format_partition(lam),
        }
        _emit(args, [row], lambda r: r["tree"])
    return 0


def cmd_series(args, betti_only: bool = False) -> int:
    fq = _load_quiver(args.quiver)
    d = _parse_dim(args.dim, fq)
    if betti_only or getattr(args, "betti", False):
        rows = [
            {"degree": deg, "coeff": rank}
            for deg, rank in series.betti_numbers(fq, d)
        ]
        _emit(args, rows, lambda r: f"{r['degree']}:{r['coeff']}")
        return 0
    poly = series.motivic_class(fq, d)
    if args.json:
        for e, c in poly.coeffs:
            print(json.dumps({"degree": e, "coeff": c}, sort_keys=True))
    else:
        print(str(poly))
    return 0


def cmd_betti(args) -> int:
    return cmd_series(args, betti_only=True)


def cmd_shuffle(args) -> int:
    fq = _load_quiver(args.quiver)
    try:
        left = parse_element(fq, args.left)
        right = parse_element(fq, args.right)
        result = coha.shuffle_product(left, right)
    except coha.CohaError as exc:
        raise DomainError(str(exc)) from None
    if args.json:
        print(
            json.dumps(
                {"dim": list(result.d), "poly": result.format()}, sort_keys=True
            )
        )
    else:
        print(f"d={','.join(str(x) for x in result.d)}: {result.format()}")
    return 0


def cmd_verify_basis(args) -> int:
    fq = _load_quiver(args.quiver)
    d = _parse_dim(args.dim, fq)
    top = coha.top_degree(fq, d)
    max_degree = args.max_degree if args.max_degree is not None else max(top + 1, 0)
    rows = []
    all_ok = True
    for n in range(max_degree + 1):
        r = coha.verify_basis(fq, d, n)
        all_ok = all_ok and r.independent
        rows.append(
            {
                "degree": n,
                "h_dim": r.h_dim,
                "kernel_dim": r.kernel_dim,
                "quotient_dim": r.quotient_dim,
                "partition_count": r.partition_count,
                "independent": r.independent,
            }
        )
    _emit(
        args,
        rows,
        lambda r: (
            f"n={r['degree']} h={r['h_dim']} kernel={r['kernel_dim']} "
            f"quotient={r['quotient_dim']} partitions={r['partition_count']} "
            f"{'PASS' if r['independent'] else 'FAIL'}"
        ),
    )
    return 0 if all_ok else 1


def cmd_charts(args) -> int:
    fq = _load_quiver(args.quiver)
    order = _parse_order(args, fq)
    try:
        target = cells.parse_tree(fq, order, args.target)
        chart_tree = cells.parse_tree(fq, order, args.chart)
        chart = charts.make_chart(fq, chart_tree, order)
        minors = charts.membership_minors(fq, target, chart_tree, order)
    except (quiver.QuiverError, cells.CellError) as exc:
        raise DomainError(str(exc)) from None
    rows = [{"minor": chart.format_poly(m)} for m in minors]
    _emit(args, rows, lambda r: r["minor"])
    if args.multiplicity:
        try:
            power = charts.multiplicity_power(fq, target, chart_tree, order)
        except cells.CellError as exc:
            raise DomainError(str(exc)) from None
        text = "indeterminate" if power is None else str(power)
        if args.json:
            print(json.dumps({"multiplicity": power}, sort_keys=True))
        else:
            print(f"multiplicity={text}")
    return 0


def cmd_classify(args) -> int:
    fq = _load_quiver(args.quiver)
    order = _parse_order(args, fq)
    try:
        rep = cells.parse_rep_file(fq, FilePath(args.rep).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DomainError(f"cannot read representation file: {exc}") from None
    except (quiver.QuiverError, cells.CellError) as exc:
        raise DomainError(str(exc)) from None
    try:
        s = cells.classify(fq, rep, order)
    except cells.CellError as exc:
        raise DomainError(str(exc)) from None
    lam = partitions.tree_to_partition(fq, s, order)
    row = {
        "tree": cells.format_tree(fq, s),
        "dim": cells.cell_dim(fq, s, order),
        "partition": partitions.format_partition(lam),
    }
    _emit(args, [row], lambda r: f"{r['tree']} dim={r['dim']} partition={r['partition']}")
    return 0


def _check_fixtures():
    two_loop = quiver.FramedQuiver(
        quiver.Quiver.make(1, [("a", 0, 0), ("b", 0, 0)]), (1,), ["f"]
    )
    one_loop = quiver.FramedQuiver(
        quiver.Quiver.make(1, [("a", 0, 0)]), (2,), ["e", "f"]
    )
    a2 = quiver.FramedQuiver(
        quiver.Quiver.make(2, [("a", 0, 1)]), (2, 0), ["e", "f"]
    )
    points = quiver.Quiver.make(1, [])
    return two_loop, one_loop, a2, points


def cmd_check(args) -> int:
    rng = Random(args.seed)
    shortlex = paths.PathOrder.shortlex()
    lex = paths.PathOrder.lex()
    results: list[tuple[str, bool]] = []
    two_loop, one_loop, a2, points = _check_fixtures()

    def record(name: str, ok: bool):
        results.append((name, ok))

    # bijection roundtrips and label counts
    ok = True
    for fq, dims in [
        (two_loop, [(1,), (2,), (3,), (4,)]),
        (one_loop, [(1,), (2,), (3,)]),
        (a2, [(1, 0), (1, 1), (2, 1), (2, 2)]),
    ]:
        for d in dims:
            for order in (shortlex, lex):
                trees = cells.enumerate_trees(fq, d, order)
                labels = partitions.enumerate_partitions(fq, d)
                ok = ok and len(trees) == len(labels)
                for s in trees:
                    lam = partitions.tree_to_partition(fq, s, order)
                    back = partitions.partition_to_tree(fq, lam, order)
                    ok = ok and back.path_set == s.path_set
    record("bijection roundtrip", ok)

    # order independence of the counting series
    ok = True
    for d in [(2,), (3,), (4,)]:
        top = two_loop.hilb_dim(d)
        for order in (shortlex, lex):
            dims_from_trees = sorted(
                cells.cell_dim(two_loop, s, order)
                for s in cells.enumerate_trees(two_loop, d, order)
            )
            dims_from_labels = sorted(
                top - lam.size
                for lam in partitions.enumerate_partitions(two_loop, d)
            )
            ok = ok and dims_from_trees == dims_from_labels
    record("order independence of cell dimensions", ok)

    # q-binomial oracle
    ok = True
    for w in range(6):
        for d in range(w + 1):
            fq = quiver.FramedQuiver(points, (w,))
            ok = ok and series.motivic_class(fq, (d,)).as_dict() == (
                series.gaussian_binomial(w, d).as_dict()
            )
    record("q-binomial oracle", ok)

    # classify partition property
    ok = True
    trees3 = cells.enumerate_trees(two_loop, (3,), shortlex)
    for _ in range(20):
        m = cells.random_stable_rep(two_loop, (3,), rng)
        s = cells.classify(two_loop, m, shortlex)
        hits = [t for t in trees3 if cells.in_cell(two_loop, m, t, shortlex)]
        ok = ok and len(hits) == 1 and hits[0].path_set == s.path_set
    record("cell partition property", ok)

    # basis verification on small fixtures
    ok = True
    for fq, d in [
        (quiver.FramedQuiver(points, (3,)), (1,)),
        (quiver.FramedQuiver(points, (3,)), (2,)),
        (two_loop, (2,)),
        (a2, (1, 1)),
    ]:
        for n in range(coha.top_degree(fq, d) + 2):
            ok = ok and coha.verify_basis(fq, d, n).independent
    record("tautological basis verification", ok)

    width = max(len(name) for name, _ in results)
    failures = 0
    for name, passed in results:
        status = "PASS" if passed else "FAIL"
        failures += 0 if passed else 1
        print(f"{name.ljust(width)}  {status}")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coha-lab",
        description="Exact computations around cell decompositions of framed "
        "quiver moduli and their shuffle algebra modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, quiver_required=True, with_order=True, with_dim=False):
        p.add_argument("-q", "--quiver", required=quiver_required, help="quiver file")
        if with_dim:
            p.add_argument("--dim", required=True, help="dimension vector, e.g. 3 or 2,1")
        if with_order:
            p.add_argument(
                "--order",
                choices=["shortlex", "lex", "wshortlex"],
                default="shortlex",
            )
            p.add_argument(
                "--weights",
                help="arrow weights for wshortlex, e.g. a=1,b=2 (default 1)",
            )
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", action="store_true", help="one JSON object per row")

    p = sub.add_parser("trees", help="enumerate cell labels")
    common(p, with_dim=True)
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("partitions", help="enumerate partition labels")
    common(p, with_order=False, with_dim=True)
    p.set_defaults(fn=cmd_partitions)

    p = sub.add_parser("bijection", help="convert between tree and partition labels")
    common(p)
    p.add_argument("--dim", help="dimension vector (needed with --partition)")
    p.add_argument("--tree", help="comma-separated paths, e.g. f,af,baf")
    p.add_argument("--partition", help='bracket groups, e.g. "[2]" or "[2,1][0]"')
    p.set_defaults(fn=cmd_bijection)

    p = sub.add_parser("series", help="motivic counting series")
    common(p, with_order=False, with_dim=True)
    p.add_argument("--betti", action="store_true", help="print degree:rank pairs")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("betti", help="Betti numbers (degree:rank pairs)")
    common(p, with_order=False, with_dim=True)
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("shuffle", help="shuffle product of two graded elements")
    common(p, with_order=False)
    p.add_argument("--left", required=True, help='element, e.g. "d=1:x"')
    p.add_argument("--right", required=True, help='element, e.g. "d=1:1"')
    p.set_defaults(fn=cmd_shuffle)

    p = sub.add_parser("verify-basis", help="tautological basis verification table")
    common(p, with_order=False, with_dim=True)
    p.add_argument("--max-degree", type=int, help="top degree to check (default: auto)")
    p.set_defaults(fn=cmd_verify_basis)

    p = sub.add_parser("charts", help="degeneracy minors in a chart")
    common(p)
    p.add_argument("--target", required=True, help="target subtree, e.g. f,af,bf")
    p.add_argument("--chart", required=True, help="chart subtree, e.g. f,bf,abf")
    p.add_argument("--multiplicity", action="store_true")
    p.set_defaults(fn=cmd_charts)

    p = sub.add_parser("classify", help="classify a representation file into its cell")
    common(p)
    p.add_argument("-r", "--rep", required=True, help="representation file")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("check", help="run the built-in property suite")
    common(p, quiver_required=False, with_order=False)
    p.set_defaults(fn=cmd_check)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (quiver.QuiverError, cells.CellError, coha.CohaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
