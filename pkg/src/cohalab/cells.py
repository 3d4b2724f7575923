"""Cell labels of non-commutative Hilbert schemes and numeric membership.

A cell label is a finite lower-closed path set (a subtree of the path
tree) with prescribed per-vertex counts.  This module enumerates labels,
computes critical sets and cell dimensions, classifies explicit rational
representations into cells by the greedy minimal-span algorithm, and tests
degeneracy-locus membership, all in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .linalg import Span, rank, vec
from .paths import (
    ROOT,
    Path,
    PathOrder,
    children,
    format_path,
    parent,
    parse_path,
    path_target,
)
from .quiver import INF_VERTEX, DimVector, FramedQuiver, QuiverError, check_dim


class CellError(ValueError):
    """Violated precondition in a cell computation."""


@dataclass(frozen=True)
class Subtree:
    """Lower-closed path set, root first, ascending in the defining order."""

    paths: tuple[Path, ...]

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def __contains__(self, u: Path):
        return u in self.path_set

    @property
    def path_set(self) -> frozenset:
        return frozenset(self.paths)

    @property
    def nonroot(self) -> tuple[Path, ...]:
        return tuple(u for u in self.paths if u)


def make_subtree(fq: FramedQuiver, order: PathOrder, paths) -> Subtree:
    """Sort, adjoin the root, and check lower-closure."""
    pool = {tuple(p) for p in paths}
    pool.add(ROOT)
    for u in pool:
        if u and parent(u) not in pool:
            raise CellError(
                f"not lower-closed: {format_path(fq, u)} without its parent"
            )
    return Subtree(tuple(order.sort(pool)))


def udim(fq: FramedQuiver, s: Subtree) -> DimVector:
    counts = [0] * fq.vertex_count
    for u in s.nonroot:
        counts[path_target(fq, u)] += 1
    return tuple(counts)


def vertex_slice(fq: FramedQuiver, s: Subtree, i: int) -> tuple[Path, ...]:
    """Elements of the subtree at vertex i, in the order they were stored."""
    return tuple(u for u in s.paths if u and path_target(fq, u) == i)


@dataclass(frozen=True)
class CriticalSet:
    """Minimal paths outside a subtree, with their k-statistics.

    k[j] counts the subtree elements at the target vertex of paths[j] that
    precede paths[j] in the order; the cell dimension is sum(k).
    """

    paths: tuple[Path, ...]
    k: tuple[int, ...]

    def __iter__(self):
        return iter(self.paths)

    def at_vertex(self, fq: FramedQuiver, i: int) -> tuple[Path, ...]:
        return tuple(v for v in self.paths if path_target(fq, v) == i)


def critical_paths(fq: FramedQuiver, members: frozenset) -> list[Path]:
    out = []
    for u in members:
        for c in children(fq, u):
            if c not in members:
                out.append(c)
    return out


def critical_set(fq: FramedQuiver, s: Subtree, order: PathOrder) -> CriticalSet:
    members = s.path_set
    crit = order.sort(critical_paths(fq, members))
    ks = []
    for v in crit:
        tv = path_target(fq, v)
        ks.append(
            sum(
                1
                for u in members
                if u and path_target(fq, u) == tv and order.compare(u, v) < 0
            )
        )
    return CriticalSet(tuple(crit), tuple(ks))


def cell_dim(fq: FramedQuiver, s: Subtree, order: PathOrder) -> int:
    return sum(critical_set(fq, s, order).k)


def tree_key(order: PathOrder, s: Subtree):
    return tuple(order.key(u) for u in s.paths)


def tree_leq(order: PathOrder, a: Subtree, b: Subtree) -> bool:
    """Tree total order: compare sorted member lists at the first difference."""
    return tree_key(order, a) <= tree_key(order, b)


def enumerate_trees(
    fq: FramedQuiver, d: DimVector, order: PathOrder
) -> list[Subtree]:
    """All subtrees with the given per-vertex counts, ascending in tree order.

    Depth-first extension: grow by one critical element at a time, always
    larger than the last one added, pruning when a vertex count would
    exceed its budget.  Iterating candidates in ascending order yields the
    trees already sorted.
    """
    d = check_dim(fq.base, d)
    if any(x < 0 for x in d):
        raise CellError("dimension vector must be non-negative")
    total = sum(d)
    results: list[Subtree] = []

    def extend(chain: list[Path], counts: list[int], crit: list[Path]):
        if len(chain) - 1 == total:
            results.append(Subtree(tuple(chain)))
            return
        for idx, v in enumerate(crit):
            i = path_target(fq, v)
            if counts[i] >= d[i]:
                continue
            counts[i] += 1
            chain.append(v)
            # later critical elements of the old set stay critical; the
            # children of v are new and all exceed v in any admissible order
            new_crit = order.sort(crit[idx + 1 :] + children(fq, v))
            extend(chain, counts, new_crit)
            chain.pop()
            counts[i] -= 1

    extend([ROOT], [0] * fq.vertex_count, order.sort(children(fq, ROOT)))
    return results


def format_tree(fq: FramedQuiver, s: Subtree) -> str:
    return ",".join(format_path(fq, u) for u in s.nonroot)


def parse_tree(fq: FramedQuiver, order: PathOrder, text: str) -> Subtree:
    parts = [p for p in text.split(",") if p.strip()]
    return make_subtree(fq, order, (parse_path(fq, p) for p in parts))


# -- numeric representations -----------------------------------------------------


@dataclass(frozen=True)
class NumericRep:
    """Stable-candidate framed representation with rational matrices.

    matrices[idx] is the matrix of the framed arrow idx; framing arrows
    (source at the framing vertex, which carries a fixed one-dimensional
    space) get d_target x 1 columns, base arrows i->j get d_j x d_i blocks.
    Matrices are tuples of row tuples of Fractions.
    """

    fq: FramedQuiver
    d: DimVector
    matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        check_dim(self.fq.base, self.d)
        if len(self.matrices) != len(self.fq.arrows):
            raise CellError("one matrix per framed arrow required")
        for idx, a in enumerate(self.fq.arrows):
            rows = self.d[a.target]
            cols = 1 if a.source == INF_VERTEX else self.d[a.source]
            m = self.matrices[idx]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise CellError(
                    f"matrix for arrow {a.name!r} must be {rows}x{cols}"
                )

    def path_vector(self, u: Path) -> tuple[Fraction, ...]:
        """The vector of the path: matrices applied to the unit framing vector."""
        v = (Fraction(1),)
        for idx in u:
            m = self.matrices[idx]
            v = tuple(
                sum((row[j] * v[j] for j in range(len(v))), Fraction(0))
                for row in m
            )
        return v


def make_rep(fq: FramedQuiver, d: DimVector, entries) -> NumericRep:
    """Build a NumericRep from {arrow name: rows}; missing arrows are zero."""
    d = check_dim(fq.base, d)
    mats = []
    named = {k: v for k, v in entries.items()}
    for a in fq.arrows:
        rows = d[a.target]
        cols = 1 if a.source == INF_VERTEX else d[a.source]
        block = named.pop(a.name, None)
        if block is None:
            mats.append(tuple((Fraction(0),) * cols for _ in range(rows)))
        else:
            mats.append(tuple(vec(r) for r in block))
    if named:
        raise CellError(f"unknown arrow names in rep: {sorted(named)}")
    return NumericRep(fq, d, tuple(mats))


def classify(fq: FramedQuiver, m: NumericRep, order: PathOrder) -> Subtree:
    """The unique cell label of a stable representation.

    Greedy construction: repeatedly adjoin the order-minimal critical path
    whose vector falls outside the span of the vectors collected so far at
    its vertex; stop once the spans fill every vertex.  Only monomial
    orders make the greedy step valid.
    """
    if not order.is_monomial:
        raise CellError("classify requires a monomial order (shortlex kinds)")
    d = m.d
    total = sum(d)
    spans = [Span(di) for di in d]
    chain = [ROOT]
    crit = order.sort(children(fq, ROOT))
    vectors = {ROOT: (Fraction(1),)}
    size = 0
    while size < total:
        chosen = None
        for v in crit:
            i = path_target(fq, v)
            if spans[i].rank >= d[i]:
                continue
            if v not in vectors:
                vectors[v] = m.path_vector(v)
            if not spans[i].contains(vectors[v]):
                chosen = v
                break
        if chosen is None:
            raise CellError("not stable: framing does not generate the representation")
        i = path_target(fq, chosen)
        spans[i].add(vectors[chosen])
        chain.append(chosen)
        size += 1
        crit = order.sort(
            [w for w in crit if w != chosen] + children(fq, chosen)
        )
    return Subtree(tuple(order.sort(chain)))


def in_cell(fq: FramedQuiver, m: NumericRep, s: Subtree, order: PathOrder) -> bool:
    """Exact membership test for the cell of the label s.

    Requires the path vectors over s to form a basis and every critical
    vector to lie in the span of the strictly smaller basis vectors at its
    vertex.
    """
    if udim(fq, s) != m.d:
        return False
    spans = [Span(di) for di in m.d]
    for u in s.nonroot:
        if not spans[path_target(fq, u)].add(m.path_vector(u)):
            return False
    crit = critical_set(fq, s, order)
    for v in crit.paths:
        i = path_target(fq, v)
        below = Span(m.d[i])
        for u in s.nonroot:
            if path_target(fq, u) == i and order.compare(u, v) < 0:
                below.add(m.path_vector(u))
        if not below.contains(m.path_vector(v)):
            return False
    return True


def in_degeneracy_locus(
    fq: FramedQuiver, m: NumericRep, s: Subtree, order: PathOrder
) -> bool:
    """True iff every critical family {vectors at u <= v, same vertex} is dependent."""
    if udim(fq, s) != m.d:
        raise CellError("subtree counts do not match the representation")
    crit = critical_set(fq, s, order)
    for v, kv in zip(crit.paths, crit.k):
        i = path_target(fq, v)
        family = [
            m.path_vector(u)
            for u in s.nonroot
            if path_target(fq, u) == i and order.compare(u, v) < 0
        ]
        family.append(m.path_vector(v))
        if rank(family) == kv + 1:
            return False
    return True


def random_rep(
    fq: FramedQuiver, d: DimVector, rng: Random, bound: int = 9
) -> NumericRep:
    """Random small-integer representation; not necessarily stable."""
    d = check_dim(fq.base, d)
    mats = []
    for a in fq.arrows:
        rows = d[a.target]
        cols = 1 if a.source == INF_VERTEX else d[a.source]
        mats.append(
            tuple(
                tuple(Fraction(rng.randint(-bound, bound)) for _ in range(cols))
                for _ in range(rows)
            )
        )
    return NumericRep(fq, d, tuple(mats))


def random_stable_rep(
    fq: FramedQuiver, d: DimVector, rng: Random, tries: int = 100
) -> NumericRep:
    order = PathOrder.shortlex()
    for _ in range(tries):
        m = random_rep(fq, d, rng)
        try:
            classify(fq, m, order)
            return m
        except CellError:
            continue
    raise CellError(f"no stable representation found for d={d}")


# -- representation file format ---------------------------------------------------
#
#   rep <d_0> ... <d_{n-1}>
#   matrix <arrowname>
#   <row of rationals p/q>            (d_target rows, d_source columns)
#   framing <vertex> <slot>
#   <one row of d_vertex rationals>   (the column vector of that slot)
#
# Omitted blocks default to zero.


def parse_rep_file(fq: FramedQuiver, text) -> NumericRep:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows: list[list[str]] = [ln.split() for ln in lines if ln]
    if not rows or rows[0][0] != "rep":
        raise QuiverError("representation file must start with a 'rep' line")
    d = tuple(int(x) for x in rows[0][1:])
    d = check_dim(fq.base, d)
    entries: dict[str, list[list[Fraction]]] = {}
    pos = 1
    while pos < len(rows):
        head = rows[pos]
        if head[0] == "matrix":
            if len(head) != 2:
                raise QuiverError("expected: matrix <arrowname>")
            name = head[1]
            idx = fq.arrow_index(name)
            a = fq.arrows[idx]
            if a.source == INF_VERTEX:
                raise QuiverError(
                    f"{name!r} is a framing arrow; use a 'framing' block"
                )
            nrows = d[a.target]
            block = [
                [Fraction(x) for x in rows[pos + 1 + r]] for r in range(nrows)
            ]
            entries[name] = block
            pos += 1 + nrows
        elif head[0] == "framing":
            if len(head) != 3:
                raise QuiverError("expected: framing <vertex> <slot>")
            vertex, slot = int(head[1]), int(head[2])
            if not 0 <= vertex < fq.vertex_count:
                raise QuiverError(f"framing vertex {vertex} out of range")
            if not 1 <= slot <= fq.framing[vertex]:
                raise QuiverError(f"framing slot {slot} out of range")
            offset = sum(fq.framing[:vertex]) + slot - 1
            name = fq.arrows[offset].name
            column = [Fraction(x) for x in rows[pos + 1]]
            entries[name] = [[c] for c in column]
            pos += 2
        else:
            raise QuiverError(f"unknown block {head[0]!r} in representation file")
    return make_rep(fq, d, entries)
