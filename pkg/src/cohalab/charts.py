"""Symbolic affine charts, degeneracy minors, and multiplicity extraction.

A chart is labelled by a subtree whose path vectors form a basis; every
other path vector expands in that basis with polynomial coordinates
c[u,v].  Minors of those expansions cut out degeneracy loci, and
specializing the coordinates toward a smaller cell reads off the
multiplicity with which the locus meets its closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cells import (
    CellError,
    NumericRep,
    Subtree,
    critical_set,
    udim,
    vertex_slice,
)
from .paths import Path, PathOrder, format_path, parent, path_target
from .polys import Poly, det_bareiss
from .quiver import INF_VERTEX, FramedQuiver


@dataclass(frozen=True)
class Chart:
    """Affine chart of a basis subtree: coordinate index plus cached data."""

    fq: FramedQuiver
    tree: Subtree
    order: PathOrder
    coords: tuple[tuple[Path, Path], ...]

    @property
    def nvars(self) -> int:
        return len(self.coords)

    def var_index(self, u: Path, v: Path) -> int:
        return self.coords.index((u, v))

    def coord_name(self, index: int) -> str:
        u, v = self.coords[index]
        return f"c[{format_path(self.fq, u)},{format_path(self.fq, v)}]"

    def format_poly(self, p: Poly) -> str:
        return p.format(self.coord_name)


def chart_coordinates(
    fq: FramedQuiver, s: Subtree, order: PathOrder
) -> list[tuple[Path, Path]]:
    """All (basis path, critical path) pairs at a common vertex.

    The count equals the chart dimension, which is the moduli dimension.
    """
    crit = critical_set(fq, s, order)
    out = []
    for i in range(fq.vertex_count):
        basis_i = order.sort(vertex_slice(fq, s, i))
        crit_i = crit.at_vertex(fq, i)
        for v in crit_i:
            for u in basis_i:
                out.append((u, v))
    return out


def make_chart(fq: FramedQuiver, s: Subtree, order: PathOrder) -> Chart:
    return Chart(fq, s, order, tuple(chart_coordinates(fq, s, order)))


class _SymbolicExpander:
    """Memoized expansion of path vectors in a chart basis."""

    def __init__(self, chart: Chart):
        self.chart = chart
        self.fq = chart.fq
        self.order = chart.order
        self.members = chart.tree.path_set
        self.crit = critical_set(self.fq, chart.tree, chart.order)
        self.crit_set = set(self.crit.paths)
        self.slices = {
            i: self.order.sort(vertex_slice(self.fq, chart.tree, i))
            for i in range(self.fq.vertex_count)
        }
        self.var_of = {pair: k for k, pair in enumerate(chart.coords)}
        self.cache: dict[Path, list[Poly]] = {}

    def vector(self, v: Path) -> list[Poly]:
        if path_target(self.fq, v) == INF_VERTEX:
            raise CellError("path ends at the framing vertex")
        hit = self.cache.get(v)
        if hit is not None:
            return hit
        i = path_target(self.fq, v)
        basis = self.slices[i]
        n = self.chart.nvars
        if v in self.members:
            out = [
                Poly.const(n, 1) if u == v else Poly.zero(n) for u in basis
            ]
        elif v in self.crit_set:
            out = [
                Poly.variable(n, self.var_of[(u, v)]) for u in basis
            ]
        else:
            u, a = parent(v), v[-1]
            inner = self.vector(u)
            out = [Poly.zero(n) for _ in basis]
            for k, u_k in enumerate(self.slices[path_target(self.fq, u)]):
                if inner[k].is_zero():
                    continue
                column = self.vector(u_k + (a,))
                for j in range(len(out)):
                    if not column[j].is_zero():
                        out[j] = out[j] + inner[k] * column[j]
        self.cache[v] = out
        return out


def symbolic_vector(
    fq: FramedQuiver, s: Subtree, order: PathOrder, v: Path
) -> list[Poly]:
    """Coordinates of the path vector of v in the chart basis at its vertex."""
    return _SymbolicExpander(make_chart(fq, s, order)).vector(v)


def _minor_groups(
    fq: FramedQuiver,
    target: Subtree,
    chart: Chart,
    order: PathOrder,
) -> list[tuple[Path, list[Poly]]]:
    if udim(fq, target) != udim(fq, chart.tree):
        raise CellError("target and chart subtrees have different counts")
    expander = _SymbolicExpander(chart)
    crit = critical_set(fq, target, order)
    groups: list[tuple[Path, list[Poly]]] = []
    for v, kv in zip(crit.paths, crit.k):
        i = path_target(fq, v)
        di = udim(fq, target)[i]
        if kv + 1 > di:
            continue  # rank bound equals the ambient dimension: no condition
        family = [
            u
            for u in vertex_slice(fq, target, i)
            if order.compare(u, v) < 0
        ]
        family = order.sort(family) + [v]
        columns = [expander.vector(u) for u in family]
        dets = []
        for rows in combinations(range(di), kv + 1):
            sub = [[columns[c][r] for c in range(kv + 1)] for r in rows]
            dets.append(det_bareiss(sub))
        groups.append((v, dets))
    return groups


def membership_minors(
    fq: FramedQuiver, target: Subtree, chart_tree: Subtree, order: PathOrder
) -> list[Poly]:
    """Minor equations for membership of chart points in the target locus.

    For every critical path v of the target, the maximal minors of the
    matrix whose columns are the expansions of the family {u < v at the
    same vertex} plus v itself; their common zero locus is the degeneracy
    locus of the target inside the chart.  Ordered by v, then row set.
    """
    chart = make_chart(fq, chart_tree, order)
    return [
        det
        for _, dets in _minor_groups(fq, target, chart, order)
        for det in dets
    ]


def multiplicity_power(
    fq: FramedQuiver, target: Subtree, chart_tree: Subtree, order: PathOrder
) -> int | None:
    """Multiplicity of the chart's cell closure inside the target locus.

    Specializes the membership minors along the passage to the chart's
    cell: the cell is cut out by the coordinates c[u,v] with u > v, and
    each such coordinate in turn is kept alive while the others are set to
    zero.  Minors that vanish identically under a specialization impose
    nothing; each survivor must become a single power of the distinguished
    coordinate times a factor in the free coordinates, and the candidate
    multiplicity for that coordinate is the total power.  The result is
    the smallest candidate over the distinguished choices, or None when no
    specialization yields pure powers.  Diagonal pairs give 1.
    """
    if cell_dimension(fq, target, order) != cell_dimension(fq, chart_tree, order):
        raise CellError("multiplicity needs cells of equal dimension")
    chart = make_chart(fq, chart_tree, order)
    groups = _minor_groups(fq, target, chart, order)
    minors = [det for _, dets in groups for det in dets]
    if not minors:
        return 1  # no conditions at all: empty obstruction
    vanishing = [
        k
        for k, (u, v) in enumerate(chart.coords)
        if order.compare(u, v) > 0
    ]
    if not vanishing:
        return None
    best: int | None = None
    for star in vanishing:
        others = [k for k in vanishing if k != star]
        total = 0
        ok = True
        seen_any = False
        for det in minors:
            restricted = det.set_vars_zero(others)
            if restricted.is_zero():
                continue
            seen_any = True
            powers = {exp[star] for exp in restricted.terms}
            if len(powers) != 1 or 0 in powers:
                ok = False
                break
            total += powers.pop()
        if ok and seen_any:
            if best is None or total < best:
                best = total
    return best


def cell_dimension(fq: FramedQuiver, s: Subtree, order: PathOrder) -> int:
    return sum(critical_set(fq, s, order).k)


def rep_from_chart(
    fq: FramedQuiver,
    s: Subtree,
    order: PathOrder,
    values: dict[tuple[Path, Path], Fraction],
) -> NumericRep:
    """Reconstruct the representation of a rational chart point.

    Basis paths become unit vectors in their sorted slice; the matrix of
    each arrow sends a basis vector either to the next basis vector or to
    the column of chart values at the corresponding critical path.
    """
    d = udim(fq, s)
    crit = critical_set(fq, s, order)
    crit_set = set(crit.paths)
    members = s.path_set
    slices = {
        i: order.sort(vertex_slice(fq, s, i)) for i in range(fq.vertex_count)
    }
    position = {
        u: slices[path_target(fq, u)].index(u) for u in s.nonroot
    }

    def column_for(path: Path) -> list[Fraction]:
        i = path_target(fq, path)
        col = [Fraction(0)] * d[i]
        if path in members:
            col[position[path]] = Fraction(1)
        elif path in crit_set:
            for j, u in enumerate(slices[i]):
                col[j] = Fraction(values.get((u, path), 0))
        else:
            raise CellError("path escapes the basis and its critical boundary")
        return col

    mats = []
    for idx, a in enumerate(fq.arrows):
        if a.source == INF_VERTEX:
            col = column_for((idx,))
            mats.append(tuple((c,) for c in col))
        else:
            cols = [column_for(u + (idx,)) for u in slices[a.source]]
            rows = tuple(
                tuple(cols[c][r] for c in range(len(cols)))
                for r in range(d[a.target])
            )
            mats.append(rows)
    return NumericRep(fq, d, tuple(mats))
