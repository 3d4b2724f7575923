"""Shuffle algebra over exact rationals and its framed module quotients.

Graded pieces are block-symmetric polynomials: one variable block per
vertex, invariant under permutations inside each block.  The product is a
shuffle sum whose kernel factors can carry negative exponents on loopless
vertices; those are handled by one global Vandermonde denominator per
block and a single exact division at the end, whose exactness is asserted
(a failed division means a broken product, never bad input).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

from .linalg import rref
from .partitions import MultiPartition, enumerate_partitions, satisfies_phi
from .polys import Poly
from .quiver import DimVector, FramedQuiver, check_dim, euler_form, unit_vector


class CohaError(ValueError):
    """Violated precondition in a shuffle algebra computation."""


def block_offsets(d: DimVector) -> list[int]:
    out = [0]
    for x in d:
        out.append(out[-1] + x)
    return out[:-1]


def var_name(d: DimVector, index: int) -> str:
    offs = block_offsets(d)
    for i in reversed(range(len(d))):
        if index >= offs[i]:
            return f"x[{i},{index - offs[i] + 1}]"
    raise IndexError(index)


@dataclass(frozen=True)
class SymPoly:
    """Element of one graded piece: dimension vector plus polynomial.

    The polynomial lives in sum(d) variables, blocked per vertex, and must
    be invariant under permutations within each block.
    """

    fq: FramedQuiver
    d: DimVector
    poly: Poly

    def __post_init__(self):
        if self.poly.nvars != sum(self.d):
            raise CohaError("variable count does not match the dimension vector")

    def degree(self) -> int:
        return self.poly.degree()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_homogeneous(self) -> bool:
        degrees = {sum(exp) for exp in self.poly.terms}
        return len(degrees) <= 1

    def is_symmetric(self) -> bool:
        """Check invariance under the adjacent transpositions of each block."""
        offs = block_offsets(self.d)
        n = self.poly.nvars
        for i, di in enumerate(self.d):
            for k in range(di - 1):
                perm = list(range(n))
                a, b = offs[i] + k, offs[i] + k + 1
                perm[a], perm[b] = perm[b], perm[a]
                if self.poly.permute_vars(perm) != self.poly:
                    return False
        return True

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        return SymPoly(self.fq, self.d, self.poly + other.poly)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        return SymPoly(self.fq, self.d, self.poly - other.poly)

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.fq, self.d, -self.poly)

    def scale(self, c) -> "SymPoly":
        return SymPoly(self.fq, self.d, self.poly.scale(c))

    def _check_compatible(self, other: "SymPoly"):
        if self.fq != other.fq:
            raise CohaError("elements live over different quivers")
        if self.d != other.d:
            raise CohaError("dimension vectors differ")

    def format(self) -> str:
        return self.poly.format(lambda i: var_name(self.d, i))

    def __repr__(self):
        return f"SymPoly(d={self.d}, {self.format()})"


def unit(fq: FramedQuiver, d: DimVector) -> SymPoly:
    d = check_dim(fq.base, d)
    return SymPoly(fq, d, Poly.const(sum(d), 1))


def variable(fq: FramedQuiver, d: DimVector, i: int, k: int) -> SymPoly:
    """x_{i,k}; note this is only symmetric when the block has one variable."""
    d = check_dim(fq.base, d)
    offs = block_offsets(d)
    if not 1 <= k <= d[i]:
        raise CohaError(f"no variable x[{i},{k}] in degree {d}")
    return SymPoly(fq, d, Poly.variable(sum(d), offs[i] + k - 1))


def elementary(fq: FramedQuiver, d: DimVector, i: int, k: int) -> SymPoly:
    """k-th elementary symmetric polynomial of the block at vertex i."""
    d = check_dim(fq.base, d)
    if k < 0 or k > d[i]:
        raise CohaError(f"e_{k} undefined for a block of size {d[i]}")
    offs = block_offsets(d)
    n = sum(d)
    poly = Poly.zero(n)
    for subset in combinations(range(d[i]), k):
        exp = [0] * n
        for s in subset:
            exp[offs[i] + s] = 1
        poly = poly + Poly.monomial(n, tuple(exp))
    return SymPoly(fq, d, poly)


def cup_product(f: SymPoly, g: SymPoly) -> SymPoly:
    """Ordinary polynomial product within one graded piece."""
    f._check_compatible(g)
    return SymPoly(f.fq, f.d, f.poly * g.poly)


def framing_idempotent(fq: FramedQuiver, d: DimVector) -> SymPoly:
    """Product over vertices of (x_{i,1}...x_{i,d_i})^{w_i}."""
    d = check_dim(fq.base, d)
    offs = block_offsets(d)
    exp = [0] * sum(d)
    for i, di in enumerate(d):
        for k in range(di):
            exp[offs[i] + k] = fq.framing[i]
    return SymPoly(fq, d, Poly.monomial(sum(d), tuple(exp)))


@lru_cache(maxsize=4096)
def _vandermonde(nvars: int, positions: tuple[int, ...]) -> Poly:
    out = Poly.const(nvars, 1)
    for a, b in combinations(positions, 2):
        out = out * (Poly.variable(nvars, b) - Poly.variable(nvars, a))
    return out


def shuffle_product(f: SymPoly, g: SymPoly) -> SymPoly:
    """The shuffle product of graded pieces over d and e, landing in d+e.

    Each shuffle term permutes the unshuffled product of f, g and the
    pair-interaction kernel into place; loopless vertices contribute a
    first-order pole per cross pair, cleared by multiplying every term by
    its complementary Vandermonde factor and dividing the full sum by the
    block Vandermonde at the end.  The division must be exact.
    """
    if f.fq != g.fq:
        raise CohaError("elements live over different quivers")
    fq = f.fq
    q = fq.base
    d, e = f.d, g.d
    t = tuple(a + b for a, b in zip(d, e))
    n = sum(t)
    offs = block_offsets(t)
    nv = q.vertex_count

    # embed f (block prefix) and g (block suffix) in the target ring
    f_pos = [
        offs[i] + r
        for i in range(nv)
        for r in range(d[i])
    ]
    g_pos = [
        offs[i] + d[i] + s
        for i in range(nv)
        for s in range(e[i])
    ]
    core = f.poly.embed(n, f_pos) * g.poly.embed(n, g_pos)

    units = [unit_vector(q, i) for i in range(nv)]
    chi = [[euler_form(q, units[i], units[j]) for j in range(nv)] for i in range(nv)]

    # non-negative kernel exponents multiply into the numerator
    for i in range(nv):
        for j in range(nv):
            power = -chi[i][j]
            if power <= 0:
                continue
            for r in range(d[i]):
                for s in range(e[j]):
                    factor = Poly.variable(n, offs[j] + d[j] + s) - Poly.variable(
                        n, offs[i] + r
                    )
                    core = core * factor**power

    loopless = [i for i in range(nv) if chi[i][i] == 1 and t[i] > 0]

    # the complementary Vandermonde of each shuffle is the shuffled image of
    # the block Vandermondes, so it folds into the core once and for all
    for i in loopless:
        core = core * _vandermonde(n, tuple(offs[i] + p for p in range(d[i])))
        core = core * _vandermonde(
            n, tuple(offs[i] + d[i] + s for s in range(e[i]))
        )

    total = Poly.zero(n)
    block_choices = [combinations(range(t[i]), d[i]) for i in range(nv)]
    for choice in product(*block_choices):
        perm = list(range(n))
        sign = 1
        for i in range(nv):
            a_set = choice[i]
            in_a = set(a_set)
            b_set = [p for p in range(t[i]) if p not in in_a]
            for p, target_slot in enumerate(a_set):
                perm[offs[i] + p] = offs[i] + target_slot
            for s, target_slot in enumerate(b_set):
                perm[offs[i] + d[i] + s] = offs[i] + target_slot
            if i in loopless:
                inv = sum(1 for a in a_set for b in b_set if b < a)
                if inv % 2:
                    sign = -sign
        term = core.permute_vars(perm)
        total = total + (term if sign == 1 else -term)

    if loopless:
        denom = Poly.const(n, 1)
        for i in loopless:
            denom = denom * _vandermonde(n, tuple(offs[i] + p for p in range(t[i])))
        total = total.exact_div(denom)

    result = SymPoly(fq, t, total)
    if not result.is_symmetric():
        raise AssertionError("shuffle product broke block symmetry")
    if not result.is_zero():
        expected = f.degree() + g.degree() - euler_form(q, d, e)
        if result.degree() > expected:
            raise AssertionError("shuffle product broke the degree law")
        if (
            f.is_homogeneous()
            and g.is_homogeneous()
            and result.degree() != expected
        ):
            raise AssertionError("shuffle product broke the degree law")
    return result


# -- graded slices in the monomial symmetric basis --------------------------------


def _partitions_bounded_length(total: int, max_parts: int):
    """Weakly decreasing tuples summing to total with at most max_parts parts."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return

    def rec(prefix, remaining, cap, slots):
        if remaining == 0:
            yield tuple(prefix)
            return
        if slots == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(prefix, remaining - p, p, slots - 1)
            prefix.pop()

    yield from rec([], total, total, max_parts)


Signature = tuple[tuple[int, ...], ...]


def slice_basis(d: DimVector, n: int) -> list[Signature]:
    """Monomial-symmetric basis labels of the degree-n piece over d.

    A label is one partition per vertex (padded to d_i), total size n;
    sorted by the padded signature for a stable column order.
    """
    nv = len(d)

    def rec(i, remaining):
        if i == nv:
            if remaining == 0:
                yield ()
            return
        for k in range(remaining + 1):
            for lam in _partitions_bounded_length(k, d[i]):
                padded = lam + (0,) * (d[i] - len(lam))
                for rest in rec(i + 1, remaining - k):
                    yield (padded,) + rest

    return sorted(rec(0, n))


def monomial_symmetric(fq: FramedQuiver, d: DimVector, sig: Signature) -> SymPoly:
    """Sum of the distinct monomials in the block-permutation orbit of sig."""
    n = sum(d)
    offs = block_offsets(d)
    per_block: list[set[tuple[int, ...]]] = []
    for i, lam in enumerate(sig):
        per_block.append(set(permutations(lam)))
    terms: dict[tuple[int, ...], Fraction] = {}
    for combo in product(*per_block):
        exp = [0] * n
        for i, arrangement in enumerate(combo):
            for k, p in enumerate(arrangement):
                exp[offs[i] + k] = p
        terms[tuple(exp)] = Fraction(1)
    return SymPoly(fq, d, Poly(n, terms))


def coordinates(p: SymPoly, basis: list[Signature]) -> tuple[Fraction, ...]:
    """Coordinates of a symmetric element in the monomial-symmetric basis."""
    offs = block_offsets(p.d)
    index = {sig: j for j, sig in enumerate(basis)}
    out = [Fraction(0)] * len(basis)
    for exp, c in p.poly.terms.items():
        sig = tuple(
            tuple(sorted(exp[offs[i] : offs[i] + di], reverse=True))
            for i, di in enumerate(p.d)
        )
        rep = tuple(
            exp[offs[i] : offs[i] + di] == sig[i] for i, di in enumerate(p.d)
        )
        if all(rep):
            j = index.get(sig)
            if j is None:
                raise CohaError("coordinate outside the declared graded slice")
            out[j] = c
    return tuple(out)


@dataclass(frozen=True)
class GradedSubspace:
    """Row-reduced subspace of one graded slice; equality is canonical."""

    d: DimVector
    n: int
    basis: tuple[Signature, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, row) -> bool:
        stacked = rref(list(self.rows) + [tuple(row)])
        return len(stacked) == len(self.rows)


def kernel_graded_piece(fq: FramedQuiver, d: DimVector, n: int) -> GradedSubspace:
    """Degree-n slice of the kernel of the quotient onto the framed module.

    Spanned by shuffle products f * (idempotent cup g) where the inner
    factor ranges over subdimensions 0 < d' <= d and f, g over
    monomial-symmetric bases in the degrees allowed by the degree law.
    """
    d = check_dim(fq.base, d)
    if n < 0:
        raise CohaError("negative degree")
    basis = slice_basis(d, n)
    rows: list[tuple[Fraction, ...]] = []
    for dprime in product(*(range(x + 1) for x in d)):
        if all(x == 0 for x in dprime):
            continue
        rest = tuple(a - b for a, b in zip(d, dprime))
        wd = sum(w * x for w, x in zip(fq.framing, dprime))
        budget = n - wd + euler_form(fq.base, rest, dprime)
        if budget < 0:
            continue
        ew = framing_idempotent(fq, dprime)
        for p in range(budget + 1):
            q_deg = budget - p
            for sig_f in slice_basis(rest, p):
                fpoly = monomial_symmetric(fq, rest, sig_f)
                for sig_g in slice_basis(dprime, q_deg):
                    gpoly = monomial_symmetric(fq, dprime, sig_g)
                    gen = shuffle_product(fpoly, cup_product(ew, gpoly))
                    if gen.is_zero():
                        continue
                    if gen.degree() != n:
                        raise AssertionError("kernel generator in the wrong degree")
                    rows.append(coordinates(gen, basis))
    return GradedSubspace(d, n, tuple(basis), tuple(rref(rows)))


def tautological_monomial(fq: FramedQuiver, lam: MultiPartition) -> SymPoly:
    """Product over vertices and k of e_k to the power lambda_k - lambda_{k+1}."""
    d = lam.shape()
    if not satisfies_phi(fq, d, lam):
        raise CohaError("partition does not label a cell")
    result = unit(fq, d)
    for i, parts in enumerate(lam.parts):
        for k in range(1, d[i] + 1):
            nxt = parts[k] if k < d[i] else 0
            power = parts[k - 1] - nxt
            if power > 0:
                factor = elementary(fq, d, i, k)
                for _ in range(power):
                    result = cup_product(result, factor)
    return result


@dataclass(frozen=True)
class BasisReport:
    d: DimVector
    n: int
    h_dim: int
    kernel_dim: int
    quotient_dim: int
    partition_count: int
    independent: bool


def verify_basis(fq: FramedQuiver, d: DimVector, n: int) -> BasisReport:
    """Check that tautological monomials base the degree-n quotient slice.

    The quotient dimension (slice minus kernel) must equal the number of
    cell labels of size n, and the tautological monomials of those labels
    must stay independent modulo the kernel slice.
    """
    d = check_dim(fq.base, d)
    kernel = kernel_graded_piece(fq, d, n)
    basis = list(kernel.basis)
    h_dim = len(basis)
    labels = [lam for lam in enumerate_partitions(fq, d) if lam.size == n]
    taut_rows = [
        coordinates(tautological_monomial(fq, lam), basis) for lam in labels
    ]
    stacked = rref(list(kernel.rows) + taut_rows)
    quotient_dim = h_dim - kernel.dim
    independent = (
        quotient_dim == len(labels)
        and len(stacked) == kernel.dim + len(labels)
    )
    return BasisReport(
        d=d,
        n=n,
        h_dim=h_dim,
        kernel_dim=kernel.dim,
        quotient_dim=quotient_dim,
        partition_count=len(labels),
        independent=independent,
    )


def top_degree(fq: FramedQuiver, d: DimVector) -> int:
    """Largest label size; the quotient vanishes strictly above it."""
    sizes = [lam.size for lam in enumerate_partitions(fq, d)]
    return max(sizes) if sizes else -1
