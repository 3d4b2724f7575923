"""Sparse multivariate polynomials over exact rationals.

Exponent vectors are plain int tuples of a fixed length; coefficients are
Fraction.  Zero coefficients are never stored, so equality of term dicts is
equality of polynomials.  This module is the arithmetic core shared by the
shuffle algebra (variables x_{i,k}) and the chart computations (variables
c_{u,v}); neither interpretation leaks in here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping

Exponent = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class Poly:
    """Polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, Fraction] = dict(terms) if terms else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, nvars: int, exp: Exponent, c=1) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return cls(nvars)
        if len(exp) != nvars:
            raise ValueError("exponent length mismatch")
        return cls(nvars, {tuple(exp): c})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero():
            return ZERO
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, ZERO) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, ZERO) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(self.nvars)
        return Poly(self.nvars, {exp: c * v for exp, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structural operations ----------------------------------------------

    def map_exponents(self, fn: Callable[[Exponent], Exponent], nvars: int) -> "Poly":
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = fn(exp)
            s = out.get(new, ZERO) + c
            if s:
                out[new] = s
            else:
                out.pop(new, None)
        return Poly(nvars, out)

    def permute_vars(self, perm: list[int]) -> "Poly":
        """Relabel variable i as perm[i]."""
        n = self.nvars
        inverse = [0] * n
        for i, p in enumerate(perm):
            inverse[p] = i
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            out[tuple(exp[j] for j in inverse)] = c
        return Poly(n, out)

    def embed(self, nvars: int, positions: list[int]) -> "Poly":
        """View self in a larger ring, variable i going to slot positions[i]."""

        def place(exp: Exponent) -> Exponent:
            new = [0] * nvars
            for i, e in enumerate(exp):
                new[positions[i]] = e
            return tuple(new)

        return self.map_exponents(place, nvars)

    def set_vars_zero(self, indices: Iterable[int]) -> "Poly":
        """Substitute 0 for the given variables (drop every term using them)."""
        dead = set(indices)
        out = {
            exp: c
            for exp, c in self.terms.items()
            if all(exp[i] == 0 for i in dead)
        }
        return Poly(self.nvars, out)

    def substitute(self, values: Mapping[int, "Poly"]) -> "Poly":
        """Substitute polynomials for some variables; the rest stay."""
        result = Poly.zero(self.nvars)
        for exp, c in self.terms.items():
            term = Poly.const(self.nvars, c)
            rest = [0] * self.nvars
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                if i in values:
                    term = term * values[i] ** e
                else:
                    rest[i] = e
            term = term * Poly.monomial(self.nvars, tuple(rest))
            result = result + term
        return result

    def evaluate(self, point: list[Fraction]) -> Fraction:
        total = ZERO
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    v *= point[i] ** e
            total += v
        return total

    def var_degree(self, index: int) -> int:
        """Largest exponent of one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(exp[index] for exp in self.terms)

    # -- exact division ------------------------------------------------------

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Divide exactly, raising ExactDivisionError if any step fails.

        Uses the leading-term algorithm under the lex order on exponent
        tuples; when the division is exact this terminates with quotient
        equal to self/divisor.
        """
        if divisor.is_zero():
            raise ExactDivisionError("division by zero polynomial")
        if self.is_zero():
            return Poly(self.nvars)
        if divisor.is_const():
            inv = 1 / divisor.const_value()
            return self.scale(inv)
        lead_g = max(divisor.terms)
        cg = divisor.terms[lead_g]
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            lead_r = max(rem)
            texp = tuple(a - b for a, b in zip(lead_r, lead_g))
            if any(e < 0 for e in texp):
                raise ExactDivisionError("non-exact polynomial division")
            tc = rem[lead_r] / cg
            quot[texp] = tc
            for exp, c in divisor.terms.items():
                target = tuple(a + b for a, b in zip(exp, texp))
                s = rem.get(target, ZERO) - tc * c
                if s:
                    rem[target] = s
                else:
                    rem.pop(target, None)
        return Poly(self.nvars, quot)

    # -- display -------------------------------------------------------------

    def format(self, var_name: Callable[[int], str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(var_name(i))
                elif e > 1:
                    factors.append(f"{var_name(i)}^{e}")
            body = "*".join(factors)
            if not body:
                piece = str(c)
            elif c == 1:
                piece = body
            elif c == -1:
                piece = f"-{body}"
            else:
                piece = f"{c}*{body}"
            parts.append(piece)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.format(lambda i: f'x{i}')})"


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def det_bareiss(rows: list[list[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix, fraction-free.

    Bareiss elimination keeps every intermediate entry polynomial; the
    divisions it performs are exact by construction, which doubles as an
    internal consistency check on the polynomial arithmetic.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = rows[0][0].nvars
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot_row is None:
                return Poly.zero(nvars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero(nvars)
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


def minors(rows: list[list[Poly]], size: int) -> list[Poly]:
    """All size x size minors, row sets then column sets in lex order."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    out = []
    for rset in combinations(range(nrows), size):
        for cset in combinations(range(ncols), size):
            sub = [[rows[r][c] for c in cset] for r in rset]
            out.append(det_bareiss(sub))
    return out
