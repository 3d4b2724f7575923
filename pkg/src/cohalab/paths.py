"""The tree of paths out of the framing vertex, and total orders on it.

A path is stored as a tuple of framed-arrow indices in application order:
path[0] is the first arrow applied (it leaves the framing vertex), path[-1]
the last.  Written as a composition the arrows read right to left, so the
stored tuple is the reverse of the display string.  The empty tuple is the
root (the trivial path at the framing vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quiver import INF_VERTEX, FramedQuiver, QuiverError

Path = tuple[int, ...]

ROOT: Path = ()

SHORTLEX = "shortlex"
WSHORTLEX = "weighted-shortlex"
LEX = "lex"


def path_target(fq: FramedQuiver, u: Path) -> int:
    return INF_VERTEX if not u else fq.arrows[u[-1]].target


def parent(u: Path) -> Path:
    if not u:
        raise ValueError("the root has no parent")
    return u[:-1]


def is_prefix(u: Path, v: Path) -> bool:
    """True iff u is a right factor of v (u precedes v in the tree order)."""
    return len(u) <= len(v) and v[: len(u)] == u


def children(fq: FramedQuiver, u: Path) -> list[Path]:
    """Paths a.u over arrows a starting at target(u); framing arrows at the root."""
    return [u + (a,) for a in fq.arrows_from(path_target(fq, u))]


def validate_path(fq: FramedQuiver, u: Path) -> Path:
    at = INF_VERTEX
    for idx in u:
        if not 0 <= idx < len(fq.arrows):
            raise QuiverError(f"arrow index {idx} out of range")
        a = fq.arrows[idx]
        if a.source != at:
            raise QuiverError(
                f"arrows do not compose at {format_path(fq, u)!r}"
            )
        at = a.target
    return tuple(u)


@dataclass(frozen=True)
class PathOrder:
    """One of the three admissible total orders on paths.

    shortlex and weighted-shortlex are monomial (stable under composing
    with a common arrow on the left); lex is admissible only.  Weights are
    positive rationals per arrow index, required exactly for the weighted
    kind; arrows missing from a name-keyed weight map default to 1.
    """

    kind: str
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind not in (SHORTLEX, WSHORTLEX, LEX):
            raise ValueError(f"unknown path order kind {self.kind!r}")
        if (self.weights is not None) != (self.kind == WSHORTLEX):
            raise ValueError("weights are given iff kind is weighted-shortlex")
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")

    @classmethod
    def shortlex(cls) -> "PathOrder":
        return cls(SHORTLEX)

    @classmethod
    def lex(cls) -> "PathOrder":
        return cls(LEX)

    @classmethod
    def weighted_shortlex(cls, fq: FramedQuiver, weights_by_name) -> "PathOrder":
        table = [Fraction(1)] * len(fq.arrows)
        for name, w in weights_by_name.items():
            table[fq.arrow_index(name)] = Fraction(w)
        return cls(WSHORTLEX, tuple(table))

    def key(self, u: Path):
        """Sort key; comparing keys realizes the order.

        shortlex: (length, arrows in application order); ties at equal
        length resolve at the first differing applied arrow.  lex: the
        applied tuple itself, prefixes sorting first.  weighted-shortlex:
        total weight, then shortlex.
        """
        if self.kind == SHORTLEX:
            return (len(u), u)
        if self.kind == LEX:
            return u
        wt = sum((self.weights[a] for a in u), Fraction(0))
        return (wt, len(u), u)

    def compare(self, u: Path, v: Path) -> int:
        ku, kv = self.key(u), self.key(v)
        return -1 if ku < kv else (0 if ku == kv else 1)

    def sort(self, paths) -> list[Path]:
        return sorted(paths, key=self.key)

    @property
    def is_monomial(self) -> bool:
        return self.kind in (SHORTLEX, WSHORTLEX)


def paths_up_to_length(fq: FramedQuiver, bound: int) -> list[Path]:
    out = [ROOT]
    frontier = [ROOT]
    for _ in range(bound):
        frontier = [c for u in frontier for c in children(fq, u)]
        out.extend(frontier)
    return out


def monomial_axiom_check(
    fq: FramedQuiver, order: PathOrder, length_bound: int
) -> tuple[int, Path, Path] | None:
    """Search for a violation of left-composition stability.

    Scans pairs u < v with a common target, both of length <= length_bound,
    in ascending (key(u), key(v)) order, and arrows in arrow order; returns
    the first (a, u, v) with a.u > a.v, or None.  shortlex and
    weighted-shortlex never produce one.
    """
    pool = order.sort(paths_up_to_length(fq, length_bound))
    for i, u in enumerate(pool):
        tu = path_target(fq, u)
        if tu == INF_VERTEX:
            continue
        out_arrows = fq.arrows_from(tu)
        for v in pool[i + 1 :]:
            if path_target(fq, v) != tu:
                continue
            for a in out_arrows:
                if order.compare(u + (a,), v + (a,)) >= 0:
                    return (a, u, v)
    return None


# -- display and parsing --------------------------------------------------------
#
# Display writes arrow names right to left (composition order): the stored
# path (f, a, b) renders as "baf" and dotted as "b.a.f".  The root renders
# as "*".


def format_path(fq: FramedQuiver, u: Path, dotted: bool = False) -> str:
    if not u:
        return "*"
    names = [fq.arrows[a].name for a in reversed(u)]
    return ".".join(names) if dotted else "".join(names)


def parse_path(fq: FramedQuiver, text: str) -> Path:
    """Parse a dotted path ("b.a.f") or a compact one ("baf").

    Compact strings are tokenized by greedy longest match against arrow
    names, left to right in composition order.
    """
    text = text.strip()
    if text in ("*", ""):
        return ROOT
    if "." in text:
        names = text.split(".")
    else:
        names = []
        known = sorted((a.name for a in fq.arrows), key=len, reverse=True)
        pos = 0
        while pos < len(text):
            hit = next(
                (n for n in known if text.startswith(n, pos)), None
            )
            if hit is None:
                raise QuiverError(f"cannot tokenize path {text!r} at position {pos}")
            names.append(hit)
            pos += len(hit)
    applied = [fq.arrow_index(n) for n in reversed(names)]
    return validate_path(fq, tuple(applied))
