"""Exact Weingarten calculus for the ten orthogonal/unitary quantum groups.

A group (or sphere) is specified by a field (real/complex), a liberation
level (classical/half/free) and a twist flag; free objects cannot be
twisted and are normalized to the untwisted ones.  Each group comes with a
category of pairings: all of P2 at the classical level, the alternating
subclass P2* at the half level, and the noncrossing pairings NC2 at the
free level, colored by the exponent word in the complex case.  Twisting
never changes the pairing set, only the signs inside the Kronecker
symbols.

The Gram matrix ``G(pi, sigma) = N ** |pi v sigma|`` is integral, its
inverse is computed exactly over the rationals, and joint moments of the
coordinates follow from the Weingarten sum.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SingularGramError
from .partitions import (
    Partition,
    PartitionClass,
    enumerate_partitions,
    join,
)
from .tensors import delta


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class Level(enum.Enum):
    CLASSICAL = "classical"
    HALF = "half"
    FREE = "free"


@dataclass(frozen=True)
class GroupSpec:
    field: Field
    level: Level
    twisted: bool = False

    def __post_init__(self):
        if self.level is Level.FREE and self.twisted:
            object.__setattr__(self, "twisted", False)  # free objects have no twist

    @property
    def name(self) -> str:
        base = {Field.REAL: "o_n", Field.COMPLEX: "u_n"}[self.field]
        suffix = {
            Level.CLASSICAL: "",
            Level.HALF: "_star" if self.field is Field.REAL else "_star2",
            Level.FREE: "_plus",
        }[self.level]
        return ("bar_" if self.twisted else "") + base + suffix


@dataclass(frozen=True)
class SphereSpec:
    field: Field
    level: Level
    twisted: bool = False

    def __post_init__(self):
        if self.level is Level.FREE and self.twisted:
            object.__setattr__(self, "twisted", False)

    @property
    def name(self) -> str:
        base = {Field.REAL: "s_r", Field.COMPLEX: "s_c"}[self.field]
        suffix = {
            Level.CLASSICAL: "",
            Level.HALF: "_star" if self.field is Field.REAL else "_star2",
            Level.FREE: "_plus",
        }[self.level]
        return ("bar_" if self.twisted else "") + base + suffix

    @property
    def isometry_group(self) -> GroupSpec:
        return GroupSpec(self.field, self.level, self.twisted)


_GROUP_NAMES = {GroupSpec(f, l, t).name: GroupSpec(f, l, t)
                for f in Field for l in Level for t in (False, True)}
_SPHERE_NAMES = {SphereSpec(f, l, t).name: SphereSpec(f, l, t)
                 for f in Field for l in Level for t in (False, True)}

GROUPS = tuple(sorted(set(_GROUP_NAMES.values()), key=lambda g: g.name))
SPHERES = tuple(sorted(set(_SPHERE_NAMES.values()), key=lambda s: s.name))


def group_by_name(name: str) -> GroupSpec:
    try:
        return _GROUP_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; choose from {sorted(_GROUP_NAMES)}")


def sphere_by_name(name: str) -> SphereSpec:
    try:
        return _SPHERE_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown sphere {name!r}; choose from {sorted(_SPHERE_NAMES)}")


def parse_alpha(alpha) -> tuple[str, ...]:
    """Exponent word: a string over '1' and '*' (or 'o' for plain)."""
    if alpha is None:
        return ()
    out = []
    for c in alpha:
        if c in ("1", "o", 1):
            out.append("1")
        elif c == "*":
            out.append("*")
        else:
            raise ValueError(f"bad exponent {c!r} in alpha")
    return tuple(out)


# ---------------------------------------------------------------------------
# exact rational matrices


class ExactMatrix:
    """Dense matrix of Fractions with exact elimination kernels."""

    def __init__(self, rows: Sequence[Sequence]):
        self.data = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.data)
        self.ncols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.ncols for r in self.data):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.data == other.data

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.ncols == other.nrows
        return ExactMatrix([
            [sum(self.data[i][k] * other.data[k][j] for k in range(self.ncols))
             for j in range(other.ncols)]
            for i in range(self.nrows)
        ])

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix([[c * x for x in row] for row in self.data])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(col) for col in zip(*self.data)] if self.data else [])

    def is_symmetric(self) -> bool:
        return self.data == self.transpose().data

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.data]

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan over the rationals; raises on singular input."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse needs a square matrix")
        a = [row[:] for row in self.data]
        inv = ExactMatrix.identity(n).data
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            scale = a[col][col]
            a[col] = [x / scale for x in a[col]]
            inv[col] = [x / scale for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return ExactMatrix(inv)

    def rank(self) -> int:
        a = [row[:] for row in self.data]
        rank = 0
        for col in range(self.ncols):
            pivot = next((r for r in range(rank, self.nrows) if a[r][col] != 0), None)
            if pivot is None:
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            scale = a[rank][col]
            a[rank] = [x / scale for x in a[rank]]
            for r in range(self.nrows):
                if r != rank and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
            rank += 1
            if rank == self.nrows:
                break
        return rank

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.data]

    def __repr__(self):  # pragma: no cover
        return f"ExactMatrix({self.to_strings()})"


# ---------------------------------------------------------------------------
# pairing categories


def category_pairings(g: GroupSpec, alpha=None, k: int | None = None) -> list[Partition]:
    """Pairings spanning Hom(1, u^{tensor alpha}) for the group.

    Real groups take a plain leg count ``k`` (or use len(alpha)); complex
    groups color the legs by the exponent word ``alpha``.
    """
    word = parse_alpha(alpha)
    if k is None:
        k = len(word)
    if g.field is Field.COMPLEX:
        if len(word) != k:
            raise ValueError("complex groups need an exponent word alpha")
        lower = "".join("o" if c == "1" else "*" for c in word)
    else:
        lower = k
    cls = {
        Level.CLASSICAL: PartitionClass.P2,
        Level.HALF: PartitionClass.P2_STAR,
        Level.FREE: PartitionClass.NC2,
    }[g.level]
    return enumerate_partitions(cls, 0, lower)


def gram(g: GroupSpec, n: int, alpha=None, k: int | None = None,
         pairings: list[Partition] | None = None) -> ExactMatrix:
    """Gram matrix G(pi, sigma) = N ** |pi v sigma| over the category pairings."""
    ps = pairings if pairings is not None else category_pairings(g, alpha, k)
    return ExactMatrix([
        [Fraction(n) ** join(p, q).block_count for q in ps] for p in ps
    ])


def weingarten_matrix(g: GroupSpec, n: int, alpha=None, k: int | None = None,
                      pairings: list[Partition] | None = None) -> ExactMatrix:
    """Exact inverse of the Gram matrix."""
    ps = pairings if pairings is not None else category_pairings(g, alpha, k)
    gm = gram(g, n, pairings=ps)
    try:
        return gm.inverse()
    except ZeroDivisionError:
        raise SingularGramError(n, len(ps[0].colors) if ps else 0)


def moment(g: GroupSpec, n: int, i: Sequence[int], j: Sequence[int],
           alpha=None) -> Fraction:
    """Haar moment of a coordinate word u_{i1 j1}^{a1} ... u_{ik jk}^{ak}."""
    word = parse_alpha(alpha)
    k = len(i)
    if not word:
        word = ("1",) * k
    if not (len(i) == len(j) == len(word)):
        raise ValueError("row tuple, column tuple and alpha must share a length")
    if k == 0:
        return Fraction(1)
    ps = category_pairings(g, word)
    if not ps:
        return Fraction(0)
    wg = weingarten_matrix(g, n, pairings=ps)
    di = [delta(p, tuple(i), twisted=g.twisted) for p in ps]
    dj = [delta(p, tuple(j), twisted=g.twisted) for p in ps]
    total = Fraction(0)
    for a, pa in enumerate(ps):
        if not di[a]:
            continue
        for b, pb in enumerate(ps):
            if dj[b]:
                total += di[a] * dj[b] * wg[a, b]
    return total


def sphere_trace(s: SphereSpec, n: int, i: Sequence[int], alpha=None) -> Fraction:
    """Canonical trace of z_{i1}^{a1} ... z_{ik}^{ak} on the sphere."""
    ones = (1,) * len(i)
    return moment(s.isometry_group, n, ones, tuple(i), alpha)


def gram_rank_products(s: SphereSpec, n: int, conjugated: bool = False) -> int:
    """Exact rank of the Gram matrix of the degree-two coordinate products.

    ``conjugated=False`` uses the products z_i z_j (exponent word 11**
    after tracing against the adjoint), ``conjugated=True`` uses
    z_i z_j^* (exponent word 1*1*).
    """
    alpha = ("1", "*", "1", "*") if conjugated else ("1", "1", "*", "*")
    pairs = list(itertools.product(range(1, n + 1), repeat=2))
    rows = []
    for (i, j) in pairs:
        rows.append([
            sphere_trace(s, n, (i, j, l, k), alpha) for (k, l) in pairs
        ])
    return ExactMatrix(rows).rank()


def row_sum_profile(m: ExactMatrix) -> list[Fraction]:
    """Per-row sums; constant for the stochastic Gram matrices."""
    return m.row_sums()
