"""Signed Kronecker symbols and the sparse linear maps attached to partitions.

A partition ``p`` on ``k`` upper and ``l`` lower legs defines a linear map
``(C^N)^{tensor k} -> (C^N)^{tensor l}`` whose matrix entry at an output
tuple ``j`` and input tuple ``i`` is ``delta(p, i+j)``: zero unless the
combined tuple is constant on the blocks of ``p``, and otherwise ``+1``
(untwisted) or the twisted signature of the kernel of the tuple, taken on
the same two-row frame.  All coefficients are the integers ``+1``/``-1``;
everything here is exact.

Index tuples run over ``1..N``.  Combined tuples list the upper row first,
then the lower row, both left to right.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import FrameError, PartitionClassError
from .partitions import Partition, kernel, signature

Tuples = tuple[int, ...]


def delta(p: Partition, t: Sequence[int], twisted: bool = False) -> int:
    """Generalized Kronecker symbol of a combined (upper+lower) tuple."""
    if len(t) != p.n_legs:
        raise FrameError("tuple length does not match the frame")
    for b in p.blocks:
        v = t[b[0]]
        if any(t[x] != v for x in b[1:]):
            return 0
    if not twisted:
        return 1
    return signature(kernel(t, p.upper, p.lower))


@dataclass(frozen=True)
class SparseTensorMap:
    """Integer-coefficient map between tensor powers of an N-dim space."""

    dim: int
    input_arity: int
    output_arity: int
    entries: Mapping[tuple[Tuples, Tuples], int]

    def __post_init__(self):
        if any(v not in (-1, 1) for v in self.entries.values()):
            raise ValueError("coefficients must be +1 or -1")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseTensorMap)
            and (self.dim, self.input_arity, self.output_arity)
            == (other.dim, other.input_arity, other.output_arity)
            and dict(self.entries) == dict(other.entries)
        )

    def __hash__(self):  # pragma: no cover
        return hash((self.dim, self.input_arity, self.output_arity,
                     tuple(sorted(self.entries.items()))))

    def scaled_equal(self, other: "SparseTensorMap", factor: int) -> bool:
        """True iff ``factor * other`` has exactly these entries."""
        if factor == 0:
            return not self.entries
        if factor not in (-1, 1):
            raise ValueError("sparse maps only store unit coefficients")
        return dict(self.entries) == {k: factor * v for k, v in other.entries.items()}

    def tensor(self, other: "SparseTensorMap") -> "SparseTensorMap":
        if self.dim != other.dim:
            raise FrameError("tensor product needs equal local dimensions")
        ent = {}
        for (o1, i1), c1 in self.entries.items():
            for (o2, i2), c2 in other.entries.items():
                ent[(o1 + o2, i1 + i2)] = c1 * c2
        return SparseTensorMap(self.dim, self.input_arity + other.input_arity,
                               self.output_arity + other.output_arity, ent)

    def matmul(self, other: "SparseTensorMap") -> dict:
        """Matrix product self . other (apply ``other`` first).

        Returns a plain coefficient dict; composite coefficients are
        generally multiples of the loop factor N**c.
        """
        if self.dim != other.dim or self.input_arity != other.output_arity:
            raise FrameError("composition needs matching middle arity")
        by_mid: dict[Tuples, list] = {}
        for (o, i), c in other.entries.items():
            by_mid.setdefault(o, []).append((i, c))
        out: dict[tuple[Tuples, Tuples], int] = {}
        for (o, mid), c in self.entries.items():
            for i, c2 in by_mid.get(mid, ()):
                key = (o, i)
                out[key] = out.get(key, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    def adjoint(self) -> "SparseTensorMap":
        ent = {(i, o): c for (o, i), c in self.entries.items()}
        return SparseTensorMap(self.dim, self.output_arity, self.input_arity, ent)

    def to_dense(self) -> np.ndarray:
        """Dense matrix of shape (N**l, N**k); tuple (t1..tm) indexes
        row/column sum((t-1) * N**(m-pos-1)), i.e. lexicographic."""
        n = self.dim
        mat = np.zeros((n ** self.output_arity, n ** self.input_arity), dtype=np.int64)

        def enc(t):
            code = 0
            for x in t:
                code = code * n + (x - 1)
            return code

        for (o, i), c in self.entries.items():
            mat[enc(o), enc(i)] = c
        return mat

    def to_json(self) -> str:
        items = sorted(self.entries.items())
        return json.dumps({
            "N": self.dim, "k": self.input_arity, "l": self.output_arity,
            "entries": [[list(o), list(i), c] for (o, i), c in items],
        })

    @staticmethod
    def from_json(text: str) -> "SparseTensorMap":
        data = json.loads(text)
        ent = {(tuple(o), tuple(i)): c for o, i, c in data["entries"]}
        return SparseTensorMap(data["N"], data["k"], data["l"], ent)


@dataclass(frozen=True)
class FixedVector:
    """A sign vector in a tensor power: the arity-0-input case of a map."""

    dim: int
    arity: int
    entries: Mapping[Tuples, int]

    def as_map(self) -> SparseTensorMap:
        return SparseTensorMap(self.dim, 0, self.arity,
                               {(t, ()): c for t, c in self.entries.items()})

    def to_dense(self) -> np.ndarray:
        return self.as_map().to_dense()[:, 0]


def t_map(p: Partition, n: int, twisted: bool = False) -> SparseTensorMap:
    """The linear map of a partition: entry at (out, in) is delta(p, in+out).

    Twisting requires even block sizes.  For noncrossing ``p`` the twisted
    and untwisted maps coincide.
    """
    if twisted and not p.has_even_blocks():
        raise PartitionClassError("twisted maps need even block sizes")
    k, l = p.upper, p.lower
    entries = {}
    blocks = p.blocks
    for assignment in itertools.product(range(1, n + 1), repeat=len(blocks)):
        t = [0] * p.n_legs
        for b, v in zip(blocks, assignment):
            for leg in b:
                t[leg] = v
        coeff = signature(kernel(t, k, l)) if twisted else 1
        entries[(tuple(t[k:]), tuple(t[:k]))] = coeff
    return SparseTensorMap(n, k, l, entries)


def xi_vector(p: Partition, n: int, twisted: bool = False) -> FixedVector:
    """Fixed vector of a partition without upper legs."""
    if p.upper != 0:
        raise FrameError("fixed vectors need a lower-row-only partition")
    m = t_map(p, n, twisted)
    return FixedVector(n, p.lower, {o: c for (o, _), c in m.entries.items()})


def inner_product(v: FixedVector, w: FixedVector) -> int:
    """Integer scalar product; equals N**|join| for partition vectors."""
    if (v.dim, v.arity) != (w.dim, w.arity):
        raise FrameError("inner product needs a common frame")
    small, big = (v.entries, w.entries) if len(v.entries) <= len(w.entries) else (w.entries, v.entries)
    return sum(c * big.get(t, 0) for t, c in small.items())


# ---------------------------------------------------------------------------
# categorical operations on the diagrams themselves


def tensor_concat(p: Partition, q: Partition) -> Partition:
    """Horizontal concatenation: q is placed to the right of p."""
    k, l = p.upper + q.upper, p.lower + q.lower

    def shift_q(leg: int) -> int:
        if leg < q.upper:
            return p.upper + leg
        return k + p.lower + (leg - q.upper)

    def shift_p(leg: int) -> int:
        if leg < p.upper:
            return leg
        return k + (leg - p.upper)

    blocks = [tuple(shift_p(x) for x in b) for b in p.blocks]
    blocks += [tuple(shift_q(x) for x in b) for b in q.blocks]
    colors = (p.colors[: p.upper] + q.colors[: q.upper]
              + p.colors[p.upper:] + q.colors[q.upper:])
    return Partition(k, l, tuple(blocks), colors)


def compose(p: Partition, q: Partition) -> tuple[Partition, int]:
    """Vertical composition: ``p`` on top of ``q``, gluing p's lower row to
    q's upper row.  Returns the composite and the number of closed loops
    (connected components living entirely in the glued middle row)."""
    if p.lower != q.upper:
        raise FrameError("middle arities do not match")
    if p.colors[p.upper:] != q.colors[: q.upper]:
        raise FrameError("middle colors do not match")
    k, mid, m = p.upper, p.lower, q.lower
    # nodes: 0..k-1 top, k..k+mid-1 middle, k+mid..k+mid+m-1 bottom
    parent = list(range(k + mid + m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for b in p.blocks:
        for x in b[1:]:
            union(b[0], x)
    offset = k  # q's upper leg j is middle node k + j
    for b in q.blocks:
        nodes = [offset + x if x < q.upper else k + mid + (x - q.upper) for x in b]
        for x in nodes[1:]:
            union(nodes[0], x)

    comps: dict[int, list[int]] = {}
    for node in range(k + mid + m):
        comps.setdefault(find(node), []).append(node)
    blocks = []
    loops = 0
    for comp in comps.values():
        outer = [x for x in comp if x < k or x >= k + mid]
        if not outer:
            loops += 1
            continue
        blocks.append(tuple(x if x < k else x - mid for x in outer))
    colors = p.colors[:k] + q.colors[q.upper:]
    return Partition(k, m, tuple(blocks), colors), loops


def involution(p: Partition) -> Partition:
    """Upside-down turn: rows exchanged, order within each row kept."""
    k, l = p.upper, p.lower
    blocks = tuple(tuple(x + l if x < k else x - k for x in b) for b in p.blocks)
    return Partition(l, k, blocks, p.colors[k:] + p.colors[:k])
