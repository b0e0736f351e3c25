import itertools

import numpy as np
import pytest

from ncspheres.errors import FrameError, PartitionClassError
from ncspheres.partitions import (
    PartitionClass,
    enumerate_partitions,
    join,
    parse_partition,
)
from ncspheres.tensors import (
    FixedVector,
    SparseTensorMap,
    compose,
    delta,
    inner_product,
    involution,
    t_map,
    tensor_concat,
    xi_vector,
)

P = parse_partition


def even_partitions(k, l):
    return enumerate_partitions(PartitionClass.P_EVEN, k, l)


# ---------------------------------------------------------------------------
# delta


def test_delta_crossing():
    cr = P("|abab")
    assert delta(cr, (1, 2, 1, 2), twisted=True) == -1
    assert delta(cr, (1, 1, 1, 1), twisted=True) == 1
    assert delta(cr, (1, 2, 1, 2), twisted=False) == 1
    assert delta(cr, (1, 2, 2, 1), twisted=False) == 0


def test_delta_frame_check():
    with pytest.raises(FrameError):
        delta(P("|abab"), (1, 2, 1))


# ---------------------------------------------------------------------------
# explicit twisted maps


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twisted_crossing_map(n):
    m = t_map(P("ab|ba"), n, twisted=True)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            expected = 1 if i == j else -1
            assert m.entries[((j, i), (i, j))] == expected
    assert len(m.entries) == n * n


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twisted_reversal_map(n):
    m = t_map(P("abc|cba"), n, twisted=True)
    for t in itertools.product(range(1, n + 1), repeat=3):
        i, j, k = t
        expected = -1 if len({i, j, k}) == 3 else 1
        assert m.entries[((k, j, i), (i, j, k))] == expected


def test_twist_trivial_on_noncrossing():
    for k in range(0, 5):
        for l in range(0, 9 - k):
            if (k + l) % 2 or k + l == 0 or k + l > 8:
                continue
            for p in enumerate_partitions(PartitionClass.NC_EVEN, k, l):
                for n in (2, 3):
                    assert t_map(p, n, twisted=True) == t_map(p, n, twisted=False)


def test_twisted_map_rejects_odd_blocks():
    with pytest.raises(PartitionClassError):
        t_map(P("abc|"), 2, twisted=True)


def test_sparsity_count():
    for p in even_partitions(2, 4):
        for n in (2, 3):
            assert len(t_map(p, n).entries) == n ** p.block_count


# ---------------------------------------------------------------------------
# fixed vectors and the scalar product law


def test_xi_crossing_vector():
    v = xi_vector(P("|abab"), 3, twisted=True)
    for i in range(1, 4):
        assert v.entries[(i, i, i, i)] == 1
        for j in range(1, 4):
            if i != j:
                assert v.entries[(i, j, i, j)] == -1
    assert len(v.entries) == 9


def test_xi_halfliberating_vector():
    v = xi_vector(P("|abcabc"), 3, twisted=True)
    for t in itertools.product(range(1, 4), repeat=3):
        i, j, k = t
        expected = -1 if len({i, j, k}) == 3 else 1
        assert v.entries[(i, j, k, i, j, k)] == expected


def test_xi_needs_lower_only():
    with pytest.raises(FrameError):
        xi_vector(P("a|a"), 2)


def brute_force_inner(p, q, n):
    # independent oracle: loop over all tuples, test block constancy by hand
    def entry(part, t):
        for b in part.blocks:
            if len({t[x] for x in b}) > 1:
                return 0
        return 1

    return sum(entry(p, t) * entry(q, t)
               for t in itertools.product(range(1, n + 1), repeat=p.n_legs))


def test_inner_product_frozen_example():
    # brute force gives 3 at N=3 for the untwisted pair below, equal to N**1
    p, q = P("|aabb"), P("|abab")
    assert brute_force_inner(p, q, 3) == 3
    assert inner_product(xi_vector(p, 3), xi_vector(q, 3)) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_scalar_product_law(n, m):
    parts = even_partitions(0, 2 * m)
    vecs_t = {p: xi_vector(p, n, twisted=True) for p in parts}
    vecs_u = {p: xi_vector(p, n, twisted=False) for p in parts}
    for p in parts:
        for q in parts:
            expected = n ** join(p, q).block_count
            assert inner_product(vecs_t[p], vecs_t[q]) == expected
            assert inner_product(vecs_u[p], vecs_u[q]) == expected


def test_diagonal_inner_product():
    for p in even_partitions(0, 4):
        v = xi_vector(p, 3, twisted=True)
        assert inner_product(v, v) == 3 ** p.block_count


# ---------------------------------------------------------------------------
# categorical operations


def test_tensor_concat_shapes_and_colors():
    assert tensor_concat(P("|aa"), P("|aa")) == P("|aabb")
    got = tensor_concat(P("a|a:o*"), P("|bb:**"))
    assert got == P("a|abb:o***")


def test_involution_examples():
    assert involution(P("|aa")) == P("aa|")
    for p in even_partitions(2, 4):
        assert involution(involution(p)) == p


def test_compose_loop_examples():
    out, loops = compose(P("|aa"), P("aa|"))
    assert out.n_legs == 0 and loops == 1
    out, loops = compose(P("a|a"), P("a|a"))
    assert out == P("a|a") and loops == 0


def test_compose_frame_errors():
    with pytest.raises(FrameError):
        compose(P("|aa"), P("abc|"))
    with pytest.raises(FrameError):
        compose(P("a|a:oo"), P("a|a:*o"))


def frames_even(max_rows):
    for k in range(max_rows + 1):
        for l in range(max_rows + 1):
            if (k + l) % 2 == 0:
                yield k, l


def test_functoriality_tensor():
    # T_p tensor T_q == T_{[pq]} exactly, twisted and untwisted, N <= 3
    small = [p for k, l in [(0, 2), (1, 1), (2, 0), (2, 2), (0, 4)]
             for p in even_partitions(k, l)]
    for p, q in itertools.product(small, repeat=2):
        for n in (2, 3):
            for tw in (False, True):
                lhs = t_map(p, n, tw).tensor(t_map(q, n, tw))
                rhs = t_map(tensor_concat(p, q), n, tw)
                assert lhs == rhs, (p, q, n, tw)


def test_functoriality_compose():
    # matrix identity T_q . T_p == N**loops T_{[p over q]} on all stackable
    # pairs with rows <= 3, N <= 3
    pool = {}
    for k, l in frames_even(3):
        pool[(k, l)] = even_partitions(k, l)
    for (k, l), ps in pool.items():
        for (l2, m), qs in pool.items():
            if l2 != l:
                continue
            for p, q in itertools.product(ps, qs):
                comp, loops = compose(p, q)
                for n in (2, 3):
                    for tw in (False, True):
                        prod = t_map(q, n, tw).matmul(t_map(p, n, tw))
                        target = t_map(comp, n, tw)
                        factor = n ** loops
                        assert prod == {key: factor * c for key, c in target.entries.items()}, \
                            (p, q, n, tw)


def test_functoriality_adjoint():
    for k, l in frames_even(3):
        for p in even_partitions(k, l):
            for n in (2, 3):
                for tw in (False, True):
                    assert t_map(p, n, tw).adjoint() == t_map(involution(p), n, tw)


# ---------------------------------------------------------------------------
# dense conversion and serialization


def test_dense_shape_and_values():
    m = t_map(P("ab|ba"), 2, twisted=True)
    dense = m.to_dense()
    assert dense.shape == (4, 4)
    # e_1 x e_2 -> -e_2 x e_1: column (1,2) -> code 0*2+1=1, row (2,1) -> 2
    assert dense[2, 1] == -1
    assert dense[0, 0] == 1


def test_json_roundtrip():
    m = t_map(P("ab|ba"), 3, twisted=True)
    again = SparseTensorMap.from_json(m.to_json())
    assert again == m


def test_json_is_sorted_and_stable():
    m = t_map(P("|abab"), 2, twisted=True)
    assert m.to_json() == m.to_json()
    data = m.to_json()
    assert data.index("[[1, 1, 1, 1]") < data.index("[[2, 2, 2, 2]")
