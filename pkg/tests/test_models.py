import itertools

import numpy as np
import pytest

from ncspheres.errors import DomainError, FrameError, SizeLimitError
from ncspheres.models import (
    MatrixModel,
    PointModel,
    antidiagonal_model,
    antidiagonal_pair_model,
    check_fixed_vector_identity,
    check_intertwiner,
    check_sphere_relations,
    clifford_model,
    coaction_check,
    enumerate_signed_permutations,
    haar_moment_mc,
    haar_orthogonal,
    haar_unitary,
    sample_classical_point,
    sqrt_positive_model,
    twisted_classical_points,
)
from ncspheres.partitions import PartitionClass, enumerate_partitions, parse_partition
from ncspheres.relations import monomial_system, saturate
from ncspheres.weingarten import Field, category_pairings, group_by_name, sphere_by_name

P = parse_partition
TOL = 1e-10


# ---------------------------------------------------------------------------
# point constructors


def test_classical_point_is_deterministic_and_normalized():
    a = sample_classical_point(Field.REAL, 5, seed=42)
    b = sample_classical_point(Field.REAL, 5, seed=42)
    assert a == b
    assert a.norm_defect() < 1e-12
    assert all(abs(z.imag) == 0 for z in a.coordinates)
    c = sample_classical_point(Field.COMPLEX, 5, seed=42)
    assert c.norm_defect() < 1e-12


def test_point_at_n_equals_one():
    p = sample_classical_point(Field.REAL, 1, seed=7)
    assert abs(abs(p.coordinates[0]) - 1) < 1e-12


def test_twisted_point_families():
    real = twisted_classical_points(Field.REAL, 3)
    assert len(real) == 6
    for p in real:
        assert not check_sphere_relations(p, sphere_by_name("bar_s_r"), TOL)
    cplx = twisted_classical_points(Field.COMPLEX, 2)
    for p in cplx:
        assert not check_sphere_relations(p, sphere_by_name("bar_s_c"), TOL)


def test_generic_point_fails_twisted_relations():
    bad = PointModel((2 ** -0.5 + 0j, 2 ** -0.5 + 0j))
    assert check_sphere_relations(bad, sphere_by_name("bar_s_r"), TOL)


# ---------------------------------------------------------------------------
# matrix models


def test_antidiagonal_model_half_commutes():
    z = sample_classical_point(Field.COMPLEX, 3, seed=9)
    m = antidiagonal_model(z)
    assert m.d == 2
    assert not check_sphere_relations(m, sphere_by_name("s_r_star"), TOL)
    comms = [
        np.abs(m.coordinates[i] @ m.coordinates[j] - m.coordinates[j] @ m.coordinates[i]).max()
        for i, j in itertools.combinations(range(3), 2)
    ]
    assert max(comms) > 0.01  # a proper witness: no commutation


def test_antidiagonal_over_twisted_point_is_twisted_half():
    z = twisted_classical_points(Field.COMPLEX, 3)[1]
    m = antidiagonal_model(z)
    assert not check_sphere_relations(m, sphere_by_name("bar_s_r_star"), TOL)


def test_antidiagonal_pair_model_complex_half():
    a = sample_classical_point(Field.COMPLEX, 3, seed=1).coordinates
    b = sample_classical_point(Field.COMPLEX, 3, seed=2).coordinates
    m = antidiagonal_pair_model(a, b)
    assert not check_sphere_relations(m, sphere_by_name("s_c_star2"), TOL)
    with pytest.raises(FrameError):
        antidiagonal_pair_model(a, b[:2])


def test_clifford_models():
    for n in (2, 3, 4):
        m = clifford_model(n)
        assert not check_sphere_relations(m, sphere_by_name("bar_s_r"), TOL)
    phases = (1.0, np.exp(0.3j), np.exp(1.1j))
    z = clifford_model(3, phases=phases)
    assert not check_sphere_relations(z, sphere_by_name("bar_s_c"), TOL)
    with pytest.raises(DomainError):
        clifford_model(2, phases=(2.0, 1.0))


def test_sqrt_positive_model():
    w = np.exp(2j * np.pi / 3)
    model, comms = sqrt_positive_model(
        (1 / 3, 1 / 3, 1 / 3), (1 / 3, 1 / 3, 1 / 3), (0.1, 0.1 * w, 0.1 * w ** 2)
    )
    assert model.quadratic_defect() < 1e-10
    assert all(np.abs(x - x.conj().T).max() < 1e-12 for x in model.coordinates)
    assert all(c > 1e-3 for c in comms)  # the squares genuinely do not commute
    assert not check_sphere_relations(model, sphere_by_name("s_r_plus"), TOL)


def test_sqrt_positive_degenerate_input():
    model, comms = sqrt_positive_model(
        (1 / 3, 1 / 3, 1 / 3), (1 / 3, 1 / 3, 1 / 3), (0, 0, 0)
    )
    assert max(comms) < 1e-14  # diagonal Y_i commute: not a properness witness
    with pytest.raises(DomainError):
        sqrt_positive_model((0.9, 0.05, 0.05), (1 / 3, 1 / 3, 1 / 3), (0.4, -0.2, -0.2))


def test_enumerate_signed_permutations():
    assert len(enumerate_signed_permutations(2)) == 8
    assert len(enumerate_signed_permutations(3)) == 48
    for g in enumerate_signed_permutations(2):
        m = g.matrix()
        assert np.abs(m @ m.conj().T - np.eye(2)).max() < 1e-12
    with pytest.raises(SizeLimitError):
        enumerate_signed_permutations(5)


# ---------------------------------------------------------------------------
# every preset model passes its own sphere


def test_models_match_their_spheres():
    cases = [
        (sample_classical_point(Field.REAL, 3, 0), "s_r"),
        (sample_classical_point(Field.COMPLEX, 3, 0), "s_c"),
        (twisted_classical_points(Field.REAL, 3)[2], "bar_s_r"),
        (twisted_classical_points(Field.COMPLEX, 3)[5], "bar_s_c"),
        (antidiagonal_model(sample_classical_point(Field.COMPLEX, 3, 1)), "s_r_star"),
        (clifford_model(3), "bar_s_r"),
    ]
    for model, name in cases:
        assert not check_sphere_relations(model, sphere_by_name(name), TOL)


# ---------------------------------------------------------------------------
# intertwiners


def test_signed_permutations_intertwine_twisted_diagrams():
    crossing, reversal = P("ab|ba"), P("abc|cba")
    for n in (2, 3):
        for g in enumerate_signed_permutations(n):
            u = g.matrix()
            assert check_intertwiner(crossing, u, twisted=True, tol=TOL)
            assert check_intertwiner(reversal, u, twisted=True, tol=TOL)


def test_haar_orthogonal_intertwines_untwisted_not_twisted():
    crossing = P("ab|ba")
    for u in haar_orthogonal(3, 20, seed=123):
        assert check_intertwiner(crossing, u, twisted=False, tol=1e-8)
        assert not check_intertwiner(crossing, u, twisted=True, tol=1e-8)


def test_unitary_intertwines_colored_pairing():
    # the cap joining z to z* is invariant under any unitary
    cap = P("|aa:o*")
    for u in haar_unitary(3, 5, seed=5):
        assert check_intertwiner(cap, u, twisted=False, tol=1e-8)


# ---------------------------------------------------------------------------
# Monte Carlo moments


def test_mc_orthogonal_u11_squared():
    est, se = haar_moment_mc("orthogonal", 4, [(1, 1, "1")] * 2, samples=20000, seed=1)
    assert abs(est - 0.25) < 3 * se


def test_mc_orthogonal_u11_fourth():
    est, se = haar_moment_mc("orthogonal", 3, [(1, 1, "1")] * 4, samples=50000, seed=2)
    assert abs(est - 0.2) < 3 * se


def test_exact_hyperoctahedral_and_kn():
    est, se = haar_moment_mc("hyperoctahedral", 2, [(1, 1, "1"), (1, 2, "1")])
    assert est == 0.0 and se == 0.0
    est, _ = haar_moment_mc("k_n", 3, [(1, 1, "1"), (1, 1, "*")])
    assert abs(est - 1 / 3) < 1e-14
    est, _ = haar_moment_mc("k_n", 3, [(1, 1, "1"), (1, 1, "1")])
    assert est == 0.0  # unbalanced phases integrate to zero


def test_mc_unitary_balanced_word():
    est, se = haar_moment_mc("unitary", 3, [(1, 1, "1"), (1, 1, "*")],
                             samples=20000, seed=3)
    assert abs(est - 1 / 3) < 3 * se


def test_mc_sweep_matches_exact_moments():
    # one shared Haar batch per dimension, evaluated against the exact
    # Weingarten moments for a sweep of words up to degree six
    from ncspheres.weingarten import GroupSpec, Level, moment

    real = GroupSpec(Field.REAL, Level.CLASSICAL)
    words = []
    for k in (2, 4):
        for i in itertools.product((1, 2), repeat=k):
            for j in itertools.product((1, 2), repeat=k):
                words.append((i, j))
    words += [
        ((1,) * 6, (1,) * 6),
        ((1, 1, 1, 1, 1, 1), (1, 1, 2, 2, 3, 3)),
        ((1, 2, 1, 2, 1, 2), (1, 2, 1, 2, 1, 2)),
        ((1, 1, 2, 2, 3, 3), (1, 1, 1, 1, 1, 1)),
    ]
    for n in (3, 4):
        batch = haar_orthogonal(n, 40000, seed=100 + n)
        for i, j in words:
            vals = np.ones(batch.shape[0])
            for a, b in zip(i, j):
                vals = vals * batch[:, a - 1, b - 1]
            est = vals.mean()
            se = vals.std(ddof=1) / np.sqrt(len(vals))
            exact = float(moment(real, n, i, j))
            assert abs(est - exact) <= max(3 * se, 1e-12), (i, j, n, est, exact)


# ---------------------------------------------------------------------------
# fixed-vector identity


def test_fixed_vector_identity_classical_points():
    for seed in range(5):
        pt = sample_classical_point(Field.REAL, 3, seed)
        for l in (2, 4, 6):
            for p in enumerate_partitions(PartitionClass.P2, 0, l):
                assert check_fixed_vector_identity(p, pt, twisted=False) < TOL


def test_fixed_vector_identity_twisted_points():
    crossing = P("|abab")
    for pt in twisted_classical_points(Field.REAL, 3):
        assert check_fixed_vector_identity(crossing, pt, twisted=True) < 1e-14


def test_fixed_vector_identity_clifford():
    m = clifford_model(3)
    for l in (2, 4, 6):
        for p in enumerate_partitions(PartitionClass.P2, 0, l):
            assert check_fixed_vector_identity(p, m, twisted=True) < TOL


def test_fixed_vector_identity_colored_points():
    g = group_by_name("u_n")
    z = sample_classical_point(Field.COMPLEX, 3, seed=8)
    for p in category_pairings(g, alpha="1*1*"):
        assert check_fixed_vector_identity(p, z, twisted=False) < TOL


def test_fixed_vector_needs_lower_frame():
    with pytest.raises(FrameError):
        check_fixed_vector_identity(P("a|a"), sample_classical_point(Field.REAL, 2, 0))


# ---------------------------------------------------------------------------
# coactions


def test_coaction_signed_permutation_preserves_twisted_points():
    sphere = sphere_by_name("bar_s_r")
    pts = twisted_classical_points(Field.REAL, 3)
    for g in enumerate_signed_permutations(3)[:12]:
        for pt in pts:
            assert coaction_check(g, pt, sphere)


def test_coaction_orthogonal_on_classical_point():
    sphere = sphere_by_name("s_r")
    pt = sample_classical_point(Field.REAL, 3, seed=3)
    for u in haar_orthogonal(3, 5, seed=4):
        assert coaction_check(u, pt, sphere)


def test_coaction_signed_permutation_on_clifford():
    sphere = sphere_by_name("bar_s_r")
    m = clifford_model(3)
    for g in enumerate_signed_permutations(3)[:8]:
        assert coaction_check(g, m, sphere)


# ---------------------------------------------------------------------------
# saturation soundness against matrix models


def _eval_schema(schema, model):
    mats = model.as_matrices()
    d = mats[0].shape[0]
    n = model.n
    worst = 0.0
    blocks = sorted(set(b for b, _ in schema.lhs.letters))
    for values in itertools.permutations(range(n), len(blocks)):
        assign = dict(zip(blocks, values))
        lhs = np.eye(d, dtype=complex)
        for b, star in schema.lhs.letters:
            m = mats[assign[b]]
            lhs = lhs @ (m.conj().T if star else m)
        rhs = np.eye(d, dtype=complex)
        for b, star in schema.rhs.letters:
            m = mats[assign[b]]
            rhs = rhs @ (m.conj().T if star else m)
        worst = max(worst, float(np.abs(lhs - schema.sign * rhs).max()))
    return worst


def test_saturated_schemas_hold_in_models():
    # one-sided soundness: anything the engine derives must hold in any
    # model of the base system
    cases = [
        (monomial_system([(3, 1, 2)], Field.REAL, False),
         PointModel(tuple(sample_classical_point(Field.REAL, 3, 11).coordinates))),
        (monomial_system([(3, 1, 2)], Field.REAL, True), clifford_model(3)),
        (monomial_system([(2, 1)], Field.REAL, True), clifford_model(3)),
        (monomial_system([(3, 2, 1)], Field.REAL, False),
         antidiagonal_model(sample_classical_point(Field.COMPLEX, 3, 12))),
        (monomial_system([(3, 1, 2)], Field.COMPLEX, True),
         clifford_model(3, phases=(1.0, 1j, np.exp(0.4j)))),
    ]
    for system, model in cases:
        result = saturate(system)
        assert result.schemas, "expected nontrivial derivations"
        for schema in result.schemas:
            assert _eval_schema(schema, model) < 1e-10, schema.literal()
