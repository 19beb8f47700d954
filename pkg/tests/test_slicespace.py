"""Slice coordinates: canonical form, embedding round trips, sampling."""

import numpy as np
import pytest

from slicegrowth.algebra import CliffordElement, in_sqrt_minus_one
from slicegrowth.errors import ConeError, SamplingError, SliceMismatchError
from slicegrowth.slicespace import (
    anticommuting_unit,
    circle_rotate,
    decompose,
    embed,
    is_paravector_slice,
    make_orbit,
    make_point,
    orbit_point,
    point_norm,
    sample_S,
    sample_S_batch,
    vector_norm,
)


def test_embed_real_point():
    p = make_point([1.0, 0.0], [0.0, 0.0], CliffordElement.generator(2, 1))
    xs = embed(p)
    assert xs[0] == CliffordElement.scalar(2, 1.0)
    assert xs[1] == CliffordElement.zero(2)


def test_embed_imaginary_component():
    p = make_point([0.0, 0.0], [1.0, 0.0], CliffordElement.generator(2, 2))
    xs = embed(p)
    assert xs[0] == CliffordElement.generator(2, 2)
    assert xs[1] == CliffordElement.zero(2)


def test_decompose_example():
    e1 = CliffordElement.generator(2, 1)
    x = [1.0 + e1, 2.0 * e1]
    p = decompose(x)
    np.testing.assert_allclose(p.alpha, [1.0, 0.0])
    np.testing.assert_allclose(p.beta, [1.0, 2.0])
    assert p.J == e1


def test_decompose_no_common_slice():
    with pytest.raises(SliceMismatchError):
        decompose([CliffordElement.generator(2, 1),
                   CliffordElement.generator(2, 2)])


def test_decompose_real_components_join_any_slice():
    e2 = CliffordElement.generator(3, 2)
    p = decompose([CliffordElement.scalar(3, 2.0), 0.5 + 3.0 * e2])
    np.testing.assert_allclose(p.alpha, [2.0, 0.5])
    np.testing.assert_allclose(p.beta, [0.0, 3.0])
    assert p.J == e2
    # an all-real vector lands on the canonical slice with zero beta
    q = decompose([CliffordElement.scalar(3, 1.0), CliffordElement.scalar(3, -4.0)])
    assert q.J == CliffordElement.generator(3, 1)
    assert not np.any(q.beta)


def test_decompose_outside_cone():
    bad = CliffordElement.generator(3, 1) + CliffordElement.blade(3, (1, 2, 3))
    with pytest.raises(ConeError):
        decompose([bad, CliffordElement.zero(3)])


def test_embed_decompose_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(100):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 4))
        j = sample_S(rng, m)
        p = make_point(rng.uniform(-2, 2, n), rng.uniform(-2, 2, n), j)
        q = decompose(embed(p))
        np.testing.assert_allclose(q.alpha, p.alpha, atol=1e-12)
        np.testing.assert_allclose(q.beta, p.beta, atol=1e-12)
        assert np.max(np.abs(q.J.coeffs - p.J.coeffs)) < 1e-12


def test_canonicalization_folds_sign():
    j = CliffordElement.from_vector(2, [-1.0, 0.0])  # first coeff negative
    p = make_point([0.5], [1.0], j)
    q = make_point([0.5], [-1.0], -j)
    np.testing.assert_allclose(p.beta, q.beta)
    assert p.J == q.J
    # canonical form is idempotent
    r = make_point(p.alpha, p.beta, p.J)
    assert r.J == p.J and np.array_equal(r.beta, p.beta)


def test_real_point_pins_canonical_slice():
    j = CliffordElement.from_vector(3, [0.0, 1.0, 0.0])
    p = make_point([1.0, 2.0], [0.0, 0.0], j)
    assert p.J == CliffordElement.generator(3, 1)


def test_point_norm_examples():
    j = CliffordElement.from_vector(2, [0.6, 0.8])
    p = make_point([3.0, 0.0], [4.0, 0.0], j)
    assert point_norm(p) == pytest.approx(5.0, abs=1e-12)
    origin = make_point([0.0], [0.0], CliffordElement.generator(2, 1))
    assert point_norm(origin) == 0.0


def test_point_norm_independent_of_slice():
    rng = np.random.default_rng(5)
    o = make_orbit([0.3, -1.2], [0.7, 0.4])
    values = []
    for _ in range(100):
        j = sample_S(rng, 3)
        values.append(point_norm(orbit_point(o, j)))
    assert max(values) - min(values) < 1e-12


def test_orbit_point_real_orbit():
    o = make_orbit([1.0, -2.0], [0.0, 0.0])
    for j in (CliffordElement.generator(2, 1), CliffordElement.generator(2, 2)):
        p = orbit_point(o, j)
        np.testing.assert_allclose(p.alpha, [1.0, -2.0])
        assert not np.any(p.beta)


def test_orbit_opposite_slices_fold():
    o = make_orbit([0.1], [0.9])
    j = CliffordElement.from_vector(2, [1.0, 0.0])
    a = orbit_point(o, j)
    b = orbit_point(o, -j)
    # embedded points differ, canonical slices agree up to the beta sign
    assert a.J == b.J
    np.testing.assert_allclose(a.beta, -b.beta)


def test_sample_vector_strategy_always_root():
    rng = np.random.default_rng(11)
    for m in (1, 2, 3, 5):
        rows = sample_S_batch(rng, m, 500)
        for row in rows[:50]:
            assert in_sqrt_minus_one(CliffordElement(m, row), 1e-10)
        norms = np.linalg.norm(rows, axis=1)
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)


def test_sample_m1_is_pm_e1():
    rng = np.random.default_rng(2)
    e1 = CliffordElement.generator(1, 1)
    for _ in range(20):
        j = sample_S(rng, 1)
        assert j.isclose(e1, 1e-12) or j.isclose(-e1, 1e-12)


def test_sample_rejection_m2():
    rng = np.random.default_rng(4)
    one = CliffordElement.scalar(2, 1.0)
    saw_bivector = False
    for _ in range(50):
        j = sample_S(rng, 2, strategy="rejection")
        sq = j * j
        assert sq.isclose(-one, 1e-10)
        if abs(j.coeffs[3]) > 0.3:
            saw_bivector = True
    assert saw_bivector  # rejection reaches outside the paravector sphere


def test_sample_rejection_m3_exhausts_budget():
    rng = np.random.default_rng(6)
    with pytest.raises(SamplingError):
        sample_S(rng, 3, strategy="rejection", max_tries=50)


def test_circle_rotate_identity_and_half_turn():
    p = make_point([0.4, -0.2], [0.1, 0.3], CliffordElement.generator(2, 2))
    q = circle_rotate(p, 0.0)
    np.testing.assert_allclose(q.alpha, p.alpha, atol=1e-12)
    np.testing.assert_allclose(q.beta, p.beta, atol=1e-12)

    real = make_point([0.7, -0.5], [0.0, 0.0], CliffordElement.generator(2, 1))
    half = circle_rotate(real, np.pi)
    np.testing.assert_allclose(half.alpha, [-0.7, 0.5], atol=1e-12)
    np.testing.assert_allclose(half.beta, [0.0, 0.0], atol=1e-12)


def test_circle_rotate_preserves_norm_and_composes():
    rng = np.random.default_rng(8)
    p = make_point(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), sample_S(rng, 3))
    for theta in (0.3, 1.2, 2.9):
        q = circle_rotate(p, theta)
        assert point_norm(q) == pytest.approx(point_norm(p), abs=1e-12)
    t1, t2 = 0.7, -1.1
    once = circle_rotate(p, t1 + t2)
    twice = circle_rotate(circle_rotate(p, t1), t2)
    for a, b in zip(embed(once), embed(twice)):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12


def test_is_paravector_slice():
    assert is_paravector_slice(
        make_point([0.0], [1.0], CliffordElement.generator(2, 1)))
    assert not is_paravector_slice(
        make_point([0.0], [1.0], CliffordElement.blade(2, (1, 2))))
    rng = np.random.default_rng(9)
    for _ in range(30):
        assert is_paravector_slice(make_point([0.1], [1.0], sample_S(rng, 4)))


def test_vector_norm_stacks_coefficients():
    e1 = CliffordElement.generator(2, 1)
    assert vector_norm([3.0 + 0.0 * e1, 4.0 * e1]) == pytest.approx(5.0)


def test_anticommuting_unit_families():
    rng = np.random.default_rng(12)
    cases = [
        CliffordElement.generator(3, 1),
        CliffordElement.from_vector(3, np.array([0.6, 0.0, 0.8])),
        CliffordElement.blade(2, (1, 2)),
        sample_S(rng, 2, strategy="rejection"),
    ]
    for i_elem in cases:
        perp = anticommuting_unit(i_elem, rng)
        m = i_elem.m
        assert in_sqrt_minus_one(perp, 1e-9)
        anti = i_elem * perp + perp * i_elem
        assert np.max(np.abs(anti.coeffs)) < 1e-9
        assert abs(np.dot(perp.coeffs, i_elem.coeffs)) < 1e-9
        # the u-sweep stays on the sphere of roots of -1
        for u in (-1.0, -0.4, 0.0, 0.8, 1.0):
            j = u * i_elem + np.sqrt(1 - u ** 2) * perp
            assert in_sqrt_minus_one(j, 1e-9)
    with pytest.raises(SamplingError):
        anticommuting_unit(CliffordElement.generator(1, 1), rng)


def test_point_json_roundtrip():
    p = make_point([0.25, -1.5], [0.5, 2.0], CliffordElement.generator(2, 2))
    from slicegrowth.slicespace import SlicePoint
    q = SlicePoint.from_json(p.to_json())
    np.testing.assert_allclose(q.alpha, p.alpha)
    np.testing.assert_allclose(q.beta, p.beta)
    assert q.J == p.J
