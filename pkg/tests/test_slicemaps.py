"""Slice map evaluation, two-slice reconstruction, holomorphy checks,
and the module-basis splitting."""

import numpy as np
import pytest

from slicegrowth.algebra import CliffordElement
from slicegrowth.errors import BasisError, RepresentationError
from slicegrowth.series import StemSeries, identity_map, koebe_map
from slicegrowth.slicemaps import (
    RawSliceMap,
    SliceMap,
    default_module_basis,
    reassemble_on_slice,
    regularity_residual,
    representation_formula,
    split_components,
    two_slice_average,
    well_defined_gap,
)
from slicegrowth.slicespace import (
    embed,
    make_orbit,
    make_point,
    orbit_point,
    sample_S,
)


def _rand_map(rng, m=3, n=2, degree=5, terms=8):
    table = {}
    for _ in range(terms):
        k = tuple(int(v) for v in rng.integers(0, degree + 1, size=n))
        if sum(k) <= degree:
            table[k] = rng.uniform(-1, 1, size=(n, 1 << m))
    return SliceMap(StemSeries(m, n, table))


def test_identity_map_evaluates_to_embedding():
    f = SliceMap(identity_map(3, 2))
    rng = np.random.default_rng(0)
    for _ in range(20):
        p = make_point(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), sample_S(rng, 3))
        vals = f.eval(p)
        for a, b in zip(vals, embed(p)):
            assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-14


def test_well_definedness_is_exact():
    rng = np.random.default_rng(1)
    f = _rand_map(rng)
    for _ in range(50):
        p = make_point(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), sample_S(rng, 3))
        assert well_defined_gap(f, p) == 0.0


def test_koebe_on_real_slice_axis():
    e1 = CliffordElement.generator(3, 1)
    f = SliceMap(koebe_map(0.0, e1, 300, 2))
    for x in (0.5, -0.7, 0.9):
        p = make_point([x, 0.0], [0.0, 0.0], e1)
        vals = f.eval(p)
        assert abs(vals[0].scalar_part - x / (1 - x) ** 2) < 1e-9


def test_representation_reconstructs_random_maps():
    rng = np.random.default_rng(2)
    f = _rand_map(rng)
    worst = 0.0
    for _ in range(50):
        o = make_orbit(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2))
        J, K, I = (sample_S(rng, 3) for _ in range(3))
        if (J - K).euclid_norm() < 1e-3:
            continue
        rec = representation_formula(f, o, J, K, I)
        direct = f.eval(orbit_point(o, I))
        worst = max(worst, max(np.max(np.abs(a.coeffs - b.coeffs))
                               for a, b in zip(rec, direct)))
    assert worst < 1e-10


def test_representation_collapse_and_average_form():
    rng = np.random.default_rng(3)
    f = _rand_map(rng)
    o = make_orbit([0.2, -0.6], [0.9, 0.4])
    J = CliffordElement.generator(3, 1)
    K = CliffordElement.generator(3, 2)
    I = sample_S(rng, 3)

    collapsed = representation_formula(f, o, J, K, J)
    direct = f.eval(orbit_point(o, J))
    for a, b in zip(collapsed, direct):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12

    avg = two_slice_average(f, o, J, I)
    on_i = f.eval(orbit_point(o, I))
    for a, b in zip(avg, on_i):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-11

    # the averaged form is the K = -J specialization of the reconstruction
    rec = representation_formula(f, o, J, -J, I)
    for a, b in zip(rec, avg):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-11


def test_representation_rejects_close_pair():
    rng = np.random.default_rng(4)
    f = _rand_map(rng)
    o = make_orbit([0.1, 0.1], [0.5, -0.2])
    J = CliffordElement.generator(3, 1)
    with pytest.raises(RepresentationError):
        representation_formula(f, o, J, J, sample_S(rng, 3))
    nudged = CliffordElement.from_vector(3, [np.sqrt(1 - 1e-9), np.sqrt(1e-9), 0.0])
    with pytest.raises(RepresentationError):
        representation_formula(f, o, J, nudged, sample_S(rng, 3))


def test_two_pair_independence():
    rng = np.random.default_rng(5)
    f = _rand_map(rng)
    o = make_orbit([0.3, -0.2], [0.8, 0.1])
    I = sample_S(rng, 3)
    recs = []
    for _ in range(4):
        J, K = sample_S(rng, 3), sample_S(rng, 3)
        if (J - K).euclid_norm() < 1e-2:
            continue
        recs.append(representation_formula(f, o, J, K, I))
    for other in recs[1:]:
        for a, b in zip(recs[0], other):
            assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-9


def test_derivative_commutes_with_reconstruction():
    rng = np.random.default_rng(6)
    f = _rand_map(rng)
    o = make_orbit([0.4, 0.2], [0.3, -0.5])
    J = CliffordElement.generator(3, 2)
    K = CliffordElement.generator(3, 3)
    I = sample_S(rng, 3)
    df = f.derivative(1)
    rec_of_deriv = representation_formula(df, o, J, K, I)
    direct = df.eval(orbit_point(o, I))
    for a, b in zip(rec_of_deriv, direct):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-8


def test_jacobian_of_koebe_at_origin_is_identity():
    e1 = CliffordElement.generator(2, 1)
    f = SliceMap(koebe_map(0.9, e1, 60, 2))
    origin = make_point([0.0, 0.0], [0.0, 0.0], e1)
    for s in range(2):
        row = f.derivative(s).eval(origin)
        for t in range(2):
            expected = CliffordElement.scalar(2, 1.0 if s == t else 0.0)
            assert row[t].isclose(expected, 1e-12)


def test_slice_derivative_matches_finite_differences():
    rng = np.random.default_rng(7)
    f = _rand_map(rng, m=2)
    d0 = f.derivative(0)
    J = sample_S(rng, 2)
    h = 1e-5
    p = make_point([0.3, -0.2], [0.1, 0.25], J)
    plus = f.eval(make_point(p.alpha + [h, 0], p.beta, J))
    minus = f.eval(make_point(p.alpha - [h, 0], p.beta, J))
    exact = d0.eval(p)
    for t in range(2):
        fd = (plus[t].coeffs - minus[t].coeffs) / (2 * h)
        assert np.max(np.abs(fd - exact[t].coeffs)) < 1e-7


def test_regularity_residuals():
    rng = np.random.default_rng(8)
    f = _rand_map(rng, m=2)
    p = make_point([0.2, -0.1], [0.3, 0.15], sample_S(rng, 2))
    assert regularity_residual(f, p) < 1e-7

    const = SliceMap(StemSeries(2, 2, {(0, 0): rng.uniform(-1, 1, (2, 4))}))
    assert regularity_residual(const, p) < 1e-14

    control = RawSliceMap(
        2, 2,
        lambda a, b: [[a[0], 0, 0, 0], [0, 0, 0, 0]],
        lambda a, b: np.zeros((2, 4)),
    )
    assert regularity_residual(control, p) > 0.1


def test_split_single_component_for_m1():
    rng = np.random.default_rng(9)
    f = _rand_map(rng, m=1, n=2, degree=3, terms=5)
    e1 = CliffordElement.generator(1, 1)
    comps, basis = split_components(f, e1)
    assert len(comps) == 1 and basis[0] == CliffordElement.scalar(1, 1.0)
    z = np.array([0.3 + 0.2j, -0.1 + 0.4j])
    direct = f.eval(make_point(z.real, z.imag, e1))
    rebuilt = reassemble_on_slice(comps, basis, e1, z)
    for a, b in zip(rebuilt, direct):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12


def test_split_koebe_concentrates_on_slice():
    # coefficients live in span{1, e1}: only the unit-blade component survives
    m = 2
    e1 = CliffordElement.generator(m, 1)
    f = SliceMap(koebe_map(0.7, e1, 40, 1))
    comps, basis = split_components(f, e1, completion=[
        CliffordElement.scalar(m, 1.0), CliffordElement.generator(m, 2)])
    assert np.max(np.abs(comps[1].coeffs)) < 1e-12
    assert np.max(np.abs(comps[0].coeffs)) > 0.5


def test_split_reassembles_generic_map():
    rng = np.random.default_rng(10)
    for m in (2, 3):
        f = _rand_map(rng, m=m)
        i_elem = CliffordElement.from_vector(
            m, (lambda v: v / np.linalg.norm(v))(rng.normal(size=m)))
        comps, basis = split_components(f, i_elem)
        assert len(comps) == 1 << (m - 1)
        for _ in range(25):
            z = rng.uniform(-0.8, 0.8, 2) + 1j * rng.uniform(-0.8, 0.8, 2)
            rebuilt = reassemble_on_slice(comps, basis, i_elem, z)
            direct = f.eval(make_point(z.real, z.imag, i_elem))
            for a, b in zip(rebuilt, direct):
                assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-10


def test_split_rejects_degenerate_completion():
    rng = np.random.default_rng(11)
    f = _rand_map(rng, m=2)
    e1 = CliffordElement.generator(2, 1)
    with pytest.raises(BasisError):
        split_components(f, e1, completion=[
            CliffordElement.scalar(2, 1.0), e1])  # {1, I} is not a module basis
    with pytest.raises(BasisError):
        split_components(f, e1, completion=[CliffordElement.scalar(2, 1.0)])


def test_default_module_basis_requires_vector_direction():
    with pytest.raises(BasisError):
        default_module_basis(CliffordElement.blade(2, (1, 2)))
    basis = default_module_basis(CliffordElement.from_vector(3, [0.6, 0.0, 0.8]))
    assert len(basis) == 4
