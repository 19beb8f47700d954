"""Slice mapping evaluation, two-slice reconstruction, slice derivatives,
per-slice holomorphy checks, and the holomorphic splitting over a module
basis.

A slice map sends x = alpha + J beta to F1(z) + J F2(z) with z = alpha +
i beta and (F1, F2) the even-odd pair of a stem series.  The two-slice
reconstruction recovers the value on any slice I from values on two
distinct slices J, K:

    f(alpha + beta I) = (I-K) ((J-K)^{-1} f(alpha+beta J))
                      - (I-J) ((J-K)^{-1} f(alpha+beta K))

with every product taken in the written order.
"""

from __future__ import annotations

import numpy as np

from .algebra import (
    CliffordElement,
    grades,
    left_matrix,
    mul_batch,
    mul_coeffs,
)
from .errors import BasisError, DimensionError, RepresentationError
from .series import StemSeries, _coeff_rows
from .slicespace import SliceOrbit, SlicePoint, make_point, orbit_point, vector_norm


class SliceMap:
    """Left slice mapping induced by a stem series."""

    def __init__(self, stem: StemSeries):
        self.stem = stem
        self.m = stem.m
        self.n = stem.n

    def eval(self, p: SlicePoint) -> list[CliffordElement]:
        f1, f2 = self.stem.eval(p.alpha, p.beta)
        return [a + p.J * b for a, b in zip(f1, f2)]

    def eval_arrays(self, alpha: np.ndarray, beta: np.ndarray,
                    j_rows: np.ndarray) -> np.ndarray:
        """Batched values F1 + J*F2, shape (B, n, dim); j_rows is (B, dim)
        or a single (dim,) row shared by the batch."""
        f1, f2 = self.stem.eval_arrays(alpha, beta)
        j_rows = np.atleast_2d(j_rows)
        out = np.empty_like(f1)
        for t in range(self.n):
            out[:, t, :] = f1[:, t, :] + mul_batch(self.m, j_rows, f2[:, t, :])
        return out

    def derivative(self, t: int) -> "SliceMap":
        return SliceMap(self.stem.derivative(t))

    def eval_orbit(self, o: SliceOrbit, J: CliffordElement) -> list[CliffordElement]:
        return self.eval(orbit_point(o, J))


class RawSliceMap:
    """Slice map built from an explicit even-odd pair of callables.

    f1_fn/f2_fn take (alpha, beta) arrays and return n Clifford values
    (elements or coefficient rows).  Lets the checks exercise slice
    mappings that are not series-built, e.g. non-holomorphic controls.
    """

    def __init__(self, m: int, n: int, f1_fn, f2_fn):
        self.m = m
        self.n = n
        self.f1_fn = f1_fn
        self.f2_fn = f2_fn

    def eval(self, p: SlicePoint) -> list[CliffordElement]:
        f1 = _coeff_rows(self.f1_fn(p.alpha, p.beta))
        f2 = _coeff_rows(self.f2_fn(p.alpha, p.beta))
        return [
            CliffordElement(self.m, a) + p.J * CliffordElement(self.m, b)
            for a, b in zip(f1, f2)
        ]

    def stem_eval(self, alpha, beta):
        return self.f1_fn(alpha, beta), self.f2_fn(alpha, beta)


def representation_formula(f, o: SliceOrbit, J: CliffordElement,
                           K: CliffordElement, I: CliffordElement,
                           cond_threshold: float = 1e-3) -> list[CliffordElement]:
    """Reconstruct f on slice I from its values on slices J and K.

    Rejects pairs whose difference J - K has a left operator with
    smallest singular value below cond_threshold, reporting the
    conditioning diagnostic in the raised error.
    """
    d = J - K
    svals = np.linalg.svd(left_matrix(d.m, d.coeffs), compute_uv=False)
    if svals[-1] < cond_threshold:
        raise RepresentationError(
            f"slice pair too close: sigma_min(J-K) = {svals[-1]:.3e} "
            f"< {cond_threshold:.0e}"
        )
    dinv = d.inverse()
    f_j = f.eval(orbit_point(o, J))
    f_k = f.eval(orbit_point(o, K))
    left_j = I - K
    left_k = I - J
    return [
        left_j * (dinv * fj) - left_k * (dinv * fk)
        for fj, fk in zip(f_j, f_k)
    ]


def two_slice_average(f, o: SliceOrbit, J: CliffordElement,
                      I: CliffordElement) -> list[CliffordElement]:
    """The K = -J specialization:
    (f(a+bJ) + f(a-bJ))/2 - (I/2) (J (f(a+bJ) - f(a-bJ)))."""
    f_j = f.eval(orbit_point(o, J))
    f_mj = f.eval(orbit_point(o, -J))
    out = []
    for vj, vm in zip(f_j, f_mj):
        out.append(0.5 * (vj + vm) - 0.5 * (I * (J * (vj - vm))))
    return out


def regularity_residual(f, p: SlicePoint, step: float = 1e-5) -> float:
    """Finite-difference defect of d f_I/d alpha_t + I d f_I/d beta_t at p.

    Vanishes (up to FD truncation) exactly when the restriction to the
    slice of p.J is holomorphic.  ``f`` needs only an ``eval`` method.
    """
    n = p.n
    worst = 0.0
    for t in range(n):
        shift = np.zeros(n)
        shift[t] = step
        va_p = f.eval(make_point(p.alpha + shift, p.beta, p.J))
        va_m = f.eval(make_point(p.alpha - shift, p.beta, p.J))
        vb_p = f.eval(make_point(p.alpha, p.beta + shift, p.J))
        vb_m = f.eval(make_point(p.alpha, p.beta - shift, p.J))
        defect = []
        for s in range(n):
            da = (va_p[s] - va_m[s]) / (2 * step)
            db = (vb_p[s] - vb_m[s]) / (2 * step)
            defect.append(da + p.J * db)
        worst = max(worst, vector_norm(defect))
    return worst


# ---------------------------------------------------------------------------
# complex identification of a slice and holomorphic splitting
# ---------------------------------------------------------------------------

def complex_on_slice(rows: np.ndarray, I: CliffordElement):
    """Project coefficient rows (..., dim) onto span{1, I}.

    Returns (complex array, max off-slice residual).  The projection is
    orthogonal in the coefficient inner product, for which 1 and any
    root of -1 are orthonormal.
    """
    rows = np.asarray(rows)
    re = rows[..., 0]
    im = rows @ I.coeffs
    resid = rows - re[..., None] * _unit_row(I.m) - im[..., None] * I.coeffs
    return re + 1j * im, float(np.max(np.abs(resid), initial=0.0))


def _unit_row(m: int) -> np.ndarray:
    row = np.zeros(1 << m)
    row[0] = 1.0
    return row


class ComplexSeries:
    """Multivariate power series with complex n-vector coefficients; the
    shadow of a stem series on one slice."""

    def __init__(self, kmat: np.ndarray, coeffs: np.ndarray):
        self.kmat = kmat          # (K, n) exponents
        self.coeffs = coeffs      # (K, n) complex

    @property
    def n(self) -> int:
        return self.kmat.shape[1]

    def eval(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        w = np.ones(self.kmat.shape[0], dtype=np.complex128)
        for t in range(self.n):
            exps = self.kmat[:, t]
            me = int(exps.max(initial=0))
            powers = np.empty(me + 1, dtype=np.complex128)
            powers[0] = 1.0
            for p in range(1, me + 1):
                powers[p] = powers[p - 1] * z[t]
            w = w * powers[exps]
        return w @ self.coeffs

    def derivative(self, t: int) -> "ComplexSeries":
        keep = self.kmat[:, t] >= 1
        kmat = self.kmat[keep].copy()
        coeffs = self.coeffs[keep] * kmat[:, t][:, None]
        kmat[:, t] -= 1
        return ComplexSeries(kmat, coeffs)

    def jacobian(self, z) -> np.ndarray:
        """Complex Jacobian matrix J[s, t] = d component_s / d z_t."""
        cols = [self.derivative(t).eval(z) for t in range(self.n)]
        return np.stack(cols, axis=1)


def slice_shadow(f: SliceMap, I: CliffordElement, tol: float = 1e-10):
    """Complex series of f restricted to the slice of I, plus the total
    off-slice coefficient residual (zero iff all coefficients lie in C_I)."""
    coeffs, resid = complex_on_slice(f.stem._amat, I)
    return ComplexSeries(f.stem._kmat.copy(), coeffs), resid


def default_module_basis(I: CliffordElement, tol: float = 1e-10) -> list[CliffordElement]:
    """Blade basis of the algebra as a left module over the slice of I.

    For a unit grade-1 direction I, extends it to an orthonormal frame of
    generator space and returns the 2**(m-1) blades built from the
    complementary frame vectors.  Raises BasisError otherwise (callers
    must pass an explicit completion).
    """
    m = I.m
    if m == 1:
        return [CliffordElement.scalar(1, 1.0)]
    g = grades(m)
    if np.max(np.abs(I.coeffs[g != 1]), initial=0.0) > tol:
        raise BasisError(
            "default module basis needs a grade-1 direction; "
            "pass an explicit completion"
        )
    v = I.coeffs[[1 << i for i in range(m)]]
    frame = np.concatenate([v[None, :], np.eye(m)], axis=0)
    q, _ = np.linalg.qr(frame.T)
    comp_vectors = [CliffordElement.from_vector(m, q[:, i]) for i in range(1, m)]
    basis = [CliffordElement.scalar(m, 1.0)]
    for vec in comp_vectors:
        basis = basis + [b * vec for b in basis]
    return basis


def split_components(f: SliceMap, I: CliffordElement, completion=None,
                     tol: float = 1e-10):
    """Split f_I into holomorphic complex series F_A with
    f_I(z) = sum_A F_A(z) I_A over a module basis {I_A}.

    Returns (components, basis) where components is a list of
    ComplexSeries aligned with basis.  Raises BasisError when the
    change-of-basis operator {I_A, I*I_A} is numerically singular.
    """
    m, dim = f.m, 1 << f.m
    basis = list(completion) if completion is not None else default_module_basis(I, tol)
    if len(basis) * 2 != dim:
        raise BasisError(
            f"module basis must have {dim // 2} elements, got {len(basis)}"
        )
    cols = []
    for b in basis:
        cols.append(b.coeffs)
        cols.append(mul_coeffs(m, I.coeffs, b.coeffs))
    bmat = np.stack(cols, axis=1)
    svals = np.linalg.svd(bmat, compute_uv=False)
    if svals[-1] <= 1e-10 * max(1.0, svals[0]):
        raise BasisError("completion is not a module basis (singular solve)")

    amat = f.stem._amat  # (K, n, dim)
    K, n = amat.shape[0], amat.shape[1]
    sol = np.linalg.solve(bmat, amat.reshape(K * n, dim).T).T.reshape(K, n, dim)
    components = []
    for a_idx in range(len(basis)):
        coeffs = sol[:, :, 2 * a_idx] + 1j * sol[:, :, 2 * a_idx + 1]
        components.append(ComplexSeries(f.stem._kmat.copy(), coeffs))
    return components, basis


def reassemble_on_slice(components, basis, I: CliffordElement, z) -> list[CliffordElement]:
    """Evaluate sum_A F_A(z) I_A as Clifford values on the slice of I."""
    m = I.m
    n = components[0].n
    acc = np.zeros((n, 1 << m))
    for comp, b in zip(components, basis):
        vals = comp.eval(z)
        scale = vals.real[:, None] * _unit_row(m) + vals.imag[:, None] * I.coeffs
        acc = acc + mul_batch(m, scale, b.coeffs)
    return [CliffordElement(m, row) for row in acc]


def well_defined_gap(f, p: SlicePoint) -> float:
    """Max difference between evaluating at (beta, J) and (-beta, -J)."""
    if not np.any(p.beta):
        return 0.0
    flipped = SlicePoint(p.alpha, _readonly(-np.asarray(p.beta)), -p.J)
    va = f.eval(p)
    vb = f.eval(flipped)
    return max(
        float(np.max(np.abs(a.coeffs - b.coeffs))) for a, b in zip(va, vb)
    )


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def check_dimensions(f: SliceMap, p: SlicePoint):
    if f.m != p.m or f.n != p.n:
        raise DimensionError(
            f"map is (m={f.m}, n={f.n}) but point is (m={p.m}, n={p.n})"
        )
