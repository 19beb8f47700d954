"""Holomorphic stem series and the one-variable star-product algebra.

A stem series F(z) = sum_k z^k a_k has complex-scalar monomials z^k and
Clifford-vector coefficients a_k; because the coefficients are real
Clifford values, F(conj z) = conj(F(z)) holds identically and the induced
slice mapping is well defined.  The star product realizes the standard
non-commutative Cauchy convolution on one-variable series (coefficients
on the right of the powers), which is what expressions like
x (1 - x e^{I theta})^{-*2} presume.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .algebra import CliffordElement, mul_coeffs, mul_batch, slice_exp
from .errors import DimensionError, NonInvertibleError

_EVAL_CHUNK = 4096


class StemSeries:
    """Finite multivariate power series with Clifford-vector coefficients.

    terms maps a multi-index (tuple of n non-negative ints) to an (n, 2**m)
    coefficient array or a sequence of n CliffordElements.  An optional
    tail_model(r) upper-bounds the norm of the dropped analytic tail on
    the closed polydisc of radius r (None means the series is exact).
    """

    def __init__(self, m: int, n: int, terms: dict, degree: Optional[int] = None,
                 tail_model: Optional[Callable[[float], float]] = None):
        self.m = m
        self.n = n
        dim = 1 << m
        keys = sorted(terms)
        rows = []
        for k in keys:
            if len(k) != n or any(e < 0 for e in k):
                raise DimensionError(f"bad multi-index {k} for n={n}")
            coeff = terms[k]
            if isinstance(coeff, (list, tuple)):
                coeff = np.stack([
                    c.coeffs if isinstance(c, CliffordElement) else np.asarray(c, float)
                    for c in coeff
                ])
            else:
                coeff = np.asarray(coeff, dtype=np.float64)
            if coeff.shape != (n, dim):
                raise DimensionError(
                    f"coefficient for {k} has shape {coeff.shape}, want {(n, dim)}"
                )
            rows.append(coeff)
        self._keys = keys
        self._kmat = (
            np.array(keys, dtype=np.int64).reshape(len(keys), n)
            if keys else np.zeros((0, n), dtype=np.int64)
        )
        self._amat = (
            np.stack(rows) if rows else np.zeros((0, n, dim))
        )
        self._aflat = self._amat.reshape(len(keys), n * dim)
        self.degree = degree if degree is not None else (
            int(self._kmat.sum(axis=1).max()) if keys else 0
        )
        self.tail_model = tail_model

    @property
    def dim(self) -> int:
        return 1 << self.m

    def multi_indices(self):
        return list(self._keys)

    def coefficient(self, k) -> list[CliffordElement]:
        k = tuple(k)
        try:
            pos = self._keys.index(k)
        except ValueError:
            return [CliffordElement.zero(self.m) for _ in range(self.n)]
        return [CliffordElement(self.m, row) for row in self._amat[pos]]

    # -- evaluation -----------------------------------------------------------

    def eval_arrays(self, alpha: np.ndarray, beta: np.ndarray):
        """Vectorized evaluation at z = alpha + i beta.

        alpha, beta: (B, n).  Returns (F1, F2) with shape (B, n, 2**m).
        Powers are built by cumulative products, so conjugating z flips
        the sign of F2 bit-for-bit (the even-odd pair identity is exact).
        """
        alpha = np.atleast_2d(np.asarray(alpha, dtype=np.float64))
        beta = np.atleast_2d(np.asarray(beta, dtype=np.float64))
        B = alpha.shape[0]
        K = self._kmat.shape[0]
        dim = self.dim
        if K == 0:
            z = np.zeros((B, self.n, dim))
            return z, z.copy()
        f1 = np.empty((B, self.n * dim))
        f2 = np.empty((B, self.n * dim))
        for lo in range(0, B, _EVAL_CHUNK):
            hi = min(lo + _EVAL_CHUNK, B)
            zc = alpha[lo:hi] + 1j * beta[lo:hi]
            w = np.ones((hi - lo, K), dtype=np.complex128)
            for t in range(self.n):
                exps = self._kmat[:, t]
                me = int(exps.max())
                if me == 0:
                    continue
                powers = np.empty((hi - lo, me + 1), dtype=np.complex128)
                powers[:, 0] = 1.0
                for p in range(1, me + 1):
                    powers[:, p] = powers[:, p - 1] * zc[:, t]
                w *= powers[:, exps]
            f1[lo:hi] = w.real @ self._aflat
            f2[lo:hi] = w.imag @ self._aflat
        return f1.reshape(B, self.n, dim), f2.reshape(B, self.n, dim)

    def eval(self, alpha, beta):
        """Single-point evaluation; returns (F1, F2) as lists of elements."""
        f1, f2 = self.eval_arrays(
            np.asarray(alpha, float).reshape(1, -1),
            np.asarray(beta, float).reshape(1, -1),
        )
        return (
            [CliffordElement(self.m, row) for row in f1[0]],
            [CliffordElement(self.m, row) for row in f2[0]],
        )

    # -- calculus -------------------------------------------------------------

    def derivative(self, t: int) -> "StemSeries":
        """Formal partial derivative in variable t (0-indexed)."""
        if not 0 <= t < self.n:
            raise DimensionError(f"variable index {t} out of range 0..{self.n - 1}")
        new_terms = {}
        for k, coeff in zip(self._keys, self._amat):
            if k[t] == 0:
                continue
            nk = list(k)
            nk[t] -= 1
            new_terms[tuple(nk)] = k[t] * coeff
        return StemSeries(self.m, self.n, new_terms,
                          degree=max(self.degree - 1, 0))

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "N": self.degree,
            "terms": [
                {
                    "k": [int(e) for e in k],
                    "a": [CliffordElement(self.m, row).to_json() for row in coeff],
                }
                for k, coeff in zip(self._keys, self._amat)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StemSeries":
        terms = {
            tuple(entry["k"]): [CliffordElement.from_json(a) for a in entry["a"]]
            for entry in obj["terms"]
        }
        return cls(int(obj["m"]), int(obj["n"]), terms, degree=int(obj["N"]))


def identity_map(m: int, n: int) -> StemSeries:
    """F(z) = z; the induced slice mapping is the identity embedding."""
    dim = 1 << m
    terms = {}
    for t in range(n):
        k = [0] * n
        k[t] = 1
        coeff = np.zeros((n, dim))
        coeff[t, 0] = 1.0
        terms[tuple(k)] = coeff
    return StemSeries(m, n, terms, degree=1)


def eval_stem(F: StemSeries, z):
    """Functional form of StemSeries.eval for a point z = (alpha, beta)."""
    alpha, beta = z
    return F.eval(alpha, beta)


def cr_residual(stem, z, step: float = 1e-5) -> float:
    """Max over variables of the finite-difference d/d(conj z_t) defect.

    ``stem`` may be a StemSeries or any callable (alpha, beta) -> (F1, F2)
    returning Clifford-vector pairs; the latter admits hand-built even-odd
    pairs that are not holomorphic.
    """
    alpha, beta = z
    alpha = np.asarray(alpha, dtype=np.float64).reshape(-1)
    beta = np.asarray(beta, dtype=np.float64).reshape(-1)
    n = alpha.shape[0]

    if isinstance(stem, StemSeries):
        def evaluate(a, b):
            f1, f2 = stem.eval_arrays(a.reshape(1, -1), b.reshape(1, -1))
            return f1[0], f2[0]
    else:
        def evaluate(a, b):
            f1, f2 = stem(a, b)
            return _coeff_rows(f1), _coeff_rows(f2)

    worst = 0.0
    for t in range(n):
        da = np.zeros(n)
        da[t] = step
        f1p, f2p = evaluate(alpha + da, beta)
        f1m, f2m = evaluate(alpha - da, beta)
        d1a = (f1p - f1m) / (2 * step)
        d2a = (f2p - f2m) / (2 * step)
        f1p, f2p = evaluate(alpha, beta + da)
        f1m, f2m = evaluate(alpha, beta - da)
        d1b = (f1p - f1m) / (2 * step)
        d2b = (f2p - f2m) / (2 * step)
        # d/d(conj z_t) = (d/d alpha_t + i d/d beta_t) / 2 on F = F1 + i F2
        r1 = 0.5 * (d1a - d2b)
        r2 = 0.5 * (d2a + d1b)
        worst = max(worst, float(np.sqrt(np.sum(r1 * r1) + np.sum(r2 * r2))))
    return worst


def _coeff_rows(values) -> np.ndarray:
    return np.stack([
        v.coeffs if isinstance(v, CliffordElement) else np.asarray(v, float)
        for v in values
    ])


# ---------------------------------------------------------------------------
# one-variable star-product series
# ---------------------------------------------------------------------------

class UnivariateSeries:
    """Truncated series sum_k x^k a_k with Clifford coefficients a_k."""

    def __init__(self, m: int, coeffs):
        self.m = m
        dim = 1 << m
        rows = [
            c.coeffs if isinstance(c, CliffordElement) else np.asarray(c, float)
            for c in coeffs
        ]
        if not rows:
            rows = [np.zeros(dim)]
        arr = np.stack(rows).astype(np.float64)
        if arr.shape[1] != dim:
            raise DimensionError(f"coefficients must have length {dim}")
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def coefficient(self, k: int) -> CliffordElement:
        if k > self.degree:
            return CliffordElement.zero(self.m)
        return CliffordElement(self.m, self.coeffs[k])

    def derivative(self) -> "UnivariateSeries":
        if self.degree == 0:
            return UnivariateSeries(self.m, [np.zeros(1 << self.m)])
        ks = np.arange(1, self.degree + 1, dtype=np.float64)
        return UnivariateSeries(self.m, self.coeffs[1:] * ks[:, None])

    def shift(self, p: int = 1) -> "UnivariateSeries":
        """Multiply by x**p (exponent shift; coefficients stay put)."""
        pad = np.zeros((p, self.coeffs.shape[1]))
        return UnivariateSeries(self.m, np.vstack([pad, self.coeffs]))

    def to_stem_component(self, n: int, t: int,
                          tail_model=None) -> StemSeries:
        """Embed as the t-th component of an n-variable stem series."""
        dim = 1 << self.m
        terms = {}
        for p, row in enumerate(self.coeffs):
            if not np.any(row):
                continue
            k = [0] * n
            k[t] = p
            coeff = np.zeros((n, dim))
            coeff[t] = row
            terms[tuple(k)] = coeff
        return StemSeries(self.m, n, terms, degree=self.degree,
                          tail_model=tail_model)


def star_mul(f: UnivariateSeries, g: UnivariateSeries,
             trunc: Optional[int] = None) -> UnivariateSeries:
    """Cauchy star product: c_k = sum_j a_j * b_{k-j}, order preserved."""
    if f.m != g.m:
        raise DimensionError("star product requires matching generator counts")
    n_out = f.degree + g.degree if trunc is None else min(trunc, f.degree + g.degree)
    out = np.zeros((n_out + 1, f.coeffs.shape[1]))
    for k in range(n_out + 1):
        j0 = max(0, k - g.degree)
        j1 = min(k, f.degree)
        if j0 > j1:
            continue
        js = np.arange(j0, j1 + 1)
        prods = mul_batch(f.m, f.coeffs[js], g.coeffs[k - js])
        out[k] = prods.sum(axis=0)
    return UnivariateSeries(f.m, out)


def star_inverse(f: UnivariateSeries, trunc: int) -> UnivariateSeries:
    """Star inverse through order trunc: b_0 = a_0^{-1},
    b_k = -a_0^{-1} sum_{j=1..k} a_j * b_{k-j}."""
    try:
        a0inv = f.coefficient(0).inverse()
    except NonInvertibleError as exc:
        raise NonInvertibleError("constant coefficient is not invertible") from exc
    dim = f.coeffs.shape[1]
    out = np.zeros((trunc + 1, dim))
    out[0] = a0inv.coeffs
    for k in range(1, trunc + 1):
        j1 = min(k, f.degree)
        if j1 < 1:
            continue
        js = np.arange(1, j1 + 1)
        acc = mul_batch(f.m, f.coeffs[js], out[k - js]).sum(axis=0)
        out[k] = -mul_coeffs(f.m, a0inv.coeffs, acc)
    return UnivariateSeries(f.m, out)


# ---------------------------------------------------------------------------
# extremal map builders and tail accounting
# ---------------------------------------------------------------------------

def _geometric_unit(m: int, theta: float, I: CliffordElement) -> UnivariateSeries:
    one = CliffordElement.scalar(m, 1.0)
    return UnivariateSeries(m, [one, -slice_exp(I, theta)])


def koebe_map(theta: float, I: CliffordElement, N: int, n: int) -> StemSeries:
    """Componentwise x_t (1 - x_t e^{I theta})^{-*2}.

    Built through the star algebra (inverse then square), which lands on
    the coefficients (k+1) e^{I k theta} at power k+1; the classical
    slice restriction is x/(1-x)^2 for theta = 0.
    """
    m = I.m
    inv = star_inverse(_geometric_unit(m, theta, I), N)
    sq = star_mul(inv, inv, trunc=N).shift(1)
    return _assemble_componentwise(sq, n, tail_model=_koebe_tail(n, N))


def convex_test_map(theta: float, I: CliffordElement, N: int, n: int,
                    variant: str = "cayley") -> StemSeries:
    """One-variable convex-family test maps applied componentwise.

    "cayley" is x_t (1 - x_t e^{I theta})^{-*1} (slice restriction
    x/(1-x) at theta = 0); "paper_example" is the degree-two polynomial
    x_t (1 - x_t e^{I theta}), kept for reporting because its slice
    restriction has a vanishing derivative inside the unit disc.
    """
    m = I.m
    if variant == "cayley":
        inv = star_inverse(_geometric_unit(m, theta, I), N).shift(1)
        return _assemble_componentwise(inv, n, tail_model=_cayley_tail(n, N))
    if variant == "paper_example":
        base = _geometric_unit(m, theta, I).shift(1)
        return _assemble_componentwise(base, n, tail_model=None)
    raise ValueError(f"unknown convex variant {variant!r}")


def _assemble_componentwise(series: UnivariateSeries, n: int, tail_model) -> StemSeries:
    m = series.m
    dim = 1 << m
    terms = {}
    for p, row in enumerate(series.coeffs):
        if not np.any(row):
            continue
        for t in range(n):
            k = [0] * n
            k[t] = p
            coeff = np.zeros((n, dim))
            coeff[t] = row
            terms[tuple(k)] = coeff
    return StemSeries(m, n, terms, degree=series.degree, tail_model=tail_model)


def _koebe_tail(n: int, N: int):
    # sum_{k>N} (k+1) r^{k+1} = r^{N+2} ((N+2) - (N+1) r) / (1-r)^2 per component
    def bound(r: float) -> float:
        if r < 0:
            raise ValueError("radius must be non-negative")
        if r >= 1:
            return math.inf
        return math.sqrt(n) * r ** (N + 2) * ((N + 2) - (N + 1) * r) / (1 - r) ** 2
    return bound


def _cayley_tail(n: int, N: int):
    # sum_{k>N} r^{k+1} = r^{N+2} / (1-r) per component
    def bound(r: float) -> float:
        if r < 0:
            raise ValueError("radius must be non-negative")
        if r >= 1:
            return math.inf
        return math.sqrt(n) * r ** (N + 2) / (1 - r)
    return bound


def tail_bound(f: StemSeries, r: float) -> float:
    """Truncation-error budget of f on the ball of radius r (0 if exact)."""
    if f.tail_model is None:
        return 0.0
    return float(f.tail_model(r))
