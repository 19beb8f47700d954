"""Verification suites: deterministic, seeded batteries of checks that
produce one report record each.

Every suite derives its RNG stream from (seed, suite tag, shard index),
so reports are byte-identical for a fixed (config, seed, shard count)
and shards can run independently; shard merging takes componentwise
maxima of errors and sums sample counts.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra, geometry, series, slicemaps, slicespace
from .algebra import CliffordElement
from .reports import Report

DEFAULT_SEED = 1
MAX_M = algebra.MAX_GENERATORS

_SUITE_TAGS = {
    "algebra": 11,
    "stem": 12,
    "representation": 13,
    "regularity": 14,
    "extremal": 15,
    "growth-ball": 16,
    "growth-domain": 17,
    "gauge": 18,
}

_DEFAULT_SAMPLES = {
    "algebra": 10_000,
    "stem": 1_000,
    "representation": 1_000,
    "regularity": 200,
    "extremal": 1_000,
    "growth-ball": 10_000,
    "growth-domain": 10_000,
    "gauge": 200,
}

_SHARP_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class RunConfig:
    m: Optional[int] = None
    n: int = 2
    seed: int = DEFAULT_SEED
    samples: Optional[int] = None
    truncation: int = 300
    r_max: float = 0.9
    theta: Optional[float] = None
    maps: Optional[tuple[str, ...]] = None
    domains: tuple[str, ...] = ("ball", "polydisc")
    shards: int = 1
    fmt: str = "json"
    out: Optional[str] = None
    tolerances: dict = field(default_factory=dict)

    def validate(self):
        if self.m is not None and not 1 <= self.m <= MAX_M:
            raise ValueError(f"m must be in 1..{MAX_M}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be positive")
        if not 0.0 < self.r_max < 1.0:
            raise ValueError("r_max must be in (0, 1)")
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        if self.shards < 1:
            raise ValueError("shards must be positive")
        for name in self.maps or ():
            if name not in ("koebe", "cayley", "paper-example"):
                raise ValueError(f"unknown map {name!r}")
        for name in self.domains:
            if name not in ("ball", "polydisc"):
                raise ValueError(f"unknown domain {name!r}")
        return self

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def budget(self, suite: str) -> int:
        return self.samples if self.samples is not None else _DEFAULT_SAMPLES[suite]


def _rng(cfg: RunConfig, suite: str, shard: int, extra: int = 0):
    return np.random.default_rng([cfg.seed, _SUITE_TAGS[suite], shard, extra])


def _stable_tag(*parts) -> int:
    """Deterministic 31-bit stream tag (the builtin hash is salted)."""
    text = "|".join(str(p) for p in parts)
    return zlib.crc32(text.encode("utf-8")) & 0x7FFFFFFF


def _shard_sizes(total: int, shards: int) -> list[int]:
    base = total // shards
    out = [base] * shards
    for i in range(total - base * shards):
        out[i] += 1
    return [s for s in out if s > 0]


def _merge_max(check: str, parts: list[Report], threshold: float, **params) -> Report:
    max_error = max(rep.data["max_error"] for rep in parts)
    samples = sum(rep.samples for rep in parts)
    return Report.from_error(check, max_error, threshold, samples, **params)


# ---------------------------------------------------------------------------
# algebra suite
# ---------------------------------------------------------------------------

def _algebra_shard(m: int, count: int, rng, tol: float) -> Report:
    dim = 1 << m
    a = rng.uniform(-1.0, 1.0, size=(count, dim))
    b = rng.uniform(-1.0, 1.0, size=(count, dim))
    c = rng.uniform(-1.0, 1.0, size=(count, dim))

    ab = algebra.mul_batch(m, a, b)
    bc = algebra.mul_batch(m, b, c)
    assoc = algebra.mul_batch(m, ab, c) - algebra.mul_batch(m, a, bc)
    scale = 1.0 + (
        np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1) * np.linalg.norm(c, axis=1)
    )
    assoc_err = float(np.max(np.abs(assoc) / scale[:, None]))

    conj_ab = algebra.conj_batch(m, ab)
    conj_ba = algebra.mul_batch(m, algebra.conj_batch(m, b), algebra.conj_batch(m, a))
    anti_err = float(np.max(np.abs(conj_ab - conj_ba)))

    invol_err = float(np.max(np.abs(algebra.conj_batch(m, algebra.conj_batch(m, a)) - a)))

    inv = algebra.invert_batch(m, a)
    resid = algebra.mul_batch(m, a, inv)
    resid[:, 0] -= 1.0
    inv_err = float(np.max(np.abs(resid)))

    # anticommutation relations are exact integer identities
    pair_err = 0.0
    for i in range(1, m + 1):
        ei = CliffordElement.generator(m, i)
        for j in range(1, m + 1):
            ej = CliffordElement.generator(m, j)
            s = (ei * ej + ej * ei).coeffs
            expect = np.zeros(dim)
            if i == j:
                expect[0] = -2.0
            pair_err = max(pair_err, float(np.max(np.abs(s - expect))))

    # sampled roots of -1 square to -1
    roots = slicespace.sample_S_batch(rng, m, min(count, 2000))
    sq = algebra.mul_batch(m, roots, roots)
    sq[:, 0] += 1.0
    root_err = float(np.max(np.abs(sq)))

    max_error = max(assoc_err, anti_err, invol_err, inv_err, pair_err, root_err)
    return Report.from_error(
        f"algebra-m{m}", max_error, tol, count,
        m=m, associativity=assoc_err, anti_automorphism=anti_err,
        involution=invol_err, inverse_identity=inv_err,
        anticommutation=pair_err, root_square=root_err,
    )


def run_algebra(cfg: RunConfig) -> list[Report]:
    tol = cfg.tol("algebra", 1e-10)
    total = cfg.budget("algebra")
    m_values = range(1, (cfg.m or 5) + 1)
    reports = []
    for m in m_values:
        # work per case grows like 4**m; keep large-m batches tractable
        budget_m = max(200, total // 4 ** max(0, m - 5)) if m > 5 else total
        parts = [
            _algebra_shard(m, size, _rng(cfg, "algebra", shard, m), tol)
            for shard, size in enumerate(_shard_sizes(budget_m, cfg.shards))
        ]
        merged = _merge_max(f"algebra-m{m}", parts, tol, m=m)
        for key in ("associativity", "anti_automorphism", "involution",
                    "inverse_identity", "anticommutation", "root_square"):
            merged.data[key] = max(p.data[key] for p in parts)
        reports.append(merged)
    return reports


# ---------------------------------------------------------------------------
# stem suite
# ---------------------------------------------------------------------------

def _random_stem(m: int, n: int, rng, degree: int = 5, terms: int = 8) -> series.StemSeries:
    dim = 1 << m
    table = {}
    for _ in range(terms):
        k = tuple(int(v) for v in rng.integers(0, degree + 1, size=n))
        if sum(k) > degree:
            continue
        table[k] = rng.uniform(-1.0, 1.0, size=(n, dim))
    if not table:
        table[(0,) * n] = rng.uniform(-1.0, 1.0, size=(n, dim))
    return series.StemSeries(m, n, table)


def run_stem(cfg: RunConfig) -> list[Report]:
    m = cfg.m or 3
    n = cfg.n
    count = cfg.budget("stem")
    trunc = cfg.truncation
    rng = _rng(cfg, "stem", 0)
    reports = []

    # even-odd pair identity on random stems (exact by construction)
    stem = _random_stem(m, n, rng)
    alpha = rng.uniform(-0.9, 0.9, size=(count, n))
    beta = rng.uniform(-0.9, 0.9, size=(count, n))
    f1p, f2p = stem.eval_arrays(alpha, beta)
    f1m, f2m = stem.eval_arrays(alpha, -beta)
    eo_err = max(
        float(np.max(np.abs(f1m - f1p), initial=0.0)),
        float(np.max(np.abs(f2m + f2p), initial=0.0)),
    )
    reports.append(Report.from_error(
        "stem-even-odd", eo_err, cfg.tol("even_odd", 1e-12), count, m=m, n=n))

    # holomorphy residual via finite differences; sampled away from the
    # boundary so the third derivative keeps the FD error under budget
    theta = cfg.theta if cfg.theta is not None else 0.7
    i_elem = CliffordElement.generator(m, 1)
    koebe = series.koebe_map(theta, i_elem, trunc, n)
    cr_points = min(count, 50)
    worst_cr = 0.0
    for _ in range(cr_points):
        z = (rng.uniform(-0.3, 0.3, n), rng.uniform(-0.3, 0.3, n))
        worst_cr = max(worst_cr, series.cr_residual(stem, z),
                       series.cr_residual(koebe, z))
    reports.append(Report.from_error(
        "stem-cr-residual", worst_cr, cfg.tol("cr", 1e-8), cr_points, m=m, n=n))

    # the non-holomorphic control must be detected: d Re(z_1)/d conj(z_1) = 1/2
    def control_f1(a, b):
        rows = np.zeros((n, 1 << m))
        rows[0, 0] = a[0]
        return rows

    def control_f2(a, b):
        return np.zeros((n, 1 << m))

    control = series.cr_residual(
        lambda a, b: (control_f1(a, b), control_f2(a, b)),
        (np.full(n, 0.3), np.full(n, 0.2)),
    )
    reports.append(Report.from_error(
        "stem-cr-control", abs(control - 0.5), 1e-6, 1, m=m, n=n,
        control_residual=control))

    # star-inverse identity through the full truncation order
    unit = series.UnivariateSeries(m, [CliffordElement.scalar(m, 1.0)])
    base = series.UnivariateSeries(
        m, [CliffordElement.scalar(m, 1.0), -algebra.slice_exp(i_elem, theta)])
    inv = series.star_inverse(base, trunc)
    ident = series.star_mul(base, inv, trunc=trunc)
    ident_err = float(np.max(np.abs(ident.coeffs - unit_pad(unit, trunc))))

    coeffs = [CliffordElement.scalar(m, 1.0)]
    budget = 0.5
    for k in range(1, 41):
        row = rng.uniform(-1.0, 1.0, size=1 << m)
        row *= budget * 0.5 ** k / max(1.0, float(np.linalg.norm(row)))
        coeffs.append(CliffordElement(m, row))
    rand_series = series.UnivariateSeries(m, coeffs)
    rinv = series.star_inverse(rand_series, trunc)
    rident = series.star_mul(rand_series, rinv, trunc=trunc)
    ident_err = max(ident_err, float(np.max(np.abs(rident.coeffs - unit_pad(unit, trunc)))))
    dbl = series.star_inverse(rinv, 40)
    ident_err = max(ident_err, float(np.max(np.abs(dbl.coeffs - rand_series.coeffs[:41]))))
    reports.append(Report.from_error(
        "stem-star-inverse", ident_err, cfg.tol("star", 1e-10), trunc,
        m=m, order=trunc))

    # coefficient norms of the starlike family: (k+1) exactly
    coeff_err = 0.0
    for p in range(1, trunc + 2):
        key = [0] * n
        key[0] = p
        row = koebe.coefficient(tuple(key))[0]
        coeff_err = max(coeff_err, abs(row.euclid_norm() - p))
    reports.append(Report.from_error(
        "stem-koebe-coefficients", coeff_err, 1e-9, trunc + 1, m=m, n=n))

    # analytic tail decreases with the truncation order
    orders = sorted({max(10, trunc // 8), max(20, trunc // 4),
                     max(30, trunc // 2), trunc})
    tails = [series.tail_bound(series.koebe_map(0.0, i_elem, N, n), cfg.r_max)
             for N in orders]
    monotone = all(t1 >= t2 for t1, t2 in zip(tails, tails[1:]))
    reports.append(Report(
        "stem-tail-monotone", monotone, len(tails),
        {"tails": " ".join(f"{t:.3e}" for t in tails),
         "max_error": 0.0 if monotone else 1.0, "threshold": 0.5},
    ))
    return reports


def unit_pad(unit: series.UnivariateSeries, trunc: int) -> np.ndarray:
    out = np.zeros((trunc + 1, unit.coeffs.shape[1]))
    out[0] = unit.coeffs[0]
    return out


# ---------------------------------------------------------------------------
# representation suite
# ---------------------------------------------------------------------------

def run_representation(cfg: RunConfig) -> list[Report]:
    m = cfg.m or 3
    n = cfg.n
    count = cfg.budget("representation")
    rng = _rng(cfg, "representation", 0)
    tol = cfg.tol("representation", 1e-10)
    cond_threshold = 1e-3

    worst = 0.0
    worst_two_pair = 0.0
    worst_cor = 0.0
    worst_collapse = 0.0
    worst_deriv = 0.0
    rejected = 0
    maps = [slicemaps.SliceMap(_random_stem(m, n, rng)) for _ in range(8)]

    def draw_pair():
        nonlocal rejected
        while True:
            j_elem = CliffordElement(m, slicespace.sample_S_batch(rng, m, 1)[0])
            k_elem = CliffordElement(m, slicespace.sample_S_batch(rng, m, 1)[0])
            diff = (j_elem - k_elem).euclid_norm()
            if diff >= cond_threshold:
                return j_elem, k_elem
            rejected += 1

    for case in range(count):
        f = maps[case % len(maps)]
        o = slicespace.make_orbit(rng.uniform(-1, 1, n), rng.uniform(-1, 1, n))
        j_elem, k_elem = draw_pair()
        i_elem = CliffordElement(m, slicespace.sample_S_batch(rng, m, 1)[0])
        direct = f.eval(slicespace.orbit_point(o, i_elem))
        rec = slicemaps.representation_formula(f, o, j_elem, k_elem, i_elem,
                                               cond_threshold)
        err = max(float(np.max(np.abs(a.coeffs - b.coeffs)))
                  for a, b in zip(rec, direct))
        worst = max(worst, err)

        if case % 10 == 0:
            j2, k2 = draw_pair()
            rec2 = slicemaps.representation_formula(f, o, j2, k2, i_elem,
                                                    cond_threshold)
            worst_two_pair = max(worst_two_pair, max(
                float(np.max(np.abs(a.coeffs - b.coeffs)))
                for a, b in zip(rec, rec2)))

            cor = slicemaps.two_slice_average(f, o, j_elem, i_elem)
            worst_cor = max(worst_cor, max(
                float(np.max(np.abs(a.coeffs - b.coeffs)))
                for a, b in zip(cor, direct)))

            collapse = slicemaps.representation_formula(f, o, j_elem, k_elem,
                                                        j_elem, cond_threshold)
            on_j = f.eval(slicespace.orbit_point(o, j_elem))
            worst_collapse = max(worst_collapse, max(
                float(np.max(np.abs(a.coeffs - b.coeffs)))
                for a, b in zip(collapse, on_j)))

            df = f.derivative(0)
            rec_d = slicemaps.representation_formula(df, o, j_elem, k_elem,
                                                     i_elem, cond_threshold)
            direct_d = df.eval(slicespace.orbit_point(o, i_elem))
            worst_deriv = max(worst_deriv, max(
                float(np.max(np.abs(a.coeffs - b.coeffs)))
                for a, b in zip(rec_d, direct_d)))

    return [
        Report.from_error("representation-reconstruction", worst, tol, count,
                          m=m, n=n, cond_threshold=cond_threshold,
                          rejected_pairs=rejected),
        Report.from_error("representation-two-pair", worst_two_pair,
                          cfg.tol("two_pair", 1e-9), count // 10, m=m, n=n),
        Report.from_error("representation-average-form", worst_cor, tol,
                          count // 10, m=m, n=n),
        Report.from_error("representation-collapse", worst_collapse, 1e-12,
                          count // 10, m=m, n=n),
        Report.from_error("representation-derivative-commutes", worst_deriv,
                          cfg.tol("deriv_commute", 1e-8), count // 10, m=m, n=n),
    ]


# ---------------------------------------------------------------------------
# regularity suite
# ---------------------------------------------------------------------------

def run_regularity(cfg: RunConfig) -> list[Report]:
    m = cfg.m or 3
    n = cfg.n
    count = cfg.budget("regularity")
    rng = _rng(cfg, "regularity", 0)
    theta = cfg.theta if cfg.theta is not None else 0.7
    i_elem = CliffordElement.generator(m, 1)
    reports = []

    worst = 0.0
    maps = [
        slicemaps.SliceMap(_random_stem(m, n, rng)),
        slicemaps.SliceMap(series.koebe_map(theta, i_elem, 60, n)),
        slicemaps.SliceMap(series.identity_map(m, n)),
    ]
    for _ in range(count):
        f = maps[int(rng.integers(len(maps)))]
        j_elem = CliffordElement(m, slicespace.sample_S_batch(rng, m, 1)[0])
        p = slicespace.make_point(
            rng.uniform(-0.4, 0.4, n), rng.uniform(-0.4, 0.4, n), j_elem)
        worst = max(worst, slicemaps.regularity_residual(f, p))
    reports.append(Report.from_error(
        "regularity-series", worst, cfg.tol("regularity", 1e-7), count, m=m, n=n))

    const = slicemaps.SliceMap(series.StemSeries(
        m, n, {(0,) * n: rng.uniform(-1, 1, size=(n, 1 << m))}))
    p0 = slicespace.make_point(
        rng.uniform(-0.4, 0.4, n), rng.uniform(-0.4, 0.4, n),
        CliffordElement.generator(m, 1))
    reports.append(Report.from_error(
        "regularity-constant", slicemaps.regularity_residual(const, p0), 1e-14,
        1, m=m, n=n))

    # control with stem F1 = Re(z_1): residual must be O(1), not small
    def raw_f1(a, b):
        rows = np.zeros((n, 1 << m))
        rows[0, 0] = a[0]
        return rows

    def raw_f2(a, b):
        return np.zeros((n, 1 << m))

    control = slicemaps.RawSliceMap(m, n, raw_f1, raw_f2)
    control_res = slicemaps.regularity_residual(control, p0)
    reports.append(Report(
        "regularity-control-detected", control_res > 0.1, 1,
        {"m": m, "n": n, "control_residual": control_res,
         "max_error": 0.0 if control_res > 0.1 else 1.0, "threshold": 0.5},
    ))

    # holomorphic splitting reassembles the slice restriction
    f = slicemaps.SliceMap(_random_stem(m, n, rng))
    comps, basis = slicemaps.split_components(f, i_elem)
    worst_split = 0.0
    for _ in range(min(count, 200)):
        z = rng.uniform(-0.7, 0.7, n) + 1j * rng.uniform(-0.7, 0.7, n)
        rebuilt = slicemaps.reassemble_on_slice(comps, basis, i_elem, z)
        point = slicespace.make_point(z.real, z.imag, i_elem)
        direct = f.eval(point)
        worst_split = max(worst_split, max(
            float(np.max(np.abs(a.coeffs - b.coeffs)))
            for a, b in zip(rebuilt, direct)))
    reports.append(Report.from_error(
        "regularity-splitting", worst_split, cfg.tol("split", 1e-10),
        min(count, 200), m=m, n=n, components=len(comps)))
    return reports


# ---------------------------------------------------------------------------
# extremal suite
# ---------------------------------------------------------------------------

def _extremal_maps(m: int, n: int, trunc: int, theta: float):
    e1 = CliffordElement.generator(m, 1)
    out = [("identity", slicemaps.SliceMap(series.identity_map(m, n)), e1)]
    out.append(("koebe", slicemaps.SliceMap(series.koebe_map(theta, e1, trunc, n)), e1))
    if m == 2:
        e12 = CliffordElement.blade(m, (1, 2))
        out.append((
            "koebe-bivector",
            slicemaps.SliceMap(series.koebe_map(theta, e12, trunc, n)),
            e12,
        ))
    return out


def run_extremal(cfg: RunConfig) -> list[Report]:
    count = cfg.budget("extremal")
    theta = cfg.theta if cfg.theta is not None else 0.7
    tol = cfg.tol("extremal", 1e-9)
    reports = []
    m_values = (cfg.m,) if cfg.m else (2, 3)
    n_values = (cfg.n,) if cfg.n != 2 else (1, 2)
    for m in m_values:
        if m < 2:
            # the sphere of roots of -1 is {-e1, e1}: no transverse sweep
            reports.append(Report(
                "extremal-skipped-m1", True, 0,
                {"m": m, "note": "no orthogonal root of -1 exists for m=1",
                 "max_error": 0.0, "threshold": tol}))
            continue
        for n in n_values:
            rng = _rng(cfg, "extremal", 0, m * 10 + n)
            for name, f, i_elem in _extremal_maps(m, n, min(cfg.truncation, 120), theta):
                o = slicespace.make_orbit(
                    rng.uniform(-0.5, 0.5, n), rng.uniform(-0.5, 0.5, n))
                rep = geometry.verify_extremal(f, o, i_elem, count, rng, tol)
                lin = geometry.profile_linearity(f, o, i_elem, rng=rng)
                rep.check = f"extremal-{name}-m{m}-n{n}"
                rep.data["map"] = name
                rep.data["linearity_residual"] = lin
                rep.data["max_error"] = max(rep.data["max_error"], lin)
                rep.passed = rep.data["max_error"] <= tol
                reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# growth suites
# ---------------------------------------------------------------------------

def _growth_cases(cfg: RunConfig):
    m = cfg.m or 3
    thetas = (cfg.theta,) if cfg.theta is not None else (0.0, 0.7, np.pi / 2)
    e1 = CliffordElement.generator(m, 1)
    directions = [("e1", e1)]
    if m >= 2:
        directions.append(("e12", CliffordElement.blade(m, (1, 2))))
    return m, thetas, directions


def run_growth_ball(cfg: RunConfig) -> list[Report]:
    m, thetas, directions = _growth_cases(cfg)
    n = cfg.n
    count = cfg.budget("growth-ball")
    trunc = cfg.truncation
    reports = []
    wanted = cfg.maps or ("koebe", "cayley", "paper-example")

    shard_plan = _shard_sizes(count, cfg.shards)
    for label, family, builder in (
        ("koebe", "starlike", lambda th, i: series.koebe_map(th, i, trunc, n)),
        ("cayley", "convex", lambda th, i: series.convex_test_map(th, i, trunc, n)),
        ("paper-example", "convex",
         lambda th, i: series.convex_test_map(th, i, trunc, n, "paper_example")),
    ):
        if label not in wanted:
            continue
        assert_bounds = label != "paper-example"
        for iname, i_elem in directions:
            for theta in thetas:
                f = slicemaps.SliceMap(builder(theta, i_elem))
                parts = []
                for shard, size in enumerate(shard_plan):
                    rng = _rng(cfg, "growth-ball", shard,
                               _stable_tag(label, iname, f"{theta:.9f}"))
                    parts.append(geometry.growth_check_ball(
                        f, family, cfg.r_max, size, rng, i_elem, theta,
                        cfg.tol("growth", 1e-9), assert_bounds))
                rep = parts[0]
                for extra in parts[1:]:
                    for key in ("max_violation_lower", "max_violation_upper",
                                "max_error"):
                        rep.data[key] = max(rep.data[key], extra.data[key])
                    rep.samples += extra.samples
                    rep.passed = rep.passed and extra.passed
                rep.check = f"growth-ball-{label}-{iname}-theta{theta:.3f}"
                rep.data["map"] = label
                if rep.data["asserted"]:
                    rep.passed = rep.data["max_error"] <= rep.data["threshold"]
                reports.append(rep)

            if any(abs(t) < 1e-15 for t in thetas):
                f0 = slicemaps.SliceMap(builder(0.0, i_elem))
                sharp = geometry.sharpness_axis(
                    f0, family, _SHARP_GRID, cfg.tol("sharpness", 1e-8))
                sharp.check = f"sharpness-{label}-{iname}"
                sharp.data["map"] = label
                if label == "paper-example":
                    sharp.data["asserted"] = False
                    sharp.passed = True
                reports.append(sharp)
    return reports


def run_growth_domain(cfg: RunConfig) -> list[Report]:
    m, thetas, directions = _growth_cases(cfg)
    n = cfg.n
    count = cfg.budget("growth-domain")
    trunc = cfg.truncation
    reports = []
    wanted = cfg.maps or ("koebe", "cayley")

    for label, family, builder in (
        ("koebe", "starlike", lambda th, i: series.koebe_map(th, i, trunc, n)),
        ("cayley", "convex", lambda th, i: series.convex_test_map(th, i, trunc, n)),
    ):
        if label not in wanted:
            continue
        _, i_elem = directions[0]
        theta = thetas[0]
        f = slicemaps.SliceMap(builder(theta, i_elem))
        for domain in cfg.domains:
            gauge = geometry.ball_gauge(n, m) if domain == "ball" \
                else geometry.polydisc_gauge(n, m)
            rng = _rng(cfg, "growth-domain", 0, _stable_tag(label, domain))
            rep = geometry.growth_check_domain(
                f, gauge, family, cfg.r_max, count, rng, i_elem, theta,
                cfg.tol("growth", 1e-9))
            rep.check = f"growth-domain-{domain}-{label}"
            rep.data["map"] = label
            reports.append(rep)
    return reports


def run_gauge(cfg: RunConfig) -> list[Report]:
    m = cfg.m or 3
    n = cfg.n
    count = cfg.budget("gauge")
    rng = _rng(cfg, "gauge", 0)
    reports = []

    ball = geometry.ball_gauge(n, m)
    poly = geometry.polydisc_gauge(n, m)
    reports.append(geometry.gauge_properties_check(
        ball, max(count // 10, 20), rng, cfg.tol("gauge_closed", 1e-12)))
    reports.append(geometry.gauge_properties_check(
        poly, max(count // 10, 20), rng, cfg.tol("gauge_closed", 1e-12)))

    # bisection oracle wrapping the closed-form membership tests
    for closed, name in ((ball, "ball"), (poly, "polydisc")):
        oracle = geometry.oracle_gauge(
            lambda p, _g=closed: geometry.gauge_rho(_g, p) < 1.0, n, m)
        worst = 0.0
        points = max(count, 100)
        for _ in range(points):
            j_elem = CliffordElement(m, slicespace.sample_S_batch(rng, m, 1)[0])
            p = slicespace.make_point(
                rng.uniform(-1.5, 1.5, n), rng.uniform(-1.5, 1.5, n), j_elem)
            worst = max(worst, abs(geometry.gauge_rho(oracle, p) -
                                   geometry.gauge_rho(closed, p)))
        reports.append(Report.from_error(
            f"gauge-bisection-{name}", worst, cfg.tol("gauge_bisect", 1e-8),
            points, m=m, n=n))
    return reports


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

SUITES = {
    "algebra": run_algebra,
    "stem": run_stem,
    "representation": run_representation,
    "regularity": run_regularity,
    "extremal": run_extremal,
    "growth-ball": run_growth_ball,
    "growth-domain": run_growth_domain,
    "gauge": run_gauge,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, cfg: RunConfig) -> list[Report]:
    cfg.validate()
    if name == "all":
        reports = []
        for key in SUITES:
            reports.extend(SUITES[key](cfg))
        return reports
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
