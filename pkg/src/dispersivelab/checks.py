"""Verification harness for the estimates, identities, and persistence
phenomena of the three dispersive models.

Numerical semantics: an inequality cannot be proven by computation, so every
inequality-class check asserts (i) finiteness of the measured constant,
(ii) stability of that constant under one dyadic grid refinement, and
(iii) exactness of the degenerate cases the estimate contains.  Identity
class checks assert equality at stated tolerances.  Persistence experiments
evolve the full equations and inspect weighted-norm growth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, CorpusMember, DEFAULT_SEED, gaussian, gaussian_deriv
from .laws import moment, standard_diagnostics
from .norms import ap_constant, lebesgue, power_weight, weighted_l2
from .operators import (
    bessel_potential,
    derivative,
    gamma_schrodinger,
    hilbert,
    lp_linf_l1,
    riesz_deriv,
    stein_deriv,
)
from .propagators import EquationSpec, StepperConfig, evolve, linear_group
from .spectral import Field, Grid, boundary_gate

__all__ = [
    "CheckReport",
    "check_chirp_stein",
    "check_weighted_free",
    "check_gamma_identity",
    "check_leibniz",
    "check_gn",
    "check_interpolation",
    "check_commutator_leibniz",
    "check_commutator_hilbert",
    "check_ap_hilbert",
    "check_strichartz",
    "check_scaling",
    "persistence_experiment",
    "bo_domain_comparison",
    "CHECKS",
    "run_check",
]

STABILITY_TOL = 0.10  # fitted constants must move less than this per refinement


@dataclass
class CheckReport:
    check_id: str
    params: dict
    corpus_size: int
    worst_ratio: float
    fitted_constant: float
    residual_max: float
    refinement_trend: list
    verdict: str                      # 'pass' | 'fail' | 'report-only'
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "report-only"):
            raise ValueError(f"unknown verdict {self.verdict!r}")


def _l2(f: Field) -> float:
    return float(np.sqrt(f.grid.h * np.sum(np.abs(f.values) ** 2)))


def _stable(trend, tol=STABILITY_TOL) -> bool:
    return all(
        np.isfinite(a) and np.isfinite(b) and abs(b / a - 1.0) <= tol
        for a, b in zip(trend, trend[1:])
    )


# ------------------------------------------------------------------ chirp

def check_chirp_stein(t: float = 0.5, b: float = 0.5, grid: Grid | None = None) -> CheckReport:
    """Square function of the quadratic chirp exp(i t x^2) is dominated by
    c (t^(b/2) + t^b |x|^b); fits the smallest c on |x| <= L/2 and requires
    the fit to be stable under refinement."""
    if not (0.0 < b < 1.0):
        raise ValueError(f"order must lie in (0,1), got b={b}")
    if not t > 0:
        raise ValueError(f"chirp time must be positive, got t={t}")
    # a wide cell keeps the periodic-tail bias of the fit below the
    # stability tolerance across the tested range of t
    grid = grid or Grid(1024, 30.0)
    fits = []
    for g in (grid, grid.refine()):
        freq_max = 2.0 * t * g.length
        if freq_max > (2.0 / 3.0) * g.xi_max:
            raise ValueError(
                f"chirp unresolvable: local frequency {freq_max:.3g} exceeds "
                f"2/3 of the lattice maximum {g.xi_max:.3g}; need t <= "
                f"{g.xi_max / (3.0 * g.length):.3g}"
            )
        chirp = Field.from_function(g, lambda x: np.exp(1j * t * x**2))
        lhs = stein_deriv(chirp, b, tail="stationary").values.real
        window = np.abs(g.x) <= g.length / 2.0
        rhs = t ** (b / 2.0) + t**b * np.abs(g.x[window]) ** b
        fits.append(float(np.max(lhs[window] / rhs)))
    verdict = "pass" if _stable(fits) else "fail"
    return CheckReport(
        check_id="chirp_stein",
        params={"t": t, "b": b, "n": grid.n, "L": grid.length},
        corpus_size=1,
        worst_ratio=fits[-1],
        fitted_constant=fits[0],
        residual_max=abs(fits[1] - fits[0]),
        refinement_trend=fits,
        verdict=verdict,
    )


# ----------------------------------------------------------- weighted free

def check_weighted_free(
    t: float = 0.5,
    b: float = 0.5,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """|x|^b-weighted norm of the free Schroedinger flow controlled by
    t^(b/2) ||f|| + t^b ||D^b f|| + || |x|^b f ||, swept over the corpus."""
    if not (0.0 < b < 1.0):
        raise ValueError(f"order must lie in (0,1), got b={b}")
    grid = grid or Grid(512, 20.0)
    corpus = corpus or Corpus()
    spec = EquationSpec.nls()

    # the free flow spreads: settle a single time at which every evolved
    # member still clears the boundary gate, halving at most three times
    t_used = t
    adjusted = 0
    while adjusted < 3:
        evolved = [linear_group(f, spec, t_used) for _, f in corpus.realize(grid)]
        if all(boundary_gate(e)[0] for e in evolved):
            break
        t_used /= 2.0
        adjusted += 1

    trend = []
    for g in (grid, grid.refine()):
        worst = 0.0
        for member, f in corpus.realize(g):
            evolved = linear_group(f, spec, t_used)
            lhs = weighted_l2(evolved, b, check_gate=False)
            rhs = (
                t_used ** (b / 2.0) * _l2(f)
                + t_used**b * _l2(riesz_deriv(f, b))
                + weighted_l2(f, b, check_gate=False)
            )
            worst = max(worst, lhs / rhs)
        trend.append(worst)
    verdict = "pass" if _stable(trend) else "fail"
    return CheckReport(
        check_id="weighted_free",
        params={"t": t_used, "b": b, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=abs(trend[1] - trend[0]),
        refinement_trend=trend,
        verdict=verdict,
        notes={"t_adjusted": float(adjusted)},
    )


# --------------------------------------------------------- gamma identity

def check_gamma_identity(
    b: float = 0.5, t: float = 0.5, grid: Grid | None = None
) -> CheckReport:
    """Conjugation identity of the fractional Schroedinger vector field:
    Gamma^b(t) U(t) f = U(t) (|x|^b f), both sides computed independently.

    b = 1 compares the first-order field x + 2it d/dx against U(t)(x f)
    (tolerance 1e-10); fractional b uses the chirp formula against
    U(t)(|x|^b f) (tolerance 1e-6)."""
    if not 0.0 <= b <= 1.0:
        raise ValueError(f"order must lie in [0,1], got b={b}")
    grid = grid or Grid(1024, 20.0)
    spec = EquationSpec.nls()
    f = Field.from_function(grid, gaussian)
    evolved = linear_group(f, spec, t)

    if b == 0.0:
        lhs, rhs, tol = evolved, evolved.copy(), 1e-12
        weight_norm = _l2(f)
    elif b == 1.0:
        lhs = gamma_schrodinger(evolved, t, 1.0)
        rhs = linear_group(Field(grid, grid.x * f.values), spec, t)
        weight_norm = weighted_l2(f, 1.0, check_gate=False)
        tol = 1e-10
    else:
        lhs = gamma_schrodinger(evolved, t, b)  # raises below gamma_t_min(grid)
        rhs = linear_group(Field(grid, np.abs(grid.x) ** b * f.values), spec, t)
        weight_norm = weighted_l2(f, b, check_gate=False)
        tol = 1e-6
    residual = _l2(lhs - rhs) / weight_norm
    return CheckReport(
        check_id="gamma_identity",
        params={"b": b, "t": t, "n": grid.n, "L": grid.length, "tol": tol},
        corpus_size=1,
        worst_ratio=residual,
        fitted_constant=residual,
        residual_max=residual,
        refinement_trend=[residual],
        verdict="pass" if residual <= tol else "fail",
    )


# ----------------------------------------------------------------- Leibniz

def _leibniz_pair_ratio(f: Field, g_: Field, b: float):
    prod = Field(f.grid, f.values * g_.values)
    d_prod = stein_deriv(prod, b)
    d_f = stein_deriv(f, b)
    d_g = stein_deriv(g_, b)
    rhs1 = Field(f.grid, f.values * d_g.values)
    rhs2 = Field(f.grid, g_.values * d_f.values)
    denom = _l2(rhs1) + _l2(rhs2)
    ratio = _l2(d_prod) / denom if denom > 0 else (0.0 if _l2(d_prod) == 0 else np.inf)

    # pointwise product bound, checked away from the boundary
    window = np.abs(f.grid.x) <= 0.9 * f.grid.length
    bound = (
        np.max(np.abs(f.values)) * d_g.values.real + np.abs(g_.values) * d_f.values.real
    )
    slack = bound[window] - d_prod.values.real[window]
    scale = float(np.max(bound)) or 1.0
    return ratio, float(np.min(slack) / scale)


def check_leibniz(
    b: float = 0.5,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
    pairs: int = 10,
) -> CheckReport:
    """Square-function Leibniz bounds: the L^2 product estimate
    ||Dcal^b(fg)|| <= c(||f Dcal^b g|| + ||g Dcal^b f||) and its pointwise
    form Dcal^b(fg)(x) <= ||f||_inf Dcal^b g(x) + |g(x)| Dcal^b f(x).

    The pointwise form holds with constant one by the triangle inequality,
    so its slack is asserted up to quadrature tolerance; the L^2 ratio is
    fitted and must be refinement stable.  The same ratio computed with the
    multiplier derivative D^b in place of Dcal^b is recorded report-only
    (whether that variant holds is open)."""
    if not (0.0 < b < 1.0):
        raise ValueError(f"order must lie in (0,1), got b={b}")
    grid = grid or Grid(512, 20.0)
    corpus = corpus or Corpus(size=pairs)
    trend = []
    slack_min = np.inf
    dvariant = 0.0
    for g in (grid, grid.refine()):
        worst = 0.0
        fields = [m.realize(g) for m in corpus.members[: pairs + 2]]
        gauss = CorpusMember("gaussian", gaussian, True).realize(g)
        pair_list = [(gauss, gauss)] + list(zip(fields[::2], fields[1::2]))
        for fa, fb in pair_list:
            ratio, slack = _leibniz_pair_ratio(fa, fb, b)
            worst = max(worst, ratio)
            slack_min = min(slack_min, slack)
        trend.append(worst)
        # report-only: the open D^b variant of the product estimate
        prod = Field(g, gauss.values * gauss.values)
        lhs_d = _l2(riesz_deriv(prod, b))
        den_d = _l2(Field(g, gauss.values * riesz_deriv(gauss, b).values)) * 2.0
        dvariant = lhs_d / den_d
    pointwise_ok = slack_min >= -1e-8
    verdict = "pass" if (_stable(trend) and pointwise_ok) else "fail"
    return CheckReport(
        check_id="leibniz",
        params={"b": b, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=-min(slack_min, 0.0),
        refinement_trend=trend,
        verdict=verdict,
        notes={"pointwise_slack_min": slack_min, "riesz_variant_ratio": dvariant},
    )


# ------------------------------------------------- Gagliardo-Nirenberg

def gn_theta(alpha: float, beta: float, p: float, q: float, r: float) -> float:
    """Interpolation exponent from the scaling relation
    1/p - alpha = (1-theta)/r + theta (1/q - beta); rejects tuples with no
    admissible theta in [alpha/beta, 1]."""
    if not (0.0 <= alpha < beta):
        raise ValueError(f"orders must satisfy 0 <= alpha < beta, got {alpha}, {beta}")
    denom = (1.0 / q - beta) - 1.0 / r
    num = (1.0 / p - alpha) - 1.0 / r
    if denom == 0:
        if abs(num) > 1e-14:
            raise ValueError("no admissible interpolation exponent for these indices")
        theta = alpha / beta if beta > 0 else 0.0
    else:
        theta = num / denom
    lo = alpha / beta if beta > 0 else 0.0
    if not (lo - 1e-12 <= theta <= 1.0 + 1e-12):
        raise ValueError(
            f"interpolation exponent theta={theta:.6g} outside [{lo:.6g}, 1]"
        )
    return float(min(max(theta, lo), 1.0))


def check_gn(
    alpha: float = 0.5,
    beta: float = 1.0,
    p: float = 2.0,
    q: float = 2.0,
    r: float = 2.0,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """Fractional interpolation inequality
    ||D^alpha f||_p <= c ||f||_r^(1-theta) ||D^beta f||_q^theta, with the
    exponent theta fixed by scaling; the measured ratio must be invariant
    (5%) under the dilations f -> f(x/2), f(2x) and refinement stable."""
    for name, val in (("p", p), ("q", q), ("r", r)):
        if not (1.0 < val < np.inf):
            raise ValueError(f"exponent {name} must lie in (1, inf), got {val}")
    theta = gn_theta(alpha, beta, p, q, r)
    grid = grid or Grid(1024, 40.0)
    corpus = corpus or Corpus(size=10)

    def ratio_of(f: Field) -> float:
        num = lebesgue(riesz_deriv(f, alpha), p)
        den = lebesgue(f, r) ** (1.0 - theta) * lebesgue(riesz_deriv(f, beta), q) ** theta
        return num / den if den > 0 else 0.0

    trend = []
    for g in (grid, grid.refine()):
        worst = max(ratio_of(f) for _, f in corpus.realize(g))
        trend.append(worst)

    gauss = CorpusMember("gaussian", gaussian, True)
    base = ratio_of(gauss.realize(grid))
    scale_dev = max(
        abs(ratio_of(gauss.realize(grid, scale=lam)) / base - 1.0) for lam in (0.5, 2.0)
    )
    verdict = "pass" if (_stable(trend) and scale_dev <= 0.05) else "fail"
    return CheckReport(
        check_id="gn",
        params={
            "alpha": alpha,
            "beta": beta,
            "p": p,
            "q": q,
            "r": r,
            "theta": theta,
            "n": grid.n,
            "L": grid.length,
        },
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=scale_dev,
        refinement_trend=trend,
        verdict=verdict,
        notes={"scale_deviation": scale_dev},
    )


# --------------------------------------------------------- interpolation

def check_interpolation(
    a: float = 1.0,
    b: float = 1.0,
    theta: float = 0.5,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """Bracket-weight interpolation
    ||J^(theta a) (<x>^((1-theta) b) f)|| <= c ||<x>^b f||^(1-theta) ||J^a f||^theta,
    exact (ratio one) at the endpoints theta = 0, 1."""
    if not (a > 0 and b > 0):
        raise ValueError(f"orders must be positive, got a={a}, b={b}")
    if not (0.0 <= theta <= 1.0):
        raise ValueError(f"interpolation parameter must lie in [0,1], got {theta}")
    grid = grid or Grid(512, 20.0)
    corpus = corpus or Corpus(size=10)

    def ratio_of(g: Grid, f: Field) -> float:
        bracket = (1.0 + g.x**2) ** ((1.0 - theta) * b / 2.0)
        lhs = _l2(bessel_potential(Field(g, bracket * f.values), theta * a))
        rhs = weighted_l2(f, b, bracket=True, check_gate=False) ** (1.0 - theta) * _l2(
            bessel_potential(f, a)
        ) ** theta
        return lhs / rhs if rhs > 0 else 0.0

    trend = []
    for g in (grid, grid.refine()):
        worst = max(ratio_of(g, f) for _, f in corpus.realize(g))
        trend.append(worst)
    endpoint = theta in (0.0, 1.0)
    if endpoint:
        ok = abs(trend[0] - 1.0) <= 1e-12 and abs(trend[1] - 1.0) <= 1e-12
    else:
        ok = _stable(trend)
    return CheckReport(
        check_id="interpolation",
        params={"a": a, "b": b, "theta": theta, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=abs(trend[0] - 1.0) if endpoint else abs(trend[1] - trend[0]),
        refinement_trend=trend,
        verdict="pass" if ok else "fail",
    )


# ------------------------------------------- commutator via LP blocks

def check_commutator_leibniz(
    alpha: float = 0.5,
    p: float = 2.0,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """Commutator estimate ||D^alpha(fg) - f D^alpha g||_p controlled by
    the L^inf l^1_N block norm of D^alpha f times ||g||_2."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"order must lie in (0,1), got alpha={alpha}")
    if not (1.0 < p < np.inf):
        raise ValueError(f"exponent must lie in (1, inf), got p={p}")
    grid = grid or Grid(512, 20.0)
    corpus = corpus or Corpus(size=10)

    def ratio_of(g: Grid, fa: Field, fb: Field) -> float:
        prod = Field(g, fa.values * fb.values)
        lhs = lebesgue(
            riesz_deriv(prod, alpha) - Field(g, fa.values * riesz_deriv(fb, alpha).values),
            p,
        )
        rhs = lp_linf_l1(riesz_deriv(fa, alpha)) * _l2(fb)
        if rhs == 0:
            return 0.0 if lhs <= 1e-13 else np.inf
        return lhs / rhs

    trend = []
    for g in (grid, grid.refine()):
        fields = [m.realize(g) for m in corpus.members]
        pair_list = list(zip(fields[::2], fields[1::2]))
        worst = max(ratio_of(g, fa, fb) for fa, fb in pair_list)
        trend.append(worst)
    # constant f degenerates: both sides vanish
    const = Field(grid, np.full(grid.n, 0.7, dtype=complex))
    degen = ratio_of(grid, const, CorpusMember("gaussian", gaussian, True).realize(grid))
    verdict = "pass" if (_stable(trend) and degen == 0.0) else "fail"
    return CheckReport(
        check_id="commutator_leibniz",
        params={"alpha": alpha, "p": p, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=degen,
        refinement_trend=trend,
        verdict=verdict,
    )


# --------------------------------------------- Hilbert commutators

def check_commutator_hilbert(
    l: int = 1,
    m: int = 0,
    p: float = 2.0,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """Order-zero commutators d^l [H; a] d^m, measured against
    ||d^(l+m) a||_inf ||f||_p.  l+m = 1 is the first commutator case,
    l+m = 2 its extension."""
    if l < 0 or m < 0 or l + m < 1:
        raise ValueError("need l, m >= 0 with l + m >= 1")
    if not (1.0 < p < np.inf):
        raise ValueError(f"exponent must lie in (1, inf), got p={p}")
    grid = grid or Grid(512, 20.0)
    corpus = corpus or Corpus(size=10)

    def commutator_ratio(g: Grid, a_fn: Field, f: Field) -> float:
        dmf = derivative(f, m)
        inner = hilbert(Field(g, a_fn.values * dmf.values)) - Field(
            g, a_fn.values * hilbert(dmf).values
        )
        lhs = lebesgue(derivative(inner, l), p)
        rhs = lebesgue(derivative(a_fn, l + m), np.inf) * lebesgue(f, p)
        if rhs == 0:
            return 0.0 if lhs <= 1e-13 else np.inf
        return lhs / rhs

    trend = []
    for g in (grid, grid.refine()):
        a_fn = CorpusMember("gaussian", gaussian, True).realize(g)
        worst = max(commutator_ratio(g, a_fn, f) for _, f in corpus.realize(g))
        trend.append(worst)
    const_a = Field(grid, np.full(grid.n, 1.3, dtype=complex))
    probe = corpus.members[0].realize(grid)
    dmf = derivative(probe, m)
    comm = hilbert(Field(grid, const_a.values * dmf.values)) - Field(
        grid, const_a.values * hilbert(dmf).values
    )
    degen = lebesgue(derivative(comm, l), p)
    verdict = "pass" if (_stable(trend) and degen <= 1e-10) else "fail"
    return CheckReport(
        check_id="commutator_hilbert",
        params={"l": l, "m": m, "p": p, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=trend[-1],
        fitted_constant=trend[0],
        residual_max=degen,
        refinement_trend=trend,
        verdict=verdict,
    )


# ------------------------------------------------------ weighted Hilbert

def _weighted_lp(f_vals: np.ndarray, w: np.ndarray, h: float, p: float) -> float:
    return float((h * np.sum(w * np.abs(f_vals) ** p)) ** (1.0 / p))


def _ap_probes(g: Grid, w: Field, p: float):
    """Testing functions of the A_p necessity argument: w^(1-p') on dyadic
    intervals touching the origin, both sides, all scales."""
    pprime = p / (p - 1.0)
    dual = w.values.real ** (1.0 - pprime)
    probes = []
    levels = int(np.log2(g.n))
    for j in range(1, levels):
        width = g.n >> j
        mid = g.n // 2
        for sl in (slice(mid, mid + width), slice(mid - width, mid)):
            vals = np.zeros(g.n, dtype=complex)
            vals[sl] = dual[sl]
            probes.append(vals)
    return probes


def check_ap_hilbert(
    alpha: float = 0.5,
    p: float = 2.0,
    grid: Grid | None = None,
    corpus: Corpus | None = None,
) -> CheckReport:
    """Weighted boundedness of the Hilbert transform against the power
    weight |x|^alpha: inside the Muckenhoupt range alpha in (-1, p-1) both
    the A_p constant and the operator ratio are refinement stable; outside,
    the A_p constant grows under refinement (the measured operator ratio
    grows as well, at the square-root rate of the constant)."""
    if not (1.0 < p < np.inf):
        raise ValueError(f"exponent must lie in (1, inf), got p={p}")
    grid = grid or Grid(512, 10.0)
    # named canonical fields decay too slowly for the narrow default cell
    corpus = corpus or Corpus(size=10, include_named=False)
    inside = -1.0 < alpha < p - 1.0

    ap_trend = []
    ratio_trend = []
    for g in (grid, grid.refine()):
        w = power_weight(g, alpha)
        ap_trend.append(ap_constant(w, p).value)
        wr = w.values.real
        worst = 0.0
        probe_vals = [f.values for _, f in corpus.realize(g)]
        probe_vals += _ap_probes(g, w, p)
        # mean-free member: the sharp alpha = 0 case
        mean_free = probe_vals[0] - np.mean(probe_vals[0])
        probe_vals.append(mean_free)
        for vals in probe_vals:
            fnorm = _weighted_lp(vals, wr, g.h, p)
            if fnorm == 0:
                continue
            hnorm = _weighted_lp(hilbert(Field(g, vals)).values, wr, g.h, p)
            worst = max(worst, hnorm / fnorm)
        ratio_trend.append(worst)

    ap_growth = ap_trend[1] / ap_trend[0]
    ratio_growth = ratio_trend[1] / ratio_trend[0]
    if alpha == 0.0 and p == 2.0:
        ok = (
            abs(ap_trend[0] - 1.0) <= 1e-12
            and abs(ap_trend[1] - 1.0) <= 1e-12
            and ratio_trend[0] <= 1.0 + 1e-10
            and ratio_trend[1] <= 1.0 + 1e-10
        )
    elif inside:
        ok = _stable(ap_trend) and _stable(ratio_trend)
    else:
        ok = ap_growth >= 1.3 and ratio_growth > 1.0
    return CheckReport(
        check_id="ap_hilbert",
        params={"alpha": alpha, "p": p, "n": grid.n, "L": grid.length},
        corpus_size=len(corpus),
        worst_ratio=ratio_trend[-1],
        fitted_constant=ap_trend[-1],
        residual_max=abs(ratio_growth - 1.0),
        refinement_trend=ap_trend + ratio_trend,
        verdict="pass" if ok else "fail",
        notes={
            "ap_growth": ap_growth,
            "ratio_growth": ratio_growth,
            "inside_range": float(inside),
        },
    )


# ----------------------------------------------------------- Strichartz

def check_strichartz(
    q: float = 8.0,
    p: float = 4.0,
    T: float = 4.0,
    grid: Grid | None = None,
    u0: CorpusMember | None = None,
    nt: int = 129,
) -> CheckReport:
    """Truncated space-time bound of the free Schroedinger flow for an
    admissible pair 1/2 = 2/q + 1/p; the ratio against ||u0|| is invariant
    under u0 -> u0(2x), T -> T/4 (asserted at 5%), and the (inf, 2) pair
    returns exactly one by unitarity."""
    if abs(2.0 / q + 1.0 / p - 0.5) > 1e-12:
        raise ValueError(
            f"inadmissible pair (q={q}, p={p}): need 2/q + 1/p = 1/2 in one dimension"
        )
    grid = grid or Grid(1024, 40.0)
    u0 = u0 or CorpusMember("gaussian", gaussian, True)
    spec = EquationSpec.nls()

    def truncated_ratio(scale: float, horizon: float) -> float:
        f = u0.realize(grid, scale=scale)
        times = np.linspace(0.0, horizon, nt)
        norms = np.array(
            [lebesgue(linear_group(f, spec, t), p) for t in times]
        )
        if q == np.inf:
            value = float(np.max(norms))
        else:
            value = float(np.trapezoid(norms**q, times) ** (1.0 / q))
        return value / _l2(f)

    base = truncated_ratio(1.0, T)
    scaled = truncated_ratio(2.0, T / 4.0)
    deviation = abs(scaled / base - 1.0)
    ok = np.isfinite(base) and deviation <= 0.05
    if q == np.inf and p == 2.0:
        ok = ok and abs(base - 1.0) <= 1e-12
    return CheckReport(
        check_id="strichartz",
        params={"q": q, "p": p, "T": T, "n": grid.n, "L": grid.length},
        corpus_size=1,
        worst_ratio=base,
        fitted_constant=base,
        residual_max=deviation,
        refinement_trend=[base, scaled],
        verdict="pass" if ok else "fail",
    )


# -------------------------------------------------------------- scaling

def check_scaling(
    a: float = 9.0,
    grid: Grid | None = None,
    u0: CorpusMember | None = None,
) -> CheckReport:
    """Scaling-critical norm ||D^(s_c) u_lambda|| with
    u_lambda = lambda^(2/(a-1)) u0(lambda x) is lambda-independent at
    s_c = 1/2 - 2/(a-1) >= 0; asserted to 1e-3 over lambda in {1/2, 1, 2}.

    The wide default cell keeps the |xi|^(2 s_c) frequency-lattice cusp
    error below the tolerance."""
    spec = EquationSpec.nls(a=a)
    sc = spec.s_critical
    if sc < 0:
        raise ValueError(
            f"negative critical index s_c={sc:.3g} (a={a}) is out of scope; need a >= 5"
        )
    grid = grid or Grid(1024, 160.0)
    u0 = u0 or CorpusMember("gaussian", gaussian, True)
    lam_values = (0.5, 1.0, 2.0)
    norms = []
    for lam in lam_values:
        f = u0.realize(grid, scale=lam, check_gate=False)
        f = Field(grid, lam ** (2.0 / (a - 1.0)) * f.values)
        norms.append(_l2(riesz_deriv(f, sc)))
    spread = (max(norms) - min(norms)) / norms[1]
    return CheckReport(
        check_id="scaling",
        params={"a": a, "s_c": sc, "n": grid.n, "L": grid.length},
        corpus_size=1,
        worst_ratio=max(norms) / min(norms),
        fitted_constant=norms[1],
        residual_max=spread,
        refinement_trend=list(norms),
        verdict="pass" if spread <= 1e-3 else "fail",
    )


# ----------------------------------------------------------- persistence

def persistence_experiment(
    spec: EquationSpec,
    u0: Field,
    s: float,
    m: float,
    T: float,
    cfg: StepperConfig | None = None,
    snapshots: int = 11,
):
    """Evolve the full equation and track the persistence diagnostics:
    H^s norm, |x|^m and <x>^m weighted norms, the windowed local-smoothing
    proxy t^m || d^[m] D^(m-[m]) u ||_{L^2(|x|<L/4)}, and the zero moment.

    Verdict semantics: in the persistence regime m <= s the weighted norm
    must stay within 10x its initial value; for m > s the growth curves are
    emitted report-only."""
    cfg = cfg or StepperConfig(dt=1e-3)
    g = u0.grid
    ok, ratio = boundary_gate(u0, warn=True, context="persistence_experiment")
    base = standard_diagnostics(spec, s=s, m=m)
    m_int = int(np.floor(m))
    m_frac = m - m_int
    window = np.abs(g.x) <= g.length / 4.0

    def diagnostics(fld: Field, t: float) -> dict:
        out = base(fld, t)
        smooth = riesz_deriv(derivative(fld, m_int), m_frac)
        local = np.sqrt(g.h * np.sum(np.abs(smooth.values[window]) ** 2))
        out["smoothing_proxy"] = (abs(t) ** m) * float(local)
        # the initial gate already ran and its ratio is reported
        out["moment0"] = abs(moment(fld, 0, check_gate=False))
        return out

    times = list(np.linspace(0.0, T, snapshots))
    traj = evolve(u0, spec, cfg, T, snapshot_times=times, diagnostics=diagnostics)

    key = f"weighted_{m:g}"
    series = traj.diagnostics.get(key, np.array([np.nan]))
    initial = series[0] if len(series) else np.nan
    sup_growth = float(np.max(series) / max(initial, 1e-300)) if len(series) else np.inf
    in_regime = m <= s
    if traj.failed:
        verdict = "fail"
    elif in_regime:
        verdict = "pass" if sup_growth <= 10.0 else "fail"
    else:
        verdict = "report-only"
    report = CheckReport(
        check_id="persistence",
        params={
            "model": spec.model,
            "s": s,
            "m": m,
            "T": T,
            "n": g.n,
            "L": g.length,
        },
        corpus_size=1,
        worst_ratio=sup_growth,
        fitted_constant=initial if np.isfinite(initial) else 0.0,
        residual_max=float(np.max(traj.diagnostics.get("moment0", np.array([0.0])))),
        refinement_trend=list(series),
        verdict=verdict,
        notes={"gate_ratio": ratio, "in_regime": float(in_regime)},
    )
    return report, traj


def bo_domain_comparison(
    r_values=(2.0, 3.0),
    domains=(20.0, 40.0),
    n: int = 512,
    T: float = 0.5,
    cfg: StepperConfig | None = None,
) -> CheckReport:
    """Report-only diagnostic: weighted-norm growth of a zero-mean BO
    solution tracked at two weight exponents on nested domains.  Exponents
    below the persistence threshold behave domain-independently; larger
    exponents are domain-sensitive.  No finite computation certifies the
    dichotomy, so the verdict is always report-only."""
    cfg = cfg or StepperConfig(dt=1e-3)
    spec = EquationSpec.bo()
    growth = {}
    for L in domains:
        g = Grid(n, L)
        u0 = Field.from_function(g, gaussian_deriv)
        for r in r_values:
            _, traj = persistence_experiment(spec, u0, s=max(r_values), m=r, T=T, cfg=cfg)
            series = traj.diagnostics[f"weighted_{r:g}"]
            growth[(L, r)] = float(series[-1] / max(series[0], 1e-300))
    sensitivities = {
        r: abs(growth[(domains[1], r)] / growth[(domains[0], r)] - 1.0) for r in r_values
    }
    return CheckReport(
        check_id="bo_domains",
        params={"T": T, "n": n, "r_lo": r_values[0], "r_hi": r_values[1]},
        corpus_size=len(domains) * len(r_values),
        worst_ratio=max(sensitivities.values()),
        fitted_constant=min(sensitivities.values()),
        residual_max=0.0,
        refinement_trend=[growth[key] for key in sorted(growth)],
        verdict="report-only",
        notes={f"sensitivity_r{r:g}": v for r, v in sensitivities.items()},
    )


# ------------------------------------------------------------- registry

def _run_persistence(params: dict):
    params = dict(params)
    params.pop("seed", None)         # no random corpus in this experiment
    params.pop("corpus_size", None)
    model = params.pop("model", "nls")
    if model == "nls":
        spec = EquationSpec.nls(a=params.pop("a", 3.0), mu=int(params.pop("mu", 1)))
    elif model == "gkdv":
        spec = EquationSpec.gkdv(k=int(params.pop("k", 1)))
    else:
        spec = EquationSpec.bo()
    n = int(params.pop("n", 512))
    L = params.pop("L", 20.0)
    g = Grid(n, L)
    amp = params.pop("amplitude", 1.0)
    fn = gaussian_deriv if spec.model == "bo" else gaussian
    u0 = Field(g, amp * np.asarray(fn(g.x), dtype=complex))
    dt = params.pop("dt", 1e-3)
    report, _ = persistence_experiment(
        spec,
        u0,
        s=params.pop("s", 2.0),
        m=params.pop("m", 1.0),
        T=params.pop("T", 1.0),
        cfg=StepperConfig(dt=dt),
    )
    if params:
        raise ValueError(f"unknown persistence parameters: {sorted(params)}")
    return report


def _simple_runner(fn, allowed, int_keys=(), corpus_factory=None):
    def run(params: dict):
        params = dict(params)
        kwargs = {}
        grid_n = params.pop("n", None)
        grid_len = params.pop("L", None)
        seed = params.pop("seed", None)
        size = params.pop("corpus_size", None)
        for key in list(params):
            if key in allowed:
                val = params.pop(key)
                kwargs[key] = int(val) if key in int_keys else val
        if params:
            raise ValueError(f"unknown parameters: {sorted(params)}")
        if (grid_n is None) != (grid_len is None):
            raise ValueError("overriding the grid requires both n and L")
        if grid_n is not None:
            kwargs["grid"] = Grid(int(grid_n), float(grid_len))
        if corpus_factory is not None and (seed is not None or size is not None):
            kwargs["corpus"] = corpus_factory(
                int(seed) if seed is not None else DEFAULT_SEED,
                int(size) if size is not None else 20,
            )
        return fn(**kwargs)

    return run


_plain_corpus = lambda seed, size: Corpus(seed=seed, size=size)
_bare_corpus = lambda seed, size: Corpus(seed=seed, size=size, include_named=False)

CHECKS = {
    "chirp_stein": _simple_runner(check_chirp_stein, {"t", "b"}),
    "weighted_free": _simple_runner(check_weighted_free, {"t", "b"}, corpus_factory=_plain_corpus),
    "gamma_identity": _simple_runner(check_gamma_identity, {"b", "t"}),
    "leibniz": _simple_runner(check_leibniz, {"b"}, corpus_factory=_plain_corpus),
    "gn": _simple_runner(check_gn, {"alpha", "beta", "p", "q", "r"}, corpus_factory=_plain_corpus),
    "interpolation": _simple_runner(
        check_interpolation, {"a", "b", "theta"}, corpus_factory=_plain_corpus
    ),
    "commutator_leibniz": _simple_runner(
        check_commutator_leibniz, {"alpha", "p"}, corpus_factory=_plain_corpus
    ),
    "commutator_hilbert": _simple_runner(
        check_commutator_hilbert, {"l", "m", "p"}, int_keys=("l", "m"), corpus_factory=_plain_corpus
    ),
    "ap_hilbert": _simple_runner(check_ap_hilbert, {"alpha", "p"}, corpus_factory=_bare_corpus),
    "strichartz": _simple_runner(check_strichartz, {"q", "p", "T"}),
    "scaling": _simple_runner(check_scaling, {"a"}),
    "persistence": _run_persistence,
}


def run_check(name: str, params: dict | None = None) -> CheckReport:
    """Dispatch a named check with a flat parameter table (CLI entry)."""
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; available: {sorted(CHECKS)}")
    return CHECKS[name](dict(params or {}))
