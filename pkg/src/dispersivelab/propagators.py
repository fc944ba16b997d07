"""Model equations, exact linear groups, and the integrating-factor stepper.

Sign conventions, fixed here and used everywhere: with the transform
fhat(xi) = int f exp(-i xi x) dx,

* NLS      i u_t + u_xx = mu |u|^(a-1) u   has linear group exp(-i t xi^2),
* gKdV     u_t + u_xxx + u^k u_x = 0       has linear group exp(+i t xi^3),
* BO       u_t + H u_xx + u u_x = 0        has linear group exp(-i t xi|xi|).

The nonlinearities are advanced by a classical RK4 on the integrating-factor
transformed system, so the linear flow is exact and the splitting error sits
entirely in the nonlinear term.  gKdV and BO use the conservative form
-d/dx(u^(k+1))/(k+1), which keeps the discrete L^2 pairing skew-symmetric.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .spectral import Field, Grid

__all__ = [
    "EquationSpec",
    "Trajectory",
    "StepperConfig",
    "CFLWarning",
    "linear_group",
    "nonlinear_step",
    "evolve",
]


class CFLWarning(UserWarning):
    """The step size exceeds the transport heuristic h / (pi max|u|)."""


_GKDV_LWP = {1: -0.75, 2: 0.25, 3: -1.0 / 6.0}


@dataclass(frozen=True)
class EquationSpec:
    """One of the three model equations with its parameters."""

    model: str             # 'nls' | 'gkdv' | 'bo'
    a: float = 3.0         # NLS nonlinearity power, a > 1
    mu: int = 1            # NLS sign, +1 defocusing / -1 focusing
    k: int = 1             # gKdV nonlinearity degree, k >= 1

    def __post_init__(self):
        if self.model not in ("nls", "gkdv", "bo"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "nls":
            if not self.a > 1:
                raise ValueError(f"NLS power must satisfy a > 1, got a={self.a}")
            if self.mu not in (-1, 1):
                raise ValueError(f"NLS sign must be +-1, got mu={self.mu}")
        if self.model == "gkdv" and (self.k < 1 or self.k != int(self.k)):
            raise ValueError(f"gKdV degree must be a positive integer, got k={self.k}")

    @classmethod
    def nls(cls, a: float = 3.0, mu: int = 1) -> "EquationSpec":
        return cls("nls", a=a, mu=mu)

    @classmethod
    def gkdv(cls, k: int = 1) -> "EquationSpec":
        return cls("gkdv", k=k)

    @classmethod
    def bo(cls) -> "EquationSpec":
        return cls("bo")

    @property
    def is_real(self) -> bool:
        """gKdV and BO propagate real fields."""
        return self.model in ("gkdv", "bo")

    @property
    def s_critical(self) -> float:
        """NLS scaling-critical index 1/2 - 2/(a-1) in one dimension."""
        if self.model != "nls":
            raise ValueError("scaling index is defined for the NLS model")
        return 0.5 - 2.0 / (self.a - 1.0)

    @property
    def s_lwp(self) -> float:
        """Known local well-posedness threshold for the gKdV family."""
        if self.model != "gkdv":
            raise ValueError("the LWP table covers the gKdV family")
        return _GKDV_LWP.get(self.k, (self.k - 4.0) / (2.0 * self.k))

    def group_phase(self, xi: np.ndarray, t: float) -> np.ndarray:
        """Unitary multiplier of the linear group at time t."""
        if self.model == "nls":
            return np.exp(-1j * t * xi**2)
        if self.model == "gkdv":
            return np.exp(1j * t * xi**3)
        return np.exp(-1j * t * xi * np.abs(xi))


@dataclass
class Trajectory:
    """Time-ordered snapshots of a solution with per-snapshot diagnostics."""

    spec: EquationSpec
    times: np.ndarray
    snapshots: list
    diagnostics: dict = field(default_factory=dict)
    failed: bool = False
    failure_time: float | None = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if len(self.times) != len(self.snapshots):
            raise ValueError("times and snapshots must have the same length")
        if len(self.snapshots) > 1:
            g0 = self.snapshots[0].grid
            if any(s.grid is not g0 and s.grid != g0 for s in self.snapshots):
                raise ValueError("all snapshots must share one grid")

    @property
    def grid(self) -> Grid:
        return self.snapshots[0].grid


@dataclass(frozen=True)
class StepperConfig:
    dt: float
    dealias: float = 2.0 / 3.0
    method: str = "ifrk4"
    linear_only: bool = False   # zero the nonlinearity (consistency runs)
    cfl_warn: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"step size must be positive, got dt={self.dt}")
        if not 0 < self.dealias <= 1:
            raise ValueError(f"dealias fraction must lie in (0, 1], got {self.dealias}")
        if self.method != "ifrk4":
            raise ValueError(f"unknown stepping method {self.method!r}")


def linear_group(f: Field, spec: EquationSpec, t: float) -> Field:
    """Exact linear flow U(t) of the model's dispersive part."""
    g = f.grid
    out = np.fft.ifft(spec.group_phase(g.xi, t) * np.fft.fft(f.values))
    return Field(g, out)


class _Stepper:
    """Integrating-factor RK4 on the Fourier coefficients."""

    def __init__(self, grid: Grid, spec: EquationSpec, cfg: StepperConfig):
        self.grid = grid
        self.spec = spec
        self.cfg = cfg
        xi = grid.xi
        self.xi = xi
        self.mask = (np.abs(xi) <= cfg.dealias * grid.xi_max + 1e-12).astype(float)
        dt = cfg.dt
        self.E = spec.group_phase(xi, dt / 2.0)   # half-step linear flow
        self.E2 = spec.group_phase(xi, dt)

    def nonlinear_hat(self, u_hat: np.ndarray) -> np.ndarray:
        if self.cfg.linear_only:
            return np.zeros_like(u_hat)
        spec = self.spec
        u = np.fft.ifft(u_hat)
        if spec.model == "nls":
            w = np.abs(u) ** (spec.a - 1.0) * u
            return -1j * spec.mu * self.mask * np.fft.fft(w)
        k = spec.k if spec.model == "gkdv" else 1
        w = u.real ** (k + 1)
        return -(1j * self.xi) * self.mask * np.fft.fft(w) / (k + 1.0)

    def step(self, u_hat: np.ndarray) -> np.ndarray:
        dt, E, E2 = self.cfg.dt, self.E, self.E2
        n1 = self.nonlinear_hat(u_hat)
        s1 = E * (u_hat + 0.5 * dt * n1)
        n2 = self.nonlinear_hat(s1)
        s2 = E * u_hat + 0.5 * dt * n2
        n3 = self.nonlinear_hat(s2)
        s3 = E2 * u_hat + dt * E * n3
        n4 = self.nonlinear_hat(s3)
        return E2 * u_hat + dt / 6.0 * (E2 * n1 + 2.0 * E * (n2 + n3) + n4)

    def check_cfl(self, u_hat: np.ndarray):
        if not self.cfg.cfl_warn or self.cfg.linear_only:
            return
        umax = float(np.max(np.abs(np.fft.ifft(u_hat))))
        bound = self.grid.h / (np.pi * max(umax, 1e-30))
        if self.cfg.dt > bound:
            warnings.warn(
                f"dt={self.cfg.dt:.3g} exceeds the transport heuristic "
                f"h/(pi max|u|)={bound:.3g}",
                CFLWarning,
                stacklevel=3,
            )


def nonlinear_step(f: Field, spec: EquationSpec, cfg: StepperConfig) -> Field:
    """One integrating-factor RK4 step of the full equation.

    Raises on non-finite output; callers doing long runs should prefer
    :func:`evolve`, which converts the failure into a truncated trajectory.
    """
    from .spectral import boundary_gate

    boundary_gate(f, warn=True, context="nonlinear_step")
    stepper = _Stepper(f.grid, spec, cfg)
    stepper.check_cfl(np.fft.fft(f.values))
    out_hat = stepper.step(np.fft.fft(f.values))
    out = np.fft.ifft(out_hat)
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise FloatingPointError("time step produced non-finite values")
    if spec.is_real and f.is_real:
        out = out.real.astype(complex)
    return Field(f.grid, out)


def evolve(
    u0: Field,
    spec: EquationSpec,
    cfg: StepperConfig,
    T: float,
    snapshot_times=None,
    diagnostics=None,
) -> Trajectory:
    """March u0 to time T, recording snapshots and per-snapshot diagnostics.

    Snapshot times are snapped to the nearest step multiple (the actual
    times are stored).  ``diagnostics`` is an optional callable
    ``(field, t) -> dict of named reals``.  A mid-run NaN truncates the
    trajectory and sets the failure marker instead of raising.
    """
    if T < 0:
        raise ValueError("final time must be nonnegative")
    g = u0.grid
    was_real = spec.is_real and u0.is_real
    n_steps = int(round(T / cfg.dt)) if T > 0 else 0
    if snapshot_times is None:
        snapshot_times = [0.0, T] if T > 0 else [0.0]
    snap_steps = sorted({min(max(int(round(t / cfg.dt)), 0), n_steps) for t in snapshot_times})
    if any(t < -1e-12 or t > T + 1e-12 for t in snapshot_times):
        raise ValueError("snapshot times must lie in [0, T]")

    stepper = _Stepper(g, spec, cfg)
    u_hat = np.fft.fft(u0.values)
    stepper.check_cfl(u_hat)

    def snap_field(vec_hat):
        vals = np.fft.ifft(vec_hat)
        if was_real:
            vals = vals.real.astype(complex)
        return Field(g, vals)

    times, snaps, diag_rows = [], [], []
    failed = False
    failure_time = None
    step_idx = 0
    pending = list(snap_steps)

    def record(idx, fld):
        t = idx * cfg.dt
        times.append(t)
        snaps.append(fld)
        diag_rows.append(diagnostics(fld, t) if diagnostics is not None else {})

    if pending and pending[0] == 0:
        record(0, u0.copy())
        pending.pop(0)
    while step_idx < n_steps and pending:
        u_hat = stepper.step(u_hat)
        step_idx += 1
        if not np.all(np.isfinite(u_hat.real)) or not np.all(np.isfinite(u_hat.imag)):
            failed = True
            failure_time = step_idx * cfg.dt
            break
        if pending and pending[0] == step_idx:
            record(step_idx, snap_field(u_hat))
            pending.pop(0)

    diag = {}
    if diag_rows and diag_rows[0]:
        for key in diag_rows[0]:
            diag[key] = np.array([row[key] for row in diag_rows])
    return Trajectory(
        spec=spec,
        times=np.array(times),
        snapshots=snaps,
        diagnostics=diag,
        failed=failed,
        failure_time=failure_time,
    )
