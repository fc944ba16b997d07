"""Periodic spectral substrate: grid, fields, transforms, multipliers, quadrature.

Conventions used throughout the package:

* the spatial domain is the uniform lattice x_j = -L + j*h, j = 0..n-1,
  h = 2L/n, on the periodic cell [-L, L);
* frequencies are angular, xi_k = pi*k/L with k = -n/2..n/2-1, stored in
  FFT order.  With this convention |xi| is the symbol of the half-order
  Laplacian stack (D^b has symbol |xi|^b, d/dx has symbol i*xi) and
  D^b o D^c = D^(b+c) holds exactly on the lattice;
* spectral coefficients carry the physical normalization
  coeffs_k = h * sum_j f_j exp(-i xi_k x_j), a trapezoid approximation of
  the line Fourier transform, so Parseval reads
  h*sum|f_j|^2 = sum|coeffs_k|^2 / (2L).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "SpectralField",
    "BoundaryWarning",
    "to_spectral",
    "to_physical",
    "apply_multiplier",
    "integrate",
    "boundary_gate",
]

BOUNDARY_FRACTION = 0.1    # outer fraction of the cell inspected by the gate
BOUNDARY_TOL = 1e-10       # max |f| there must stay below tol * max |f|


class BoundaryWarning(UserWarning):
    """A field carries non-negligible mass near the periodic boundary."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-L, L) with its dual frequency lattice."""

    n: int
    length: float  # half-length L of the cell [-L, L)

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1) != 0:
            raise ValueError(f"grid size must be a power of two >= 8, got n={self.n}")
        if not (self.length > 0 and np.isfinite(self.length)):
            raise ValueError(f"half-length must be positive and finite, got L={self.length}")

    @property
    def h(self) -> float:
        return 2.0 * self.length / self.n

    @cached_property
    def x(self) -> np.ndarray:
        return -self.length + self.h * np.arange(self.n)

    @cached_property
    def xi(self) -> np.ndarray:
        # 2*pi*fftfreq(n, h) = pi*k/L in FFT order; index n/2 is the lone
        # Nyquist mode at -pi*n/(2L).
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.h)

    @property
    def xi_max(self) -> float:
        return np.pi * (self.n // 2) / self.length

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(+i xi_k L) = (-1)^k relating index-space FFT output to the
        # physically normalized transform anchored at x_0 = -L.
        return np.where(np.arange(self.n) % 2 == 0, 1.0, -1.0)

    def refine(self) -> "Grid":
        """Same cell, twice the resolution."""
        return Grid(2 * self.n, self.length)


@dataclass
class Field:
    """Complex samples of a function bound to a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {vals.shape}")
        if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
            raise ValueError("field samples must be finite")
        self.values = vals

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Field":
        return cls(grid, np.asarray(fn(grid.x), dtype=np.complex128))

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.values.imag)) == 0.0)

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())

    def __add__(self, other):
        if isinstance(other, Field):
            return Field(self.grid, self.values + other.values)
        return Field(self.grid, self.values + other)

    def __sub__(self, other):
        if isinstance(other, Field):
            return Field(self.grid, self.values - other.values)
        return Field(self.grid, self.values - other)

    def __mul__(self, other):
        if isinstance(other, Field):
            return Field(self.grid, self.values * other.values)
        return Field(self.grid, self.values * other)

    __rmul__ = __mul__


@dataclass
class SpectralField:
    """Physically normalized Fourier coefficients on the dual lattice."""

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} coefficients, got shape {c.shape}")
        self.coeffs = c


def to_spectral(f: Field) -> SpectralField:
    """Forward transform; coeffs_k approximate the line transform at xi_k."""
    g = f.grid
    return SpectralField(g, g.h * g._phase * np.fft.fft(f.values))


def to_physical(fhat: SpectralField) -> Field:
    """Inverse transform; exact round trip with :func:`to_spectral`."""
    g = fhat.grid
    return Field(g, np.fft.ifft(g._phase * fhat.coeffs) / g.h)


def apply_multiplier(f: Field, m, *, zero_nyquist: bool | None = None) -> Field:
    """Apply a frequency multiplier m(xi) to a field.

    ``m`` is a callable evaluated on the grid's frequency lattice or a
    precomputed array of length n.  The physical-normalization phase cancels
    against its inverse, so the raw FFT pair is used here.

    Odd multipliers (m(-xi) = -m(xi)) get their Nyquist mode zeroed: that
    frequency has no positive partner on the lattice and would otherwise
    break realness of real inputs.  Pass ``zero_nyquist`` to override the
    automatic detection.
    """
    g = f.grid
    mvals = np.asarray(m(g.xi) if callable(m) else m, dtype=np.complex128)
    if mvals.shape != (g.n,):
        raise ValueError(f"multiplier must have {g.n} values, got shape {mvals.shape}")
    bad = ~np.isfinite(mvals)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise ValueError(
            f"multiplier is not finite at xi={g.xi[k]:.6g} (index {k}); "
            "singular multipliers must define m there explicitly"
        )
    if zero_nyquist is None:
        zero_nyquist = _is_odd_multiplier(mvals, g.n)
    fhat = np.fft.fft(f.values)
    out = mvals * fhat
    if zero_nyquist:
        out[g.n // 2] = 0.0
    result = np.fft.ifft(out)
    if f.is_real and _is_hermitian_multiplier(mvals, g.n):
        result = result.real.astype(np.complex128)
    return Field(g, result)


def _is_odd_multiplier(mvals: np.ndarray, n: int) -> bool:
    scale = np.max(np.abs(mvals))
    if scale == 0.0:
        return False
    pos = mvals[1 : n // 2]
    neg = mvals[-1 : n // 2 : -1]
    return (
        np.max(np.abs(pos + neg)) <= 1e-13 * scale
        and abs(mvals[0]) <= 1e-13 * scale
    )


def _is_hermitian_multiplier(mvals: np.ndarray, n: int) -> bool:
    # m(-xi) = conj(m(xi)) together with a real (or zeroed) Nyquist value
    # maps real fields to real fields.
    scale = np.max(np.abs(mvals))
    if scale == 0.0:
        return True
    pos = mvals[1 : n // 2]
    neg = mvals[-1 : n // 2 : -1]
    return (
        np.max(np.abs(pos - np.conj(neg))) <= 1e-13 * scale
        and abs(mvals[0].imag) <= 1e-13 * scale
    )


def integrate(f: Field) -> complex:
    """Trapezoid rule h*sum f(x_j); spectrally accurate for smooth periodic f."""
    return complex(f.grid.h * np.sum(f.values))


def boundary_gate(f: Field, *, warn: bool = False, context: str = "") -> tuple[bool, float]:
    """Check that a field is negligible on the outer 10% of the cell.

    Returns ``(ok, ratio)`` where ratio = max |f| on |x| >= 0.9 L divided by
    the global max.  Whole-line norms computed on the periodic cell are only
    meaningful when the gate passes.
    """
    g = f.grid
    mags = np.abs(f.values)
    peak = float(np.max(mags))
    if peak == 0.0:
        return True, 0.0
    outer = np.abs(g.x) >= (1.0 - BOUNDARY_FRACTION) * g.length
    ratio = float(np.max(mags[outer]) / peak)
    ok = ratio < BOUNDARY_TOL
    if warn and not ok:
        where = f" in {context}" if context else ""
        warnings.warn(
            f"boundary-negligibility gate violated{where}: "
            f"outer-cell ratio {ratio:.3e} >= {BOUNDARY_TOL:.0e}",
            BoundaryWarning,
            stacklevel=2,
        )
    return ok, ratio
