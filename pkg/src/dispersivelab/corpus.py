"""Reproducible field corpora for the verification harness.

Members are analytic closures (Gaussian envelope x low-order polynomial x
random oscillations), so the same member can be realized on any grid, at a
dilated argument f(lambda x), or on a refined grid, which is what the
scale- and refinement-stability protocols need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Field, boundary_gate

__all__ = ["CorpusMember", "Corpus", "DEFAULT_SEED", "gaussian", "sech2", "gaussian_deriv"]

DEFAULT_SEED = 0x5EED


def gaussian(x):
    return np.exp(-(x**2))


def sech2(x):
    return 1.0 / np.cosh(x) ** 2


def gaussian_deriv(x):
    return -2.0 * x * np.exp(-(x**2))


@dataclass(frozen=True)
class CorpusMember:
    name: str
    fn: object            # callable x -> complex values
    real: bool

    def realize(self, grid, scale: float = 1.0, *, check_gate: bool = True) -> Field:
        """Sample the member, optionally dilated to f(scale * x)."""
        vals = np.asarray(self.fn(scale * grid.x), dtype=np.complex128)
        f = Field(grid, vals)
        if check_gate:
            ok, ratio = boundary_gate(f)
            if not ok:
                raise ValueError(
                    f"corpus member {self.name!r} fails the boundary gate "
                    f"(ratio {ratio:.2e}) on L={grid.length}, scale={scale}"
                )
        return f


def _random_member(rng, idx: int, real: bool, width_range, kmax: float) -> CorpusMember:
    w = rng.uniform(*width_range)
    poly = rng.normal(size=3) * np.array([1.0, 0.5, 0.125])
    n_modes = 4
    ks = rng.uniform(0.3, kmax, size=n_modes)
    if real:
        amps = rng.normal(size=n_modes)
        phis = rng.uniform(0, 2 * np.pi, size=n_modes)

        def fn(x, w=w, poly=poly, ks=ks, amps=amps, phis=phis):
            env = np.exp(-((x / w) ** 2))
            p = poly[0] + poly[1] * x + poly[2] * x**2
            osc = sum(a * np.cos(k * x + ph) for a, k, ph in zip(amps, ks, phis))
            return env * (1.0 + p) * (1.0 + osc)

    else:
        amps = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)

        def fn(x, w=w, poly=poly, ks=ks, amps=amps):
            env = np.exp(-((x / w) ** 2))
            p = poly[0] + poly[1] * x + poly[2] * x**2
            osc = sum(a * np.exp(1j * k * x) for a, k in zip(amps, ks))
            return env * (1.0 + p) * (1.0 + osc)

    kind = "real" if real else "cplx"
    return CorpusMember(f"rand_{kind}_{idx}", fn, real)


class Corpus:
    """Seeded corpus: random band-limited members plus named canonical fields."""

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        size: int = 20,
        *,
        real: bool = False,
        width_range=(1.0, 1.5),
        kmax: float = 3.0,
        include_named: bool = True,
    ):
        self.seed = seed
        self.size = size
        rng = np.random.default_rng(seed)
        members = [_random_member(rng, i, real, width_range, kmax) for i in range(size)]
        if include_named:
            members.append(CorpusMember("gaussian", gaussian, True))
            members.append(CorpusMember("sech2", sech2, True))
            members.append(CorpusMember("gaussian_deriv", gaussian_deriv, True))
        self.members = members

    def realize(self, grid, scale: float = 1.0):
        return [(m, m.realize(grid, scale)) for m in self.members]

    def __len__(self):
        return len(self.members)
