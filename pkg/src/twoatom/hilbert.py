"""Single-particle centre-of-mass Hilbert space on a uniform periodic 1-D grid.

Natural units throughout (hbar = 1). A wavefunction is stored as its grid
amplitudes ``amp`` with the continuum normalisation ``sum(|amp|**2) * dx == 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GridMismatch, GridTooCoarse, PacketTruncated, WrapAround

NORM_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``x_j = x_min + j*dx``, ``j = 0..n_points-1`` (periodic)."""

    n_points: int
    x_min: float
    x_max: float

    def __post_init__(self):
        n = int(self.n_points)
        if n < 2 or n & (n - 1):
            raise ValueError(f"n_points must be a power of two >= 2, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        x = self.x_min + self.dx * np.arange(self.n_points)
        x.flags.writeable = False
        return x

    @cached_property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT ordering."""
        k = 2 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)
        k.flags.writeable = False
        return k


class InternalLabel(enum.Enum):
    GROUND = "g"
    EXCITED = "e"


@dataclass(frozen=True, eq=False)
class CMWaveFunction:
    grid: GridSpec
    amp: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amp, dtype=complex)
        if amp.shape != (self.grid.n_points,):
            raise ValueError(f"amp must have shape ({self.grid.n_points},), got {amp.shape}")
        amp.flags.writeable = False
        object.__setattr__(self, "amp", amp)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amp) ** 2) * self.grid.dx)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def normalized(self) -> CMWaveFunction:
        n2 = self.norm_sq
        if n2 == 0:
            raise ZeroDivisionError("cannot normalise the zero vector")
        return CMWaveFunction(self.grid, self.amp / np.sqrt(n2))

    def scaled(self, factor: complex) -> CMWaveFunction:
        return CMWaveFunction(self.grid, factor * self.amp)

    def __add__(self, other: CMWaveFunction) -> CMWaveFunction:
        _check_grids(self, other)
        return CMWaveFunction(self.grid, self.amp + other.amp)

    def __sub__(self, other: CMWaveFunction) -> CMWaveFunction:
        _check_grids(self, other)
        return CMWaveFunction(self.grid, self.amp - other.amp)

    def moments(self) -> tuple[float, float]:
        """Return (mean, variance) of the position density."""
        rho = np.abs(self.amp) ** 2
        rho = rho / rho.sum()
        mean = float(np.dot(rho, self.grid.x))
        return mean, float(np.dot(rho, (self.grid.x - mean) ** 2))


@dataclass(frozen=True, eq=False)
class AtomState:
    cm: CMWaveFunction
    internal: InternalLabel = InternalLabel.GROUND


def _check_grids(a: CMWaveFunction, b: CMWaveFunction) -> None:
    if a.grid != b.grid:
        raise GridMismatch(f"{a.grid} != {b.grid}")


def _boundary_ratio(amp: np.ndarray) -> float:
    peak = np.max(np.abs(amp))
    if peak == 0:
        return 0.0
    return max(abs(amp[0]), abs(amp[-1])) / peak


def make_gaussian(
    grid: GridSpec,
    center: float,
    sigma: float,
    k0: float = 0.0,
    boundary_tol: float | None = 1e-8,
) -> CMWaveFunction:
    """Normalised Gaussian packet with position variance ``sigma**2``.

    ``amp(x) ~ exp(-(x - center)**2 / (4 sigma**2)) * exp(i k0 x)``.

    Raises
    ------
    GridTooCoarse
        If ``sigma < 4*dx``.
    PacketTruncated
        If the edge amplitude exceeds ``boundary_tol`` times the peak.
        Pass ``boundary_tol=None`` to skip the check.
    """
    if sigma < 4 * grid.dx:
        raise GridTooCoarse(f"sigma={sigma} < 4*dx={4 * grid.dx}")
    x = grid.x
    amp = np.exp(-((x - center) ** 2) / (4 * sigma**2) + 1j * k0 * x)
    if boundary_tol is not None and _boundary_ratio(amp) > boundary_tol:
        raise PacketTruncated(
            f"edge amplitude {_boundary_ratio(amp):.3g} of peak exceeds {boundary_tol:g}"
        )
    return CMWaveFunction(grid, amp).normalized()


def inner(a: CMWaveFunction, b: CMWaveFunction) -> complex:
    """<a|b> = sum(conj(a) * b) * dx."""
    _check_grids(a, b)
    return complex(np.vdot(a.amp, b.amp) * a.grid.dx)


def momentum_kick(psi: CMWaveFunction, k: float) -> CMWaveFunction:
    """Multiply by the plane wave exp(i k x)."""
    if k == 0:
        return psi
    return CMWaveFunction(psi.grid, psi.amp * np.exp(1j * k * psi.grid.x))


def free_propagate(
    psi: CMWaveFunction, t: float, mass: float, leak_tol: float | None = 1e-6
) -> CMWaveFunction:
    """Exact free evolution for time ``t`` via the discrete Fourier basis.

    Raises ``WrapAround`` if the propagated packet reaches the periodic
    boundary (edge amplitude above ``leak_tol`` times the peak).
    """
    if t == 0:
        return psi
    k = psi.grid.k
    amp = np.fft.ifft(np.fft.fft(psi.amp) * np.exp(-0.5j * k**2 * t / mass))
    if leak_tol is not None and _boundary_ratio(amp) > leak_tol:
        raise WrapAround(
            f"propagated edge amplitude {_boundary_ratio(amp):.3g} of peak exceeds {leak_tol:g}"
        )
    return CMWaveFunction(psi.grid, amp)
