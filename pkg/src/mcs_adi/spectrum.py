"""Fourier symbols of the finite-difference splitting on a periodic grid.

The PDE is the 2D convection-diffusion equation

    u_t = d11 u_xx + (d12 + d21) u_xy + d22 u_yy + c1 u_x + c2 u_y

discretized with second-order central differences on a uniform periodic
grid.  The splitting assigns the mixed derivative to the explicit operator
(index 0) and the unidirectional parts to the two implicit operators
(indices 1 and 2).  On the periodic grid the three operators share the
Fourier basis, so one step of either scheme acts diagonally; the scaled
eigenvalues (z0, z1, z2) of a mode feed straight into `stability`.

The mixed stencil is the beta-weighted average of the two classical
four-point cross stencils; its symbol is real,

    z0 = (d12 + d21) * dt/(dx*dy) * (-sin(phi1)sin(phi2)
                                     + beta (1-cos(phi1))(1-cos(phi2))),

and for any positive-semidefinite diffusion matrix and |beta| <= 1 it obeys
the cone condition with respect to z1 and z2 -- `verify_cone_all_modes`
measures the margin over every mode of a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stability import DomainError, SpectralPoint, lemma2_gap  # noqa: F401

#: Relative tolerance of the positive-semidefiniteness validation.
PSD_RTOL = 1e-12


@dataclass(frozen=True)
class PdeCoefficients:
    """Constant coefficients of the convection-diffusion operator.

    The diffusion matrix [[d11, d12], [d21, d22]] must be positive
    semidefinite (only the sum d12 + d21 enters the discretization, but the
    matrix itself is what the well-posedness of the PDE constrains).
    """

    c1: float = 0.0
    c2: float = 0.0
    d11: float = 0.0
    d12: float = 0.0
    d21: float = 0.0
    d22: float = 0.0

    def __post_init__(self):
        scale = max(abs(self.d11), abs(self.d22), abs(self.d12), abs(self.d21), 1.0)
        lin_tol = PSD_RTOL * scale
        if self.d11 < -lin_tol or self.d22 < -lin_tol:
            raise DomainError(
                f"diagonal diffusion must be nonnegative, got d11={self.d11!r} d22={self.d22!r}"
            )
        # PSD of the symmetric part: d11*d22 >= ((d12+d21)/2)^2
        det = self.d11 * self.d22 - 0.25 * self.mixed_sum * self.mixed_sum
        if det < -PSD_RTOL * scale * scale:
            raise DomainError(
                "diffusion matrix is not positive semidefinite "
                f"(d11*d22 - ((d12+d21)/2)^2 = {det!r})"
            )

    @property
    def mixed_sum(self) -> float:
        """Total mixed-derivative coefficient d12 + d21."""
        return self.d12 + self.d21


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid with the mixed-stencil weight beta.

    beta = 0 is the plain four-point cross stencil; beta = +/-1 adds the
    corner-averaged correction that keeps the symbol inside the cone with a
    one-sided touch.
    """

    m1: int
    m2: int
    dx: float
    dy: float
    beta: float = 0.0

    def __post_init__(self):
        if self.m1 < 3 or self.m2 < 3:
            raise DomainError(f"need at least 3 points per direction, got {self.m1}x{self.m2}")
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise DomainError(f"grid spacings must be positive, got dx={self.dx!r} dy={self.dy!r}")
        if not -1.0 <= self.beta <= 1.0:
            raise DomainError(f"beta must lie in [-1, 1], got {self.beta!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    def symbol_scales(self, dt: float) -> tuple[float, float, float]:
        """Parabolic mesh ratios (dt/dx^2, dt/dy^2, dt/(dx*dy))."""
        return (dt / (self.dx * self.dx), dt / (self.dy * self.dy), dt / (self.dx * self.dy))


@dataclass(frozen=True)
class FourierMode:
    """Integer wavenumber pair of one discrete Fourier mode."""

    k1: int
    k2: int

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise DomainError(f"wavenumbers must be nonnegative, got {(self.k1, self.k2)}")

    def phases(self, grid: GridSpec) -> tuple[float, float]:
        """Per-cell phase angles (2 pi k1 / m1, 2 pi k2 / m2)."""
        if self.k1 >= grid.m1 or self.k2 >= grid.m2:
            raise DomainError(
                f"mode {(self.k1, self.k2)} does not fit grid {grid.m1}x{grid.m2}"
            )
        return (2.0 * math.pi * self.k1 / grid.m1, 2.0 * math.pi * self.k2 / grid.m2)


def fourier_symbols(
    coeffs: PdeCoefficients, grid: GridSpec, dt: float, mode: FourierMode
) -> SpectralPoint:
    """Scaled eigenvalues (z0, z1, z2) of one Fourier mode.

    z0 is real (the mixed stencil is symmetric under the simultaneous point
    reflection); z1 and z2 carry the convection terms in their imaginary
    parts.
    """
    phi1, phi2 = mode.phases(grid)
    a1, a2, b = grid.symbol_scales(dt)
    z0 = coeffs.mixed_sum * b * (
        -math.sin(phi1) * math.sin(phi2)
        + grid.beta * (1.0 - math.cos(phi1)) * (1.0 - math.cos(phi2))
    )
    z1 = complex(
        -2.0 * coeffs.d11 * a1 * (1.0 - math.cos(phi1)),
        coeffs.c1 * dt / grid.dx * math.sin(phi1),
    )
    z2 = complex(
        -2.0 * coeffs.d22 * a2 * (1.0 - math.cos(phi2)),
        coeffs.c2 * dt / grid.dy * math.sin(phi2),
    )
    return SpectralPoint(z0, z1, z2)


def fourier_symbol_grid(coeffs: PdeCoefficients, grid: GridSpec, dt: float):
    """Symbols of every mode at once.

    Returns (z0, z1, z2) arrays of shape (m1, m2); z0 is a real float array,
    z1 and z2 are complex.  Row/column order matches wavenumbers
    k1 = 0..m1-1, k2 = 0..m2-1.
    """
    phi1 = 2.0 * math.pi * np.arange(grid.m1) / grid.m1
    phi2 = 2.0 * math.pi * np.arange(grid.m2) / grid.m2
    s1, c1_ = np.sin(phi1)[:, None], np.cos(phi1)[:, None]
    s2, c2_ = np.sin(phi2)[None, :], np.cos(phi2)[None, :]
    a1, a2, b = grid.symbol_scales(dt)
    z0 = coeffs.mixed_sum * b * (-s1 * s2 + grid.beta * (1.0 - c1_) * (1.0 - c2_))
    z1 = -2.0 * coeffs.d11 * a1 * (1.0 - c1_) + 1j * (coeffs.c1 * dt / grid.dx) * s1
    z2 = -2.0 * coeffs.d22 * a2 * (1.0 - c2_) + 1j * (coeffs.c2 * dt / grid.dy) * s2
    z1 = np.broadcast_to(z1, (grid.m1, grid.m2))
    z2 = np.broadcast_to(z2, (grid.m1, grid.m2))
    return z0, z1, z2


@dataclass(frozen=True)
class ConeReport:
    """Outcome of the all-modes cone check of one discretization."""

    min_margin: float
    worst_mode: FourierMode

    @property
    def ok(self) -> bool:
        return self.min_margin >= 0.0


def verify_cone_all_modes(coeffs: PdeCoefficients, grid: GridSpec, dt: float) -> ConeReport:
    """Minimum of 2*sqrt(Re z1 * Re z2) - |z0| over every Fourier mode.

    A nonnegative minimum certifies that the discretization feeds only
    cone-interior (or boundary) triplets to the scheme.  Ties resolve to the
    lexicographically first (k1, k2).
    """
    z0, z1, z2 = fourier_symbol_grid(coeffs, grid, dt)
    margin = 2.0 * np.sqrt(np.maximum((-z1.real) * (-z2.real), 0.0)) - np.abs(z0)
    flat = int(np.argmin(margin))
    k1, k2 = divmod(flat, grid.m2)
    return ConeReport(float(margin[k1, k2]), FourierMode(k1, k2))
