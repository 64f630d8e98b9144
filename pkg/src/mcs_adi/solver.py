"""Periodic finite-difference splitting and the ADI time steppers.

The spatial operator of the convection-diffusion problem splits into

    A0  nine-point mixed-derivative stencil (treated explicitly),
    A1  x-direction diffusion + convection (tridiagonal, treated implicitly),
    A2  y-direction diffusion + convection (tridiagonal, treated implicitly),

all on a uniform periodic grid, second-order central differences.  One MCS
step with parameter theta advances U by

    Y0   = U + dt (A0 + A1 + A2) U
    Yj   = solve(I - theta dt Aj, Y_{j-1} - theta dt Aj U)        j = 1, 2
    Yh0  = Y0 + theta dt A0 (Y2 - U)
    Yt0  = Yh0 + (1/2 - theta) dt (A0 + A1 + A2)(Y2 - U)
    Ytj  = solve(I - theta dt Aj, Yt_{j-1} - theta dt Aj U)       j = 1, 2
    U+   = Yt2

and the Douglas step is the first three lines alone.  The implicit stages
are constant-coefficient cyclic tridiagonal systems, solved by the
Sherman-Morrison-corrected Thomas algorithm with a dense fallback when the
pivot-free factorization breaks down.  Every directional solve is verified
a posteriori by a cheap residual check; a failed check raises
SingularSystemError instead of returning garbage.

`mode_amplification` closes the loop with the Fourier analysis: it runs the
actual stepper on a cosine/sine mode pair and projects out the complex
per-step factor, which must match the closed-form amplification factor to
rounding accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectrum import FourierMode, GridSpec, PdeCoefficients, fourier_symbols
from .stability import DomainError, SchemeParams, SpectralPoint, eval_stability_function

#: A Thomas pivot below _PIVOT_RTOL * (coefficient scale) triggers the dense fallback.
_PIVOT_RTOL = 1e-13

#: Minimum modulus of the Sherman-Morrison correction denominator.
_SM_DENOM_MIN = 1e-12

#: Directional solves must satisfy ||residual||_inf <= _RESIDUAL_RTOL * ||rhs||_inf.
_RESIDUAL_RTOL = 1e-10


class SingularSystemError(ArithmeticError):
    """An implicit stage system was (numerically) singular."""


class _CyclicTridiagonal:
    """Constant-coefficient cyclic tridiagonal matrix with a prepared solver.

    The matrix has `diag` on the diagonal, `sup` on the superdiagonal,
    `sub` on the subdiagonal, and the periodic corner entries
    A[0, n-1] = sub, A[n-1, 0] = sup.  Factorization strategy: rank-one
    split A = T + u v^T with a pivot-free Thomas factorization of T; if any
    pivot or the Sherman-Morrison denominator is too small the instance
    falls back to a stored dense matrix and `np.linalg.solve`.
    """

    def __init__(self, sub: float, diag: float, sup: float, n: int):
        if n < 3:
            raise DomainError(f"cyclic tridiagonal needs n >= 3, got {n}")
        self.sub, self.diag, self.sup, self.n = sub, diag, sup, n
        self._dense = None
        if not self._factorize():
            self._dense = self._dense_matrix()

    def _factorize(self) -> bool:
        sub, diag, sup, n = self.sub, self.diag, self.sup, self.n
        scale = abs(diag) + abs(sub) + abs(sup)
        gamma = -diag if diag != 0.0 else -1.0
        t = np.full(n, diag)
        t[0] = diag - gamma
        t[-1] = diag - sup * sub / gamma
        lo = np.zeros(n)
        dn = np.zeros(n)
        dn[0] = t[0]
        if not abs(dn[0]) > _PIVOT_RTOL * scale:
            return False
        for i in range(1, n):
            lo[i] = sub / dn[i - 1]
            dn[i] = t[i] - lo[i] * sup
            if not abs(dn[i]) > _PIVOT_RTOL * scale:
                return False
        self._lo, self._dn, self._gamma = lo, dn, gamma
        u = np.zeros((n, 1))
        u[0, 0] = gamma
        u[-1, 0] = sup
        self._q = self._thomas(u)[:, 0]
        self._den = 1.0 + self._q[0] + (sub / gamma) * self._q[-1]
        return abs(self._den) > _SM_DENOM_MIN

    def _dense_matrix(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n, n))
        idx = np.arange(n)
        a[idx, idx] = self.diag
        a[idx, (idx + 1) % n] = self.sup
        a[idx, (idx - 1) % n] = self.sub
        return a

    def _thomas(self, rhs: np.ndarray) -> np.ndarray:
        n, lo, dn, sup = self.n, self._lo, self._dn, self.sup
        y = rhs.copy()
        for i in range(1, n):
            y[i] -= lo[i] * y[i - 1]
        y[n - 1] /= dn[n - 1]
        for i in range(n - 2, -1, -1):
            y[i] = (y[i] - sup * y[i + 1]) / dn[i]
        return y

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve A x = rhs for each column of rhs (shape (n, ...))."""
        if self._dense is not None:
            return np.linalg.solve(self._dense, rhs)
        y = self._thomas(rhs)
        corr = (y[0] + (self.sub / self._gamma) * y[-1]) / self._den
        return y - np.multiply.outer(self._q, corr)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Apply A along axis 0 (independent of the factorization path)."""
        return (
            self.diag * x
            + self.sup * np.roll(x, -1, axis=0)
            + self.sub * np.roll(x, 1, axis=0)
        )


class SplitOperators:
    """Stencil coefficients of A0, A1, A2 on one grid, with a solver cache.

    The unidirectional stencils are (sub, diag, sup) triples; the mixed
    stencil is a dict offset -> weight over the nine-point neighborhood,
    with the beta-weighted combination of the two diagonal four-point
    stencils:

        weight(+1,+1) = weight(-1,-1) = (1 + beta) s
        weight(+1,-1) = weight(-1,+1) = -(1 - beta) s
        weight(0,0) = 4 beta s,   edge midpoints  -2 beta s

    where s = (d12 + d21) / (4 dx dy).  Cached factorizations are keyed by
    (direction, theta*dt), so repeated steps reuse them.
    """

    def __init__(self, coeffs: PdeCoefficients, grid: GridSpec):
        self.coeffs = coeffs
        self.grid = grid
        dx, dy = grid.dx, grid.dy
        self.x_sub = coeffs.d11 / dx**2 - coeffs.c1 / (2.0 * dx)
        self.x_diag = -2.0 * coeffs.d11 / dx**2
        self.x_sup = coeffs.d11 / dx**2 + coeffs.c1 / (2.0 * dx)
        self.y_sub = coeffs.d22 / dy**2 - coeffs.c2 / (2.0 * dy)
        self.y_diag = -2.0 * coeffs.d22 / dy**2
        self.y_sup = coeffs.d22 / dy**2 + coeffs.c2 / (2.0 * dy)
        s = coeffs.mixed_sum / (4.0 * dx * dy)
        beta = grid.beta
        self.mixed_weights = {
            (1, 1): (1.0 + beta) * s,
            (-1, -1): (1.0 + beta) * s,
            (-1, 1): -(1.0 - beta) * s,
            (1, -1): -(1.0 - beta) * s,
            (0, 0): 4.0 * beta * s,
            (1, 0): -2.0 * beta * s,
            (-1, 0): -2.0 * beta * s,
            (0, 1): -2.0 * beta * s,
            (0, -1): -2.0 * beta * s,
        }
        self._solvers: dict[tuple[int, float], _CyclicTridiagonal] = {}

    def directional_stencil(self, j: int) -> tuple[float, float, float, int]:
        """(sub, diag, sup, n) of the implicit direction j in {1, 2}."""
        if j == 1:
            return (self.x_sub, self.x_diag, self.x_sup, self.grid.m1)
        if j == 2:
            return (self.y_sub, self.y_diag, self.y_sup, self.grid.m2)
        raise DomainError(f"implicit direction must be 1 or 2, got {j}")

    def _solver(self, j: int, theta_dt: float) -> _CyclicTridiagonal:
        key = (j, theta_dt)
        cy = self._solvers.get(key)
        if cy is None:
            sub, diag, sup, n = self.directional_stencil(j)
            cy = _CyclicTridiagonal(-theta_dt * sub, 1.0 - theta_dt * diag, -theta_dt * sup, n)
            self._solvers[key] = cy
        return cy


def build_split_operators(coeffs: PdeCoefficients, grid: GridSpec) -> SplitOperators:
    """Assemble the three split operators of one discretization."""
    return SplitOperators(coeffs, grid)


def new_field(grid: GridSpec) -> np.ndarray:
    """Zero-initialized grid field of shape (m1, m2)."""
    return np.zeros(grid.shape)


def validate_field(grid: GridSpec, u: np.ndarray) -> np.ndarray:
    """Check that u is a finite real float array of the grid's shape."""
    u = np.asarray(u)
    if u.shape != grid.shape:
        raise DomainError(f"field shape {u.shape} does not match grid {grid.shape}")
    if not np.issubdtype(u.dtype, np.floating):
        raise DomainError(f"field must be a real float array, got dtype {u.dtype}")
    if not np.all(np.isfinite(u)):
        raise DomainError("field contains non-finite entries")
    return u


def apply_split_operator(ops: SplitOperators, j: int, u: np.ndarray) -> np.ndarray:
    """Apply A_j (j in {0, 1, 2}) to a grid field."""
    u = validate_field(ops.grid, u)
    if j == 0:
        out = np.zeros_like(u)
        for (di, dj), weight in ops.mixed_weights.items():
            if weight != 0.0:
                out += weight * np.roll(u, (-di, -dj), axis=(0, 1))
        return out
    if j == 1:
        return ops.x_sub * np.roll(u, 1, 0) + ops.x_diag * u + ops.x_sup * np.roll(u, -1, 0)
    if j == 2:
        return ops.y_sub * np.roll(u, 1, 1) + ops.y_diag * u + ops.y_sup * np.roll(u, -1, 1)
    raise DomainError(f"operator index must be 0, 1 or 2, got {j}")


def solve_directional(ops: SplitOperators, j: int, theta_dt: float, rhs: np.ndarray) -> np.ndarray:
    """Solve (I - theta_dt * A_j) x = rhs for an implicit direction j in {1, 2}.

    theta_dt = 0 short-circuits to a copy of rhs.  The solution is checked
    against the system to ||residual||_inf <= 1e-10 ||rhs||_inf; failure of
    the check (or of the dense fallback) raises SingularSystemError.
    """
    rhs = validate_field(ops.grid, rhs)
    if j not in (1, 2):
        raise DomainError(f"implicit direction must be 1 or 2, got {j}")
    if theta_dt == 0.0:
        return rhs.copy()
    cy = ops._solver(j, theta_dt)
    b = rhs if j == 1 else np.ascontiguousarray(rhs.T)
    try:
        x = cy.solve(b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"direction {j} system with theta*dt = {theta_dt!r} is singular"
        ) from exc
    residual = float(np.max(np.abs(cy.matvec(x) - b)))
    if residual > _RESIDUAL_RTOL * float(np.max(np.abs(b))) + 1e-300:
        raise SingularSystemError(
            f"direction {j} solve failed the residual check "
            f"(residual {residual:.3e}, theta*dt = {theta_dt!r})"
        )
    return x if j == 1 else np.ascontiguousarray(x.T)


def step_mcs(ops: SplitOperators, params: SchemeParams, u: np.ndarray, t: float = 0.0) -> np.ndarray:
    """Advance a field by one MCS step.

    `t` is accepted for interface uniformity with time-dependent problems
    and ignored (the operators here are autonomous).
    """
    theta, dt = params.theta, params.dt
    td = theta * dt
    a0u = apply_split_operator(ops, 0, u)
    a1u = apply_split_operator(ops, 1, u)
    a2u = apply_split_operator(ops, 2, u)
    y0 = u + dt * (a0u + a1u + a2u)
    y1 = solve_directional(ops, 1, td, y0 - td * a1u)
    y2 = solve_directional(ops, 2, td, y1 - td * a2u)
    dy = y2 - u
    a0dy = apply_split_operator(ops, 0, dy)
    yh0 = y0 + td * a0dy
    yt0 = yh0 + (0.5 - theta) * dt * (
        a0dy + apply_split_operator(ops, 1, dy) + apply_split_operator(ops, 2, dy)
    )
    yt1 = solve_directional(ops, 1, td, yt0 - td * a1u)
    return solve_directional(ops, 2, td, yt1 - td * a2u)


def step_douglas(ops: SplitOperators, params: SchemeParams, u: np.ndarray, t: float = 0.0) -> np.ndarray:
    """Advance a field by one Douglas step (the MCS predictor alone)."""
    theta, dt = params.theta, params.dt
    td = theta * dt
    a1u = apply_split_operator(ops, 1, u)
    a2u = apply_split_operator(ops, 2, u)
    y0 = u + dt * (apply_split_operator(ops, 0, u) + a1u + a2u)
    y1 = solve_directional(ops, 1, td, y0 - td * a1u)
    return solve_directional(ops, 2, td, y1 - td * a2u)


_STEP_FUNCTIONS = {"mcs": step_mcs, "douglas": step_douglas}


def get_step_function(scheme: str):
    """Map a scheme name ("mcs" or "douglas") to its step function."""
    try:
        return _STEP_FUNCTIONS[scheme]
    except KeyError:
        raise DomainError(f"unknown scheme {scheme!r}, expected one of {sorted(_STEP_FUNCTIONS)}")


def douglas_amplification_factor(theta: float, pt: SpectralPoint) -> complex:
    """Closed-form per-step factor 1 + (z0 + z)/p of the Douglas scheme."""
    return 1.0 + (pt.z0 + pt.z) / pt.p(theta)


def predicted_amplification(scheme: str, theta: float, pt: SpectralPoint) -> complex:
    """Closed-form per-step factor of either scheme at one spectral point."""
    get_step_function(scheme)
    if scheme == "douglas":
        return douglas_amplification_factor(theta, pt)
    return eval_stability_function(theta, pt)


def mode_amplification(
    scheme: str,
    coeffs: PdeCoefficients,
    grid: GridSpec,
    params: SchemeParams,
    mode: FourierMode,
) -> complex:
    """Per-step factor of one Fourier mode, measured on the actual stepper.

    Runs one step on the cosine and sine fields of the mode and projects the
    results onto the complex mode; for a correct implementation this equals
    the closed-form amplification factor to rounding accuracy.
    """
    step = get_step_function(scheme)
    ops = build_split_operators(coeffs, grid)
    phi1, phi2 = mode.phases(grid)
    ang = phi1 * np.arange(grid.m1)[:, None] + phi2 * np.arange(grid.m2)[None, :]
    uc, us = np.cos(ang), np.sin(ang)
    wc = step(ops, params, uc)
    ws = step(ops, params, us)
    m = uc + 1j * us
    return complex(np.vdot(m, wc + 1j * ws) / np.vdot(m, m))


@dataclass(frozen=True)
class ManufacturedProblem:
    """Periodic test problem made of a few Fourier modes.

    The semi-discrete system u' = (A0 + A1 + A2) u acts diagonally on the
    modes, so its exact solution at any time is available in closed form
    and the full time-discretization error of a stepper can be measured
    directly.
    """

    coeffs: PdeCoefficients
    grid: GridSpec
    theta: float
    modes: tuple[tuple[int, int, float], ...]
    t_final: float
    coarsest_steps: int

    def initial_field(self) -> np.ndarray:
        u = new_field(self.grid)
        for k1, k2, amp in self.modes:
            phi1, phi2 = FourierMode(k1, k2).phases(self.grid)
            ang = phi1 * np.arange(self.grid.m1)[:, None] + phi2 * np.arange(self.grid.m2)[None, :]
            u += amp * np.cos(ang)
        return u

    def semi_discrete_reference(self) -> np.ndarray:
        """Exact solution of the semi-discrete system at t_final."""
        u = new_field(self.grid)
        for k1, k2, amp in self.modes:
            mode = FourierMode(k1, k2)
            pt = fourier_symbols(self.coeffs, self.grid, 1.0, mode)  # dt=1: raw eigenvalues
            lam = pt.z0 + pt.z1 + pt.z2
            phi1, phi2 = mode.phases(self.grid)
            ang = phi1 * np.arange(self.grid.m1)[:, None] + phi2 * np.arange(self.grid.m2)[None, :]
            u += amp * (np.exp(self.t_final * lam) * np.exp(1j * ang)).real
        return u


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level of a convergence study."""

    dt: float
    max_error: float
    observed_order: float  # nan on the coarsest level


def default_convergence_problem() -> ManufacturedProblem:
    """Two-mode convection-diffusion fixture with a genuine mixed term."""
    return ManufacturedProblem(
        coeffs=PdeCoefficients(c1=0.4, c2=-0.3, d11=0.05, d12=0.015, d21=0.015, d22=0.03),
        grid=GridSpec(m1=12, m2=12, dx=1.0 / 12.0, dy=1.0 / 12.0, beta=0.0),
        theta=1.0 / 3.0,
        modes=((1, 1, 1.0), (2, 1, 0.4)),
        t_final=1.0,
        coarsest_steps=8,
    )


def run_convergence_study(
    problem: ManufacturedProblem | None = None,
    scheme: str = "mcs",
    levels: int = 4,
) -> list[ConvergenceRow]:
    """Error of the stepper against the exact semi-discrete solution.

    Halves dt `levels` times starting from t_final / coarsest_steps and
    reports the max-norm error at t_final plus the observed order
    log2(err_coarse / err_fine) between consecutive levels.
    """
    if problem is None:
        problem = default_convergence_problem()
    step = get_step_function(scheme)
    ops = build_split_operators(problem.coeffs, problem.grid)
    reference = problem.semi_discrete_reference()
    rows: list[ConvergenceRow] = []
    prev_err = math.nan
    for level in range(levels):
        steps = problem.coarsest_steps << level
        dt = problem.t_final / steps
        params = SchemeParams(problem.theta, dt)
        u = problem.initial_field()
        for _ in range(steps):
            u = step(ops, params, u)
        err = float(np.max(np.abs(u - reference)))
        order = math.log2(prev_err / err) if rows and err > 0.0 else math.nan
        rows.append(ConvergenceRow(dt, err, order))
        prev_err = err
    return rows


def field_max_norm(u: np.ndarray) -> float:
    """Max-norm of a grid field."""
    return float(np.max(np.abs(u)))


def field_l2(u: np.ndarray) -> float:
    """Grid-normalized discrete L2 norm sqrt(mean(u^2))."""
    u = np.asarray(u, dtype=float)
    return float(math.sqrt(float(np.mean(u * u))))


def write_field_csv(path, u: np.ndarray) -> None:
    """Write a field as CSV rows "i,j,u" in row-major order, full precision."""
    u = np.asarray(u)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("i,j,u\n")
        for i in range(u.shape[0]):
            for j in range(u.shape[1]):
                fh.write(f"{i},{j},{u[i, j]:.17g}\n")
