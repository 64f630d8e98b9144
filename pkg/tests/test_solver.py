import dataclasses
import math

import numpy as np
import pytest

from mcs_adi.solver import (
    ManufacturedProblem,
    SingularSystemError,
    apply_split_operator,
    build_split_operators,
    default_convergence_problem,
    douglas_amplification_factor,
    field_l2,
    field_max_norm,
    get_step_function,
    mode_amplification,
    new_field,
    predicted_amplification,
    run_convergence_study,
    solve_directional,
    step_douglas,
    step_mcs,
    validate_field,
    write_field_csv,
)
from mcs_adi.spectrum import FourierMode, GridSpec, PdeCoefficients, fourier_symbols
from mcs_adi.stability import DomainError, SchemeParams, eval_stability_function

COEFFS = PdeCoefficients(c1=0.7, c2=-0.4, d11=0.3, d12=0.1, d21=0.05, d22=0.2)
GRID = GridSpec(m1=7, m2=9, dx=0.2, dy=0.25, beta=-0.5)


def dense_operator(coeffs, grid, which):
    """Independent dense transcription of the three split operators.

    Written from the difference quotients directly (loops + modular index
    arithmetic); the mixed stencil is the central cross plus beta times the
    tensor product of 1D second differences.
    """
    m1, m2, dx, dy = grid.m1, grid.m2, grid.dx, grid.dy
    n = m1 * m2
    mat = np.zeros((n, n))

    def idx(i, j):
        return (i % m1) * m2 + (j % m2)

    sec = {-1: 1.0, 0: -2.0, 1: 1.0}
    w = (coeffs.d12 + coeffs.d21) / (4.0 * dx * dy)
    for i in range(m1):
        for j in range(m2):
            row = idx(i, j)
            if which == 1:
                mat[row, idx(i + 1, j)] += coeffs.d11 / dx**2 + coeffs.c1 / (2.0 * dx)
                mat[row, idx(i - 1, j)] += coeffs.d11 / dx**2 - coeffs.c1 / (2.0 * dx)
                mat[row, row] += -2.0 * coeffs.d11 / dx**2
            elif which == 2:
                mat[row, idx(i, j + 1)] += coeffs.d22 / dy**2 + coeffs.c2 / (2.0 * dy)
                mat[row, idx(i, j - 1)] += coeffs.d22 / dy**2 - coeffs.c2 / (2.0 * dy)
                mat[row, row] += -2.0 * coeffs.d22 / dy**2
            else:
                for di in (-1, 1):
                    for dj in (-1, 1):
                        mat[row, idx(i + di, j + dj)] += w * di * dj
                for di in (-1, 0, 1):
                    for dj in (-1, 0, 1):
                        mat[row, idx(i + di, j + dj)] += grid.beta * w * sec[di] * sec[dj]
    return mat


@pytest.mark.parametrize("which", [0, 1, 2])
def test_apply_matches_dense_transcription(which):
    ops = build_split_operators(COEFFS, GRID)
    mat = dense_operator(COEFFS, GRID, which)
    rng = np.random.Generator(np.random.Philox(key=11))
    for _ in range(5):
        u = rng.standard_normal(GRID.shape)
        got = apply_split_operator(ops, which, u)
        want = (mat @ u.ravel()).reshape(GRID.shape)
        scale = float(np.max(np.abs(want))) + 1.0
        assert float(np.max(np.abs(got - want))) <= 1e-13 * scale


def test_apply_rejects_bad_operator_index():
    ops = build_split_operators(COEFFS, GRID)
    with pytest.raises(DomainError):
        apply_split_operator(ops, 3, np.zeros(GRID.shape))


def test_constant_field_annihilated():
    # derivative operators kill constants; exactly for pure diffusion
    # (the +a, -2a, +a products share one rounding), to roundoff otherwise
    ops = build_split_operators(COEFFS, GRID)
    u = np.full(GRID.shape, 3.7)
    for j in (0, 1, 2):
        assert float(np.max(np.abs(apply_split_operator(ops, j, u)))) <= 1e-13
    pure = build_split_operators(PdeCoefficients(d11=0.4, d22=0.2), GRID)
    assert np.all(apply_split_operator(pure, 1, u) == 0.0)
    assert np.all(apply_split_operator(pure, 2, u) == 0.0)


def test_field_validation():
    with pytest.raises(DomainError):
        validate_field(GRID, np.zeros((3, 3)))
    with pytest.raises(DomainError):
        validate_field(GRID, np.zeros(GRID.shape, dtype=int))
    bad = np.zeros(GRID.shape)
    bad[0, 0] = math.nan
    with pytest.raises(DomainError):
        validate_field(GRID, bad)
    assert new_field(GRID).shape == GRID.shape


# ---------------------------------------------------------- directional solves


def test_solve_directional_zero_shift_copies():
    ops = build_split_operators(COEFFS, GRID)
    rhs = np.arange(63, dtype=float).reshape(GRID.shape)
    out = solve_directional(ops, 1, 0.0, rhs)
    assert np.array_equal(out, rhs) and out is not rhs


@pytest.mark.parametrize("j", [1, 2])
def test_solve_directional_roundtrip(j):
    ops = build_split_operators(COEFFS, GRID)
    rng = np.random.Generator(np.random.Philox(key=3))
    rhs = rng.standard_normal(GRID.shape)
    x = solve_directional(ops, j, 0.07, rhs)
    back = x - 0.07 * apply_split_operator(ops, j, x)
    assert float(np.max(np.abs(back - rhs))) <= 1e-12


@pytest.mark.parametrize("j", [1, 2])
def test_solve_directional_matches_dense_solve(j):
    ops = build_split_operators(COEFFS, GRID)
    n = GRID.m1 if j == 1 else GRID.m2
    sub, diag, sup = (
        (ops.x_sub, ops.x_diag, ops.x_sup) if j == 1 else (ops.y_sub, ops.y_diag, ops.y_sup)
    )
    td = 0.11
    mat = np.zeros((n, n))
    for i in range(n):
        mat[i, i] = 1.0 - td * diag
        mat[i, (i + 1) % n] = -td * sup
        mat[i, (i - 1) % n] = -td * sub
    rng = np.random.Generator(np.random.Philox(key=5))
    rhs = rng.standard_normal(GRID.shape)
    got = solve_directional(ops, j, td, rhs)
    if j == 1:
        want = np.linalg.solve(mat, rhs)
    else:
        want = np.linalg.solve(mat, rhs.T).T
    assert float(np.max(np.abs(got - want))) <= 1e-11


def test_solve_directional_rejects_bad_direction():
    ops = build_split_operators(COEFFS, GRID)
    with pytest.raises(DomainError):
        solve_directional(ops, 0, 0.1, np.zeros(GRID.shape))


def test_singular_system_detected():
    # I - td*A1 with td = -0.25, pure diffusion on a 4-point ring is exactly
    # singular (null vector alternates +-1).  A right-hand side inside the
    # range space still solves; one outside must raise.
    ops = build_split_operators(
        PdeCoefficients(d11=1.0), GridSpec(m1=4, m2=4, dx=1.0, dy=1.0)
    )
    ok = solve_directional(ops, 1, -0.25, np.ones((4, 4)))
    assert np.all(np.isfinite(ok))
    alternating = np.tile(np.array([[1.0], [-1.0]]), (2, 4))
    with pytest.raises(SingularSystemError):
        solve_directional(ops, 1, -0.25, alternating)
    with pytest.raises(SingularSystemError):
        solve_directional(ops, 1, -0.5, alternating)


# ------------------------------------------------------------------ stepping


def test_zero_coefficients_step_is_identity():
    ops = build_split_operators(PdeCoefficients(), GridSpec(m1=8, m2=8, dx=0.1, dy=0.1))
    u = np.arange(64, dtype=float).reshape(8, 8)
    params = SchemeParams(0.5, 0.125)
    assert np.array_equal(step_mcs(ops, params, u), u)
    assert np.array_equal(step_douglas(ops, params, u), u)


def test_step_accepts_time_argument():
    ops = build_split_operators(COEFFS, GRID)
    u = np.zeros(GRID.shape)
    params = SchemeParams(0.5, 0.01)
    assert np.array_equal(step_mcs(ops, params, u, t=1.5), step_mcs(ops, params, u))


def test_get_step_function_dispatch():
    assert get_step_function("mcs") is step_mcs
    assert get_step_function("douglas") is step_douglas
    with pytest.raises(DomainError):
        get_step_function("adi")


# ------------------------------------------------- amplification cross-check


def _random_case(rng):
    m1 = int(rng.integers(4, 33))
    m2 = int(rng.integers(4, 33))
    dx, dy = rng.uniform(0.02, 0.5, 2)
    e = rng.standard_normal((2, 2))
    d = e.T @ e * rng.uniform(0.1, 2.0)
    mix = 2.0 * d[0, 1]
    split = rng.uniform(0.0, 1.0)
    c1, c2 = rng.uniform(-2.0, 2.0, 2)
    beta = rng.uniform(-1.0, 1.0)
    theta = [1.0 / 3.0, 0.4, 0.5, 0.75, 1.0][int(rng.integers(0, 5))]
    k1 = int(rng.integers(0, m1))
    k2 = int(rng.integers(0, m2))
    # keep dt under an explicit-stability-style bound so magnitudes stay tame
    lam = (
        4.0 * (d[0, 0] / dx**2 + d[1, 1] / dy**2)
        + abs(c1) / dx + abs(c2) / dy + abs(mix) / (dx * dy) + 1.0
    )
    dt = rng.uniform(0.05, 5.0) / lam
    coeffs = PdeCoefficients(c1=c1, c2=c2, d11=d[0, 0], d12=mix * split,
                             d21=mix * (1.0 - split), d22=d[1, 1])
    grid = GridSpec(m1=m1, m2=m2, dx=dx, dy=dy, beta=beta)
    return coeffs, grid, SchemeParams(theta, dt), FourierMode(k1, k2)


def test_mode_amplification_matches_closed_form():
    rng = np.random.Generator(np.random.Philox(key=2718))
    for _ in range(10):
        coeffs, grid, params, mode = _random_case(rng)
        pt = fourier_symbols(coeffs, grid, params.dt, mode)
        for scheme in ("mcs", "douglas"):
            pred = predicted_amplification(scheme, params.theta, pt)
            if abs(pred) < 0.05:
                continue  # skip ill-conditioned relative comparisons
            meas = mode_amplification(scheme, coeffs, grid, params, mode)
            assert abs(meas - pred) <= 1e-12 * abs(pred)


def test_douglas_factor_is_mcs_without_correction_terms():
    # with z0 = 0 and theta = 1/2 the corrector stages change nothing
    pt = fourier_symbols(PdeCoefficients(c1=0.5, d11=0.2, d22=0.3),
                         GRID, 0.05, FourierMode(2, 3))
    assert pt.z0 == 0.0
    d = douglas_amplification_factor(0.5, pt)
    s = eval_stability_function(0.5, pt)
    assert abs(d - s) <= 1e-14 * max(1.0, abs(s))


def test_zero_mode_amplification_is_one():
    params = SchemeParams(0.5, 0.3)
    s = mode_amplification("mcs", COEFFS, GRID, params, FourierMode(0, 0))
    assert abs(s - 1.0) <= 1e-13


# ------------------------------------------------------------- convergence


def test_default_problem_initial_field_is_cosine_sum():
    prob = default_convergence_problem()
    u = prob.initial_field()
    grid = prob.grid
    ii = np.arange(grid.m1)[:, None]
    jj = np.arange(grid.m2)[None, :]
    want = np.zeros(grid.shape)
    for k1, k2, amp in prob.modes:
        want += amp * np.cos(2.0 * np.pi * (k1 * ii / grid.m1 + k2 * jj / grid.m2))
    assert float(np.max(np.abs(u - want))) <= 1e-13


def test_convergence_rows_show_second_order():
    rows = run_convergence_study(levels=2)
    assert math.isnan(rows[0].observed_order)
    assert rows[1].dt == rows[0].dt / 2.0
    assert rows[1].max_error < rows[0].max_error
    assert 1.8 <= rows[1].observed_order <= 2.2


def test_convergence_study_accepts_custom_problem():
    prob = dataclasses.replace(default_convergence_problem(), theta=0.5)
    rows = run_convergence_study(prob, scheme="douglas", levels=2)
    assert len(rows) == 2 and rows[1].max_error < rows[0].max_error


# ------------------------------------------------------------ field helpers


def test_field_norms():
    u = np.array([[3.0, -4.0], [0.0, 0.0]])
    assert field_max_norm(u) == 4.0
    assert abs(field_l2(u) - 2.5) <= 1e-15


def test_write_field_csv_roundtrip(tmp_path):
    u = np.array([[1.0, 2.5], [-3.25, 1e-17]])
    path = tmp_path / "field.csv"
    write_field_csv(path, u)
    lines = path.read_text().splitlines()
    assert lines[0] == "i,j,u"
    assert len(lines) == 5
    i, j, val = lines[3].split(",")
    assert (int(i), int(j)) == (1, 0)
    assert float(val) == -3.25
