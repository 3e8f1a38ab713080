"""Dispersion, branch selection, kernel symmetry, stencil bookkeeping."""

import numpy as np
import pytest

from crackscatter import (
    BranchAmbiguity,
    ConfigError,
    DegenerateFrequency,
    OutOfGrid,
    PoleHit,
)
from crackscatter.lattice import (
    FieldGrid,
    LatticeParams,
    dispersion_omega,
    helmholtz_residual,
    incident_v,
    incident_wave,
    kernel_K_of_z,
    lambda_of_z,
    unit_root_pair,
)

OM149 = LatticeParams(omega=1.49)


# -- dispersion ---------------------------------------------------------------


def test_dispersion_reference_case():
    p = dispersion_omega(0.5 * np.pi, np.pi / 4)
    assert p.omega.real == pytest.approx(1.4913, abs=1e-3)
    assert p.omega.real == pytest.approx(1.4912869069012664, abs=1e-14)
    assert p.omega.imag == 0


def test_dispersion_axis_case():
    p = dispersion_omega(0.5 * np.pi, np.pi / 2)
    assert p.omega.real == pytest.approx(np.sqrt(2), abs=1e-14)


def test_dispersion_degenerate_limits():
    with pytest.raises(DegenerateFrequency):
        dispersion_omega(1e-6, 0.3)
    with pytest.raises(DegenerateFrequency):
        dispersion_omega(np.pi, 0.0)  # omega = 2
    with pytest.raises(DegenerateFrequency):
        dispersion_omega(np.sqrt(2) * np.pi, np.pi / 4)  # omega = 2 sqrt 2
    with pytest.raises(ConfigError):
        dispersion_omega(0.0, 0.0)


def test_dispersion_absorption_shift():
    p = dispersion_omega(0.5 * np.pi, np.pi / 4, eps_omega=1e-3)
    assert p.omega.imag == pytest.approx(1e-3)


def test_incident_wave_zone_check():
    w = incident_wave(0.5 * np.pi, np.pi / 4)
    assert w.k_m == pytest.approx(w.k_n)
    assert w.k_m**2 + w.k_n**2 == pytest.approx(w.k**2)
    with pytest.raises(ConfigError):
        incident_wave(np.sqrt(2) * np.pi, 0.0)  # k_m = sqrt(2) pi > pi


# -- branch selection ---------------------------------------------------------


def test_unit_root_pair_reciprocal():
    rng = np.random.default_rng(2)
    b = rng.standard_normal(1000) * 3 + 1j * rng.standard_normal(1000)
    small, big = unit_root_pair(b)
    np.testing.assert_allclose(small * big, 1.0, rtol=0, atol=1e-12)
    np.testing.assert_allclose(small + big, b, rtol=1e-12, atol=1e-12)
    assert np.all(np.abs(small) <= 1 + 1e-12)


def test_lambda_reference_value():
    lam = lambda_of_z(5.0, OM149)
    assert lam == pytest.approx(-0.3229, abs=1e-4)
    assert lam == pytest.approx(-0.322869044789037, abs=1e-12)


def test_lambda_quadratic_identity():
    rng = np.random.default_rng(4)
    z = rng.uniform(0.2, 3.0, 1000) * np.exp(1j * rng.uniform(0, 2 * np.pi, 1000))
    lam = lambda_of_z(z, OM149)
    H = 2 - z - 1 / z - OM149.omega2
    np.testing.assert_allclose(lam + 1 / lam, H + 2, rtol=1e-12, atol=1e-12)
    assert np.all(np.abs(lam) <= 1 + 1e-12)


def test_lambda_decays_with_absorption():
    p = LatticeParams(omega=1.49 + 1e-3j, eps_omega=1e-3)
    th = np.linspace(0, 2 * np.pi, 701)
    lam = lambda_of_z(np.exp(1j * th), p)
    assert np.max(np.abs(lam)) < 1.0


def test_lambda_tiebreak_is_absorption_limit():
    # on the propagating arc at real omega, the selected unimodular root
    # must be the limit of the eps > 0 selection
    th = np.array([0.0, 0.4, -0.9, 1.3])
    z = np.exp(1j * th)
    lam0 = lambda_of_z(z, OM149)
    assert np.max(np.abs(np.abs(lam0) - 1.0)) < 1e-12
    assert np.all(lam0.imag > 0)
    lam_eps = lambda_of_z(z, LatticeParams(omega=1.49 + 1e-7j, eps_omega=1e-7))
    np.testing.assert_allclose(lam0, lam_eps, atol=2e-4)


def test_lambda_continuous_along_circle():
    th = np.linspace(-np.pi, np.pi, 4001)
    thstar = np.arccos((2 - 1.49**2) / 2)
    keep = np.min(np.abs(th[:, None] - np.array([[-thstar, thstar]])), axis=1) > 0.02
    lam = lambda_of_z(np.exp(1j * th[keep]), OM149)
    jumps = np.abs(np.diff(lam))
    # jumps only allowed across the excluded branch points
    gap = np.diff(th[keep]) > 0.015
    assert np.max(jumps[~gap]) < 0.01


def test_lambda_branch_point_raises():
    thstar = np.arccos((2 - 1.49**2) / 2)
    with pytest.raises(BranchAmbiguity):
        lambda_of_z(np.exp(1j * thstar), OM149)


def test_lambda_rejects_origin():
    with pytest.raises(ConfigError):
        lambda_of_z(0.0, OM149)


# -- kernel -------------------------------------------------------------------


def test_kernel_reference_value():
    K = kernel_K_of_z(5.0, OM149)
    assert K == pytest.approx(1.9536, abs=1e-4)
    H = 2 - 5 - 0.2 - 1.49**2
    assert K == pytest.approx(np.sqrt(H / (H + 4)), abs=1e-12)


def test_kernel_unit_circle_symmetry():
    rng = np.random.default_rng(6)
    r = np.concatenate([rng.uniform(0.2, 0.9, 500), rng.uniform(1.15, 4.0, 500)])
    z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 1000))
    np.testing.assert_allclose(
        kernel_K_of_z(z, OM149), kernel_K_of_z(1 / z, OM149), rtol=1e-12, atol=1e-12
    )


def test_kernel_squares_to_H_over_R():
    rng = np.random.default_rng(8)
    z = rng.uniform(1.2, 3.0, 200) * np.exp(1j * rng.uniform(0, 2 * np.pi, 200))
    H = 2 - z - 1 / z - OM149.omega2
    np.testing.assert_allclose(
        kernel_K_of_z(z, OM149) ** 2, H / (H + 4), rtol=1e-10, atol=1e-10
    )


def test_kernel_at_unity():
    om2 = OM149.omega2
    assert kernel_K_of_z(1.0, OM149) ** 2 == pytest.approx(-om2 / (4 - om2), abs=1e-12)


def test_kernel_pole_at_R_zero():
    zr = np.roots([1.0, -(6 - 1.49**2), 1.0])
    with pytest.raises(PoleHit):
        kernel_K_of_z(zr[0], OM149)


# -- incident forcing ---------------------------------------------------------


def test_incident_v_values():
    w = IncidentWaveStub = incident_wave(0.5 * np.pi, np.pi / 4)
    assert incident_v(0, w) == pytest.approx(np.exp(1j * w.k_n) - 1)
    w2 = incident_wave(np.pi / 2, 0.0)  # k_n = 0
    for m in (-3, 0, 5):
        assert incident_v(m, w2) == pytest.approx(0.0, abs=1e-15)
    from dataclasses import replace

    w3 = replace(w, k_m=np.pi / 4, k_n=np.pi / 4)
    assert incident_v(1, w3) == pytest.approx(0.29289321881345237 + 0.7071067811865475j)


# -- stencil ------------------------------------------------------------------


def plane_wave_grid(km, kn, m0=-6, m1=6, n1=8):
    m = np.arange(m0, m1 + 1)[:, None]
    n = np.arange(0, n1 + 1)[None, :]
    return FieldGrid((m0, m1), (0, n1), np.exp(-1j * (km * m + kn * n)))


def test_residual_plane_wave_interior():
    w = incident_wave(0.5 * np.pi, np.pi / 4)
    p = dispersion_omega(0.5 * np.pi, np.pi / 4)
    g = plane_wave_grid(w.k_m, w.k_n)
    for m in range(-5, 6):
        for n in range(1, 8):
            assert abs(helmholtz_residual(g, p, (m, n))) < 1e-12


def test_residual_zero_field():
    g = FieldGrid((-2, 2), (0, 3), np.zeros((5, 4), complex))
    assert helmholtz_residual(g, OM149, (0, 1)) == 0


def test_residual_out_of_grid():
    g = FieldGrid((-2, 2), (0, 3), np.zeros((5, 4), complex))
    with pytest.raises(OutOfGrid):
        helmholtz_residual(g, OM149, (2, 1))  # needs m = 3
    with pytest.raises(OutOfGrid):
        helmholtz_residual(g, OM149, (0, 3))  # needs n = 4


def test_residual_boundary_operator_identity():
    # half-plane mode u = z0^{-m} lambda^n: the three-point row-0 operator
    # must equal (1 - 1/lambda) u since the five-point residual vanishes
    p = OM149
    z0 = np.exp(1j * 0.7)
    lam = lambda_of_z(z0, p)
    m = np.arange(-6, 7)[:, None]
    n = np.arange(0, 9)[None, :]
    g = FieldGrid((-6, 6), (0, 8), z0 ** (-m.astype(float)) * lam**n)
    for mm in range(-5, 6):
        got = helmholtz_residual(g, p, (mm, 0))
        want = (1 - 1 / lam) * g.value(mm, 0)
        assert got == pytest.approx(want, abs=1e-12)
        assert abs(helmholtz_residual(g, p, (mm, 3))) < 1e-12


def test_grid_antisymmetric_mirror():
    g = FieldGrid((-1, 1), (0, 2), np.arange(9, dtype=complex).reshape(3, 3))
    assert g.value(0, -1) == -g.value(0, 0)
    assert g.value(1, -3) == -g.value(1, 2)
