"""Green's-function oracle: stencil identities, cross-route quadrature,
and the Toeplitz exact solution against the iterative solver."""

import numpy as np
import pytest

from crackscatter import (
    ConfigError,
    CrackLayout,
    IterationConfig,
    assemble_U,
    build_contour,
    build_factors,
    dispersion_omega,
    forcing_fN,
    helmholtz_residual,
    incident_v,
    incident_wave,
    initial_state,
    iterate,
    make_plan,
    reconstruct,
)
from crackscatter.greens import (
    GreensTable,
    compare,
    exact_crack_field,
    exact_face_jumps,
    greens,
    greens_double,
    region_D,
)

K_IN, PHI_IN = 0.5 * np.pi, np.pi / 4


@pytest.fixture(scope="module")
def params():
    return dispersion_omega(K_IN, PHI_IN)


@pytest.fixture(scope="module")
def wave():
    return incident_wave(K_IN, PHI_IN)


@pytest.fixture(scope="module")
def exact_grid(params, wave):
    return exact_crack_field(10, wave, params, ((-10, 20), (0, 11)))


class TestGreens:
    def test_stencil_is_delta_at_origin(self, params):
        g00 = greens(0, 0, params)
        g10 = greens(1, 0, params)
        # all four neighbours of the origin share one symmetry class
        stencil = 4.0 * g10 + (params.omega2 - 4.0) * g00
        assert abs(stencil - 1.0) < 1e-8

    def test_stencil_vanishes_off_origin(self, params):
        stencil = (
            greens(4, 2, params)
            + greens(2, 2, params)
            + greens(3, 3, params)
            + greens(3, 1, params)
            + (params.omega2 - 4.0) * greens(3, 2, params)
        )
        assert abs(stencil) < 1e-8

    def test_index_symmetries(self, params):
        g = greens(2, 3, params)
        assert g == pytest.approx(greens(3, 2, params), abs=1e-12)
        assert g == pytest.approx(greens(-2, 3, params), abs=1e-12)
        assert g == pytest.approx(greens(2, -3, params), abs=1e-12)

    def test_single_matches_double_integral(self):
        damped = dispersion_omega(K_IN, PHI_IN, eps_omega=1e-3)
        for node in ((0, 0), (2, 1)):
            s = greens(*node, damped)
            d = greens_double(*node, damped)
            assert abs(s - d) < 1e-5, node

    def test_double_route_needs_absorption(self, params):
        with pytest.raises(ConfigError):
            greens_double(0, 0, params)

    def test_above_band_edge_frequency(self):
        # omega in (2, 2 sqrt 2): the root reaches -1 instead of +1 and
        # the stencil identity must still hold
        high = dispersion_omega(np.sqrt(2.0) * np.pi * 0.98, np.pi / 4)
        assert high.omega.real > 2.0
        stencil = 4.0 * greens(1, 0, high) + (high.omega2 - 4.0) * greens(0, 0, high)
        assert abs(stencil - 1.0) < 1e-8

    def test_table_caches_symmetry_classes(self, params):
        table = GreensTable(params)
        a = table.value(-3, 1)
        assert len(table) == 1
        assert table.value(1, 3) == a
        assert table.value(3, 1) == a
        assert len(table) == 1


class TestExactField:
    def test_length_bounds(self, params, wave):
        with pytest.raises(ConfigError):
            exact_face_jumps(1, wave, params)
        with pytest.raises(ConfigError):
            exact_face_jumps(201, wave, params)

    def test_grazing_wave_scatters_nothing(self):
        # K_n = 0: the incident wave does not stretch the crack links
        p = dispersion_omega(K_IN, 0.0)
        w = incident_wave(K_IN, 0.0)
        v, v_in, _ = exact_face_jumps(6, w, p)
        assert np.max(np.abs(v_in)) == 0.0
        assert np.max(np.abs(v)) < 1e-14
        grid = exact_crack_field(6, w, p, ((-2, 8), (0, 2)))
        assert np.max(np.abs(grid.values)) < 1e-12

    def test_jump_self_consistency(self, params, wave, exact_grid):
        v, _, _ = exact_face_jumps(10, wave, params)
        worst = max(abs(v[j - 1] + 2.0 * exact_grid.value(j, 0)) for j in range(1, 10))
        assert worst < 1e-10

    def test_boundary_identities(self, params, wave, exact_grid):
        for m in range(1, 10):
            res = helmholtz_residual(exact_grid, params, (m, 0))
            assert abs(res - incident_v(m, wave)) < 1e-9, m
        for m in (-8, -2, 12, 18):
            res = helmholtz_residual(exact_grid, params, (m, 0))
            assert abs(res - 2.0 * exact_grid.value(m, 0)) < 1e-9, m

    def test_interior_helmholtz(self, params, exact_grid):
        worst = max(
            abs(helmholtz_residual(exact_grid, params, (m, n)))
            for m in range(-9, 20)
            for n in range(1, 11)
        )
        assert worst < 1e-9


class TestCrossValidation:
    def test_error_decreases_and_five_sweeps_suffice(self, params, wave, exact_grid):
        contour = build_contour(params)
        factors = build_factors(params, contour, 1e-10)
        layout = CrackLayout(edges=(0, 10))
        f_N = forcing_fN(layout, wave, factors.k_full)
        config = IterationConfig(contour=contour, max_iter=30)
        plan = make_plan(contour, layout, (-10, 20), (0, 11))
        region = region_D(10)
        state = initial_state(layout)
        errs = []
        for _ in range(6):
            state = iterate(state, config, factors, f_N)
            grid = reconstruct(assemble_U(state, layout), params, plan)
            errs.append(compare(grid, exact_grid, region))
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[4] <= 1e-5


class TestCompare:
    def test_identical_grids(self, exact_grid):
        assert compare(exact_grid, exact_grid, region_D(10)) == 0.0

    def test_single_node_perturbation(self, exact_grid):
        from crackscatter import FieldGrid

        bumped = exact_grid.values.copy()
        bumped[0, 10] += 1e-7  # node (-10, 10), on the region boundary
        other = FieldGrid(exact_grid.m_range, exact_grid.n_range, bumped)
        assert compare(exact_grid, other, region_D(10)) == pytest.approx(1e-7, rel=1e-9)

    def test_region_is_rectangle_perimeter(self):
        region = region_D(10)
        assert len(region) == 80
        ms = [m for m, _ in region]
        ns = [n for _, n in region]
        assert min(ms) == -10 and max(ms) == 20
        assert min(ns) == 0 and max(ns) == 10
        assert all(m in (-10, 20) or n in (0, 10) for m, n in region)
