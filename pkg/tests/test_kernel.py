"""Contour geometry, kernel approximation, and factorization checks."""

import numpy as np
import pytest

from crackscatter import (
    ApproximationFailed,
    CircleStraddle,
    ConfigError,
    PoleOnContour,
    ZPK,
    approximate_kernel,
    build_contour,
    build_factors,
    dump_debug_csv,
    factorize,
    kernel_K_of_z,
)
from crackscatter.lattice import LatticeParams

OM149 = LatticeParams(omega=1.49)


@pytest.fixture(scope="module")
def contour149():
    return build_contour(OM149)


@pytest.fixture(scope="module")
def factors149(contour149):
    return build_factors(OM149, contour149, 1e-7)


def fresh_points(contour, n=800):
    # offset so none coincide with the vertex angles or fit samples
    th = -np.pi + 2.0 * np.pi * (np.arange(n) + 0.123) / n
    return contour.point(th)


class TestContour:
    def test_special_points_match_branch_angle(self, contour149):
        theta = np.arccos((2.0 - 1.49**2) / 2.0)
        assert theta == pytest.approx(1.681, abs=1e-3)
        got = np.sort_complex(contour149.special_points)
        want = np.sort_complex(np.exp(1j * np.array([theta, -theta])))
        assert np.max(np.abs(got - want)) < 1e-12

    def test_vertices_on_circle_outside_indents(self, contour149):
        off = ~contour149.indent_mask
        assert off.sum() > 100  # the bumps must stay local
        assert np.max(np.abs(np.abs(contour149.vertices[off]) - 1.0)) <= 1e-12

    def test_indents_push_correct_sides(self, contour149):
        r_plus = contour149.rho(np.angle(contour149.special_points[0]))
        r_minus = contour149.rho(np.angle(contour149.special_points[1]))
        assert r_plus == pytest.approx(1.0 + contour149.indent_radius, abs=1e-6)
        assert r_minus == pytest.approx(1.0 - contour149.indent_radius, abs=1e-6)

    def test_winding_number_is_one(self, contour149):
        v = contour149.vertices
        loop = np.concatenate([v, v[:1]])
        turns = np.sum(np.angle(loop[1:] / loop[:-1])) / (2.0 * np.pi)
        assert turns == pytest.approx(1.0, abs=1e-12)

    def test_plain_circle_when_no_unit_circle_branch_points(self):
        cont = build_contour(LatticeParams(omega=2.5))
        assert cont.special_points.size == 0
        assert np.max(np.abs(np.abs(cont.vertices) - 1.0)) <= 1e-12

    def test_vertex_count_floor(self):
        with pytest.raises(ConfigError):
            build_contour(OM149, n_vertices=100)

    def test_contains_and_distance(self, contour149):
        assert contour149.contains(0.0)
        assert contour149.contains(0.5 + 0.2j)
        assert not contour149.contains(1.6)
        assert contour149.distance(0.0) == pytest.approx(1.0, abs=0.06)
        # points on the curve have (near) zero polyline distance
        z = contour149.point(0.8)
        assert contour149.distance(z) < 1e-4

    def test_quadrature_weights_integrate_cauchy_kernel(self, contour149):
        # closed-contour residue count: (1/2 pi i) integral dz/z = 1
        z, w = contour149.quad_nodes(4096)
        val = np.sum(w / z) / (2j * np.pi)
        assert abs(val - 1.0) < 1e-13

    def test_extra_dimple_changes_radius_locally(self):
        ang = -0.6
        cont = build_contour(OM149, extra_dimples=[(ang, -1)])
        assert cont.rho(ang) == pytest.approx(1.0 - cont.indent_radius, abs=1e-4)
        assert cont.rho(ang + np.pi) == pytest.approx(1.0, abs=1e-9)

    def test_dimple_overlapping_branch_indent_rejected(self):
        theta = np.arccos((2.0 - 1.49**2) / 2.0)
        with pytest.raises(ConfigError):
            build_contour(OM149, extra_dimples=[(theta + 0.1, -1)])


class TestApproximateKernel:
    def test_out_of_sample_error_within_tol(self, contour149):
        kf, err = approximate_kernel(OM149, contour149, 1e-7, with_error=True)
        assert err <= 1e-7
        z = fresh_points(contour149)
        exact = kernel_K_of_z(z, OM149)
        assert np.max(np.abs(kf.eval(z) - exact)) <= 1e-7

    def test_reciprocal_symmetry(self, contour149):
        kf = approximate_kernel(OM149, contour149, 1e-7)
        z = fresh_points(contour149, 300)
        assert np.max(np.abs(kf.eval(z) - kf.eval(1.0 / z))) <= 1e-6

    def test_zero_pole_reciprocal_pairs(self, contour149):
        kf = approximate_kernel(OM149, contour149, 1e-7)
        for vals in (kf.zeros, kf.poles):
            inside = np.sort_complex(vals[np.abs(vals) < 1])
            outside = np.sort_complex(1.0 / vals[np.abs(vals) > 1])
            assert inside.size == outside.size
            assert np.max(np.abs(inside - outside)) < 1e-8

    def test_equal_zero_and_pole_counts(self, factors149):
        kf = factors149.k_full
        assert kf.zeros.size == kf.poles.size

    def test_monotone_refinement(self, contour149):
        z = fresh_points(contour149, 500)
        exact = kernel_K_of_z(z, OM149)
        errs = []
        for tol in (1e-5, 1e-6, 1e-7, 1e-8, 1e-9):
            kf = approximate_kernel(OM149, contour149, tol)
            errs.append(np.max(np.abs(kf.eval(z) - exact)))
        errs = np.array(errs)
        assert np.all(errs[1:] <= errs[:-1] * 1.2 + 1e-15)
        assert errs[-1] < errs[0]

    def test_tiny_tol_rejected(self, contour149):
        with pytest.raises(ConfigError):
            approximate_kernel(OM149, contour149, 1e-14)

    def test_starved_fit_raises(self, contour149):
        with pytest.raises(ApproximationFailed):
            approximate_kernel(OM149, contour149, 1e-9, max_terms=6)

    def test_unreachable_clearance_raises(self, contour149):
        with pytest.raises(PoleOnContour):
            approximate_kernel(OM149, contour149, 1e-7, pole_clearance=0.2)

    def test_poles_clear_contour(self, contour149, factors149):
        pts = np.concatenate([factors149.k_full.zeros, factors149.k_full.poles])
        dmin = np.min(contour149.distance(pts))
        assert dmin >= 0.5 * contour149.indent_radius


class TestFactorize:
    def test_hand_built_partition(self):
        k_full = ZPK([0.5, 2.0], [0.25, 4.0], 1.3)
        fac = factorize(k_full)
        assert np.sort_complex(fac.k_plus.zeros) == pytest.approx([0.5])
        assert np.sort_complex(fac.k_plus.poles) == pytest.approx([0.25])
        assert np.sort_complex(fac.k_minus.zeros) == pytest.approx([2.0])
        assert np.sort_complex(fac.k_minus.poles) == pytest.approx([4.0])

    def test_product_identity(self, contour149, factors149):
        z = fresh_points(contour149, 100)
        full = factors149.k_full.eval(z)
        prod = factors149.k_plus.eval(z) * factors149.k_minus.eval(z)
        scale = np.max(np.abs(full))
        assert np.max(np.abs(prod - full)) <= 1e-10 * scale

    def test_symmetry_identity(self, contour149, factors149):
        z = fresh_points(contour149, 300)
        lhs = factors149.k_plus.eval(z)
        rhs = factors149.k_minus.eval(1.0 / z)
        assert np.max(np.abs(lhs - rhs)) <= 1e-6

    def test_factor_analyticity_regions(self, factors149):
        assert np.all(np.abs(factors149.k_plus.poles) < 1.0 - 1e-6)
        assert np.all(np.abs(factors149.k_plus.zeros) < 1.0 - 1e-6)
        assert np.all(np.abs(factors149.k_minus.poles) > 1.0 + 1e-6)
        assert np.all(np.abs(factors149.k_minus.zeros) > 1.0 + 1e-6)

    def test_reciprocal_pairing_across_factors(self, factors149):
        for a, b in (
            (factors149.k_plus.poles, factors149.k_minus.poles),
            (factors149.k_plus.zeros, factors149.k_minus.zeros),
        ):
            assert np.max(np.abs(np.sort_complex(a) - np.sort_complex(1.0 / b))) < 1e-8

    def test_edge_constants(self, factors149):
        # the symmetric split forces c3 = c4 = K^-(0); their product is
        # sqrt(r/h) with r the inside zero of R and h = e^{+i theta*} the
        # branch point kept inside, both recomputed here from scratch
        c3, c4 = factors149.c3, factors149.c4
        assert c3 == pytest.approx(c4, abs=1e-12)
        om2 = 1.49**2
        roots = np.roots([1.0, -(6.0 - om2), 1.0])
        r = roots[np.argmin(np.abs(roots))]
        h = np.exp(1j * np.arccos((2.0 - om2) / 2.0))
        assert c3 * c4 == pytest.approx(np.sqrt(r / h), abs=1e-6)

    def test_gain_product_preserved(self, factors149):
        got = factors149.k_plus.gain * factors149.k_minus.gain
        assert got == pytest.approx(factors149.k_full.gain, rel=1e-12)

    def test_straddle_guard(self):
        z0 = 1.0 + 3e-7
        k_full = ZPK([z0, 1.0 / z0], [0.25, 4.0], 1.0)
        with pytest.raises(CircleStraddle):
            factorize(k_full)

    def test_unpaired_partition_rejected(self):
        k_full = ZPK([0.5, 0.6], [0.25, 4.0], 1.0)
        with pytest.raises(CircleStraddle):
            factorize(k_full)

    def test_inverses_share_pole_values_bitwise(self, factors149):
        # later products cancel factors via exact value matches, so the
        # inverse must carry the same floats, not re-derived ones
        assert np.shares_memory(factors149.inv_plus.poles, factors149.k_plus.zeros)
        assert np.array_equal(factors149.inv_plus.poles, factors149.k_plus.zeros)
        assert np.array_equal(factors149.inv_minus.zeros, factors149.k_minus.poles)


def test_debug_csv_roundtrip(tmp_path, contour149, factors149):
    path = tmp_path / "kernel_debug.csv"
    dump_debug_csv(path, contour149, factors149)
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "re,im,kind"
    kinds = {line.rsplit(",", 1)[1] for line in rows[1:]}
    assert kinds == {"vertex", "pole+", "pole-", "zero+", "zero-"}
    n_expected = (
        len(contour149.vertices)
        + factors149.k_full.zeros.size
        + factors149.k_full.poles.size
    )
    assert len(rows) - 1 == n_expected
