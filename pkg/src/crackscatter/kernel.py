"""Deformed contour, rational kernel approximation, plus/minus factorization.

The kernel K(z) has branch points on the unit circle at z = e^{+-i theta*}
with 2 cos theta* = 2 - Omega^2 (the unit-circle zeros of H) whenever
|2 - Omega^2| <= 2.  The integration contour follows the unit circle but
bulges radially outward around e^{+i theta*} and inward around e^{-i theta*}:
giving Omega a small positive imaginary part moves the former branch point
inward and the latter outward, so these are the sides forced by limiting
absorption.

The rational fit runs in the symmetric variable alpha = z + 1/z, which maps
both halves of the contour onto a single curve.  Back-mapping each alpha-plane
zero and pole through z^2 - alpha z + 1 = 0 produces z-plane zeros and poles
in reciprocal pairs, so the approximant satisfies K(z) = K(1/z) by
construction rather than to fit accuracy.  Only the upper-half cover is
sampled: the lower half maps onto (nearly) the same alpha curve, and feeding
the fitter near-duplicate data provokes spurious pole/zero doublets.

Indentation bumps use the periodic profile exp(kappa (cos(theta - c) - 1)),
which is analytic in theta; the trapezoid rule on this parameterization keeps
downstream contour quadrature spectrally accurate.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import AAA

from ._config import (
    AAA_MAX_TERMS,
    AAA_RTOL_LADDER,
    DENSIFY_SPAN,
    INDENT_KAPPA,
    INDENT_RADIUS,
    N_CHECK_SAMPLES,
    N_FIT_SAMPLES,
    N_VERTICES,
    ON_CIRCLE_TOL,
    POLE_MERGE_TOL,
    UNIT_CIRCLE_GUARD,
)
from .errors import (
    ApproximationFailed,
    CircleStraddle,
    ConfigError,
    MultipleZPKPole,
    PoleOnContour,
)
from .lattice import LatticeParams, kernel_K_of_z, unit_root_pair
from .rfun import ZPK

__all__ = [
    "Contour",
    "KernelFactors",
    "approximate_kernel",
    "build_contour",
    "build_factors",
    "dump_debug_csv",
    "factorize",
]


def _bump_profile(bumps, kappa, theta):
    r = np.ones_like(theta)
    for center, amp in bumps:
        r = r + amp * np.exp(kappa * (np.cos(theta - center) - 1.0))
    return r


@dataclass(frozen=True, eq=False)
class Contour:
    """Closed counterclockwise curve z = rho(theta) e^{i theta} around 0.

    ``vertices`` samples the curve at equally spaced angles for geometry
    queries and debug dumps; anything needing spectral accuracy goes
    through the smooth parameterization ``point``/``dpoint`` instead.
    ``bumps`` holds (center angle, signed amplitude) pairs; positive
    amplitude bulges outward.
    """

    vertices: np.ndarray
    indent_radius: float
    special_points: np.ndarray
    bumps: tuple
    kappa: float

    def rho(self, theta):
        return _bump_profile(self.bumps, self.kappa, np.asarray(theta, dtype=np.float64))

    def drho(self, theta):
        th = np.asarray(theta, dtype=np.float64)
        r = np.zeros_like(th)
        for center, amp in self.bumps:
            r = r - amp * self.kappa * np.sin(th - center) * np.exp(
                self.kappa * (np.cos(th - center) - 1.0)
            )
        return r

    def point(self, theta):
        th = np.asarray(theta, dtype=np.float64)
        return self.rho(th) * np.exp(1j * th)

    def dpoint(self, theta):
        th = np.asarray(theta, dtype=np.float64)
        return (self.drho(th) + 1j * self.rho(th)) * np.exp(1j * th)

    def quad_nodes(self, n):
        """Nodes and weights with sum(f(z) w) ~ contour integral of f dz.

        The half-step offset keeps z = +-1 off the grid so integrands with
        features pinned there are never sampled exactly on them.
        """
        th = -np.pi + 2.0 * np.pi * (np.arange(n) + 0.5) / n
        return self.point(th), self.dpoint(th) * (2.0 * np.pi / n)

    def contains(self, z):
        # the curve is star-shaped about 0, so a radial test suffices
        za = np.asarray(z, dtype=np.complex128)
        return np.abs(za) < self.rho(np.angle(za))

    def distance(self, z):
        """Distance from each point to the closed polyline of vertices."""
        zf = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
        a = self.vertices
        d = np.roll(a, -1) - a
        t = ((zf[:, None] - a[None, :]) * np.conj(d)[None, :]).real
        t = np.clip(t / (np.abs(d) ** 2)[None, :], 0.0, 1.0)
        dist = np.abs(zf[:, None] - (a[None, :] + t * d[None, :])).min(axis=1)
        return dist.reshape(np.shape(z)) if np.shape(z) else float(dist[0])

    @property
    def indent_mask(self):
        """Vertices whose radius is perturbed above the on-circle tolerance."""
        th = np.angle(self.vertices)
        mask = np.zeros(th.shape, dtype=bool)
        nb = max(len(self.bumps), 1)
        margin = 2.0 * np.pi / max(len(self.vertices), 1)
        for center, amp in self.bumps:
            # solve amp exp(kappa (cos d - 1)) = tol/nb for the span d
            cos_d = 1.0 + np.log(ON_CIRCLE_TOL / (abs(amp) * nb)) / self.kappa
            span = np.pi if cos_d <= -1.0 else float(np.arccos(min(cos_d, 1.0)))
            delta = np.angle(np.exp(1j * (th - center)))
            mask |= np.abs(delta) <= span + margin
        return mask


def build_contour(
    params: LatticeParams,
    indent_radius: float = INDENT_RADIUS,
    n_vertices: int = N_VERTICES,
    *,
    extra_dimples=(),
) -> Contour:
    """Unit circle with indentation bumps against the kernel branch points.

    ``extra_dimples`` is a sequence of (angle, sign) pairs adding bumps of
    the same amplitude elsewhere, e.g. an inward dimple (sign -1) clearing
    an offset forcing pole.  When |2 - Omega^2| > 2 the kernel has no
    unit-circle branch points and the plain circle is returned.
    """
    if n_vertices < 256:
        raise ConfigError("n_vertices must be at least 256")
    if not 0.0 < indent_radius <= 0.2:
        raise ConfigError("indent_radius must lie in (0, 0.2]")
    a = float(indent_radius)
    cos_ts = (2.0 - float(np.real(params.omega)) ** 2) / 2.0
    bumps = []
    if abs(cos_ts) <= 1.0:
        theta_star = float(np.arccos(cos_ts))
        special = np.exp(1j * np.array([theta_star, -theta_star]))
        bumps = [(theta_star, +a), (-theta_star, -a)]
    else:
        special = np.zeros(0, dtype=np.complex128)
    for angle, sign in extra_dimples:
        if sign not in (-1, 1):
            raise ConfigError("dimple sign must be +1 (outward) or -1 (inward)")
        ang = float(np.angle(np.exp(1j * float(angle))))
        gaps = [abs(np.angle(np.exp(1j * (ang - c)))) for c, _ in bumps]
        if gaps and min(gaps) < 0.35:
            raise ConfigError(
                "extra dimple at angle %.3f overlaps an existing indentation" % ang
            )
        bumps.append((ang, float(sign) * a))
    bumps = tuple(bumps)
    th = -np.pi + 2.0 * np.pi * np.arange(n_vertices) / n_vertices
    verts = _bump_profile(bumps, INDENT_KAPPA, th) * np.exp(1j * th)
    return Contour(verts, a, special, bumps, INDENT_KAPPA)


def _fit_angles(contour: Contour, n: int):
    """Sample angles: upper-half cover plus 4x-dense windows at indentations.

    Only the outward (+theta*) branch bump is windowed; its mirror image
    maps onto the same alpha curve.  Extra dimples get windows at their own
    angles since their alpha images leave the common cover.
    """
    n_branch = 2 if contour.special_points.size else 0
    centers = [contour.bumps[0][0]] if n_branch else []
    centers += [c for c, _ in contour.bumps[n_branch:]]
    w = DENSIFY_SPAN
    window_len = 2.0 * w * len(centers)
    dens = n / (np.pi + 3.0 * window_len)
    n_base = max(int(np.ceil(dens * np.pi)), 64)
    pieces = [np.linspace(1e-6, np.pi - 1e-6, n_base)]
    n_win = max(int(np.ceil(3.0 * dens * 2.0 * w)), 8)
    for c in centers:
        pieces.append(np.linspace(c - w, c + w, n_win))
    th = np.unique(np.concatenate(pieces))
    return th


def approximate_kernel(
    params: LatticeParams,
    contour: Contour,
    tol: float,
    *,
    max_terms: int = AAA_MAX_TERMS,
    pole_clearance: float | None = None,
    with_error: bool = False,
):
    """Rational fit of the kernel on the contour, returned as a ZPK.

    Fits K_hat(alpha) = K(z), alpha = z + 1/z, adaptively on contour
    samples, back-maps zeros and poles to reciprocal z-pairs, and anchors
    the gain at z = -1.  Progressively tighter fit targets are tried until
    a fresh out-of-sample grid on the full contour meets ``tol``; the
    spent candidates are discarded, so a passing result never depends on
    luck with the training grid.

    With ``with_error=True`` returns (zpk, measured sup-norm error).
    """
    if tol < 1e-13:
        raise ConfigError("tol below 1e-13 is not resolvable")
    clearance = 0.5 * contour.indent_radius if pole_clearance is None else float(pole_clearance)

    th_fit = _fit_angles(contour, N_FIT_SAMPLES)
    z_fit = contour.point(th_fit)
    k_fit = kernel_K_of_z(z_fit, params)
    alpha = z_fit + 1.0 / z_fit
    scale = float(np.max(np.abs(k_fit)))

    m = N_CHECK_SAMPLES
    th_chk = -np.pi + 2.0 * np.pi * (np.arange(m) + 0.37) / m
    z_chk = contour.point(th_chk)
    k_chk = kernel_K_of_z(z_chk, params)

    z_ref = -1.0 + 0.0j
    k_ref = complex(kernel_K_of_z(z_ref, params))

    best_err = np.inf
    for frac in AAA_RTOL_LADDER:
        rtol = max(frac * tol / scale, 4.0e-16)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                fit = AAA(alpha, k_fit, rtol=rtol, max_terms=max_terms)
            except (ValueError, ZeroDivisionError, np.linalg.LinAlgError):
                continue
        a_poles, a_zeros = _prune_pairs(fit.poles(), fit.roots())
        if a_poles.size != a_zeros.size or a_poles.size == 0:
            continue
        ps, pb = unit_root_pair(a_poles)
        zs, zb = unit_root_pair(a_zeros)
        poles_z = np.concatenate([ps, pb])
        zeros_z = np.concatenate([zs, zb])
        gain = k_ref * np.prod(z_ref - poles_z) / np.prod(z_ref - zeros_z)
        if not np.isfinite(gain):
            continue
        try:
            cand = ZPK(zeros_z, poles_z, gain)
        except MultipleZPKPole:
            continue
        err = float(np.max(np.abs(cand.eval(z_chk) - k_chk)))
        best_err = min(best_err, err)
        if err > tol:
            continue
        pts = np.concatenate([cand.zeros, cand.poles])
        dmin = float(np.min(contour.distance(pts)))
        if dmin < clearance:
            raise PoleOnContour(
                "fitted zero/pole at distance %.3g from contour (< %.3g)"
                % (dmin, clearance)
            )
        if np.any(contour.contains(pts) != (np.abs(pts) < 1.0)):
            raise PoleOnContour("fitted zero/pole on wrong side of an indentation")
        return (cand, err) if with_error else cand
    raise ApproximationFailed(
        "kernel fit reached error %.3g > tol %.3g (max_terms=%d)"
        % (best_err, tol, max_terms)
    )


def _prune_pairs(poles, zeros):
    """Drop pole/zero pairs too close to be genuine (spurious doublets)."""
    zs = list(np.asarray(zeros, dtype=np.complex128))
    keep = []
    for p in np.asarray(poles, dtype=np.complex128):
        if zs:
            d = np.abs(np.array(zs) - p)
            j = int(np.argmin(d))
            if d[j] < max(POLE_MERGE_TOL, 1e-9 * abs(p)):
                zs.pop(j)
                continue
        keep.append(p)
    return np.array(keep, dtype=np.complex128), np.array(zs, dtype=np.complex128)


class KernelFactors:
    """Factorization K = k_plus * k_minus with precomputed inverses.

    k_plus keeps every zero and pole strictly inside the unit circle and
    k_minus strictly outside, so each factor is analytic and zero-free on
    its own side.  ``inv_plus``/``inv_minus`` share the zero/pole arrays
    bitwise with the factors; downstream products rely on that to cancel
    factors exactly rather than to rounding.
    """

    def __init__(self, k_full: ZPK, k_plus: ZPK, k_minus: ZPK, approx_error: float = 0.0):
        self.k_full = k_full
        self.k_plus = k_plus
        self.k_minus = k_minus
        self.approx_error = float(approx_error)
        self.inv_plus = k_plus.inverse()
        self.inv_minus = k_minus.inverse()

    @property
    def c3(self):
        """k_minus(0), the minus factor's value at the origin."""
        return complex(self.k_minus.eval(0.0))

    @property
    def c4(self):
        """k_plus at infinity, which is its gain; equals c3 by symmetry."""
        return complex(self.k_plus.gain)


def factorize(k_full: ZPK, approx_error: float = 0.0) -> KernelFactors:
    """Split a reciprocal-paired ZPK by zero/pole modulus.

    The gain split is pinned by the symmetry identity k_plus(z) =
    k_minus(1/z) at z = 1, which reduces to g_plus^2 = gain *
    prod(outside zeros) / prod(outside poles); the square root sign is
    fixed by Re g_plus > 0, the principal branch of the true factor's
    value at infinity.
    """
    mz = np.abs(k_full.zeros)
    mp = np.abs(k_full.poles)
    mods = np.concatenate([mz, mp])
    if mods.size and float(np.min(np.abs(mods - 1.0))) <= UNIT_CIRCLE_GUARD:
        raise CircleStraddle("zero/pole within guard band of |z| = 1")
    z_in, z_out = k_full.zeros[mz < 1.0], k_full.zeros[mz > 1.0]
    p_in, p_out = k_full.poles[mp < 1.0], k_full.poles[mp > 1.0]
    if z_in.size != z_out.size or p_in.size != p_out.size:
        raise CircleStraddle("zeros/poles do not partition into reciprocal pairs")
    rho = np.prod(z_out) / np.prod(p_out)
    g_plus = complex(np.sqrt(complex(k_full.gain) * rho))
    if g_plus.real < 0 or (g_plus.real == 0 and g_plus.imag < 0):
        g_plus = -g_plus
    g_minus = complex(k_full.gain) / g_plus
    return KernelFactors(
        k_full,
        ZPK(z_in, p_in, g_plus),
        ZPK(z_out, p_out, g_minus),
        approx_error,
    )


def build_factors(
    params: LatticeParams,
    contour: Contour,
    tol: float,
    *,
    max_terms: int = AAA_MAX_TERMS,
    pole_clearance: float | None = None,
) -> KernelFactors:
    """Approximate the kernel on the contour and factorize it."""
    k_full, err = approximate_kernel(
        params,
        contour,
        tol,
        max_terms=max_terms,
        pole_clearance=pole_clearance,
        with_error=True,
    )
    return factorize(k_full, approx_error=err)


def dump_debug_csv(path, contour: Contour, factors: KernelFactors) -> None:
    """Write contour vertices and factor zeros/poles as re,im,kind rows."""
    rows = [(v.real, v.imag, "vertex") for v in contour.vertices]
    rows += [(p.real, p.imag, "pole+") for p in factors.k_plus.poles]
    rows += [(p.real, p.imag, "pole-") for p in factors.k_minus.poles]
    rows += [(q.real, q.imag, "zero+") for q in factors.k_plus.zeros]
    rows += [(q.real, q.imag, "zero-") for q in factors.k_minus.zeros]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "kind"])
        writer.writerows(rows)
