"""Exact crack fields from lattice Green's functions.

An independent route to the scattered field: the Green's function of
the discrete Helmholtz operator turns the broken-link conditions into a
dense symmetric Toeplitz system for the crack-face jumps, bypassing the
spectral factorization entirely.  The module exists to cross-validate
the iterative solver, so it must not share solution machinery with it;
only the dispersion root rule is common.

G_{m,n} solves

    G_{m+1,n} + G_{m-1,n} + G_{m,n+1} + G_{m,n-1} + (omega^2 - 4) G
        = delta_{m,0} delta_{n,0},

and, closing the vertical wavenumber integral over the decaying root
t(xi) of t + 1/t = 4 - omega^2 - 2 cos xi, reduces to one angular
integral

    G_{m,n} = (1/2 pi) integral_{-pi..pi} cos(m xi) t^{|n|} / (t - 1/t) dxi.

The denominator vanishes like a square root where t reaches +-1 (the
band edge of vertically radiating waves); substituting
xi = xi_s -+ sigma^2 on each side of that angle removes the singularity,
so plain adaptive quadrature reaches 1e-10 without special weights.
With absorption (eps_omega > 0) the root leaves the unit circle and the
plain integral is regular.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import dblquad, quad
from scipy.linalg import toeplitz

from ._config import COND_LIMIT, GREENS_EPSABS, GREENS_EPSREL
from .errors import ConfigError, QuadratureUnresolved, SingularSystem
from .lattice import FieldGrid, IncidentWave, LatticeParams, incident_v, lambda_of_z

__all__ = [
    "GreensTable",
    "greens",
    "greens_double",
    "exact_face_jumps",
    "exact_crack_field",
    "compare",
    "region_D",
]

# returned error estimate must clear this for the value to be trusted
_ERR_GATE = 1e-10


def _wave_angle(om2: float):
    """Angle where the vertical root reaches +-1, if one exists.

    Below omega = 2 the root hits +1 (cos xi = 1 - omega^2/2); between
    2 and 2 sqrt(2) it hits -1 instead. The degenerate frequencies where
    the angle would sit exactly at 0 or pi are rejected upstream.
    """
    for target in (2.0, -2.0):
        c = (4.0 - om2 - target) / 2.0
        if abs(c) < 1.0:
            return float(np.arccos(c))
    return None


def _quad_checked(f, a, b, *, limit, points=None):
    """Real adaptive quadrature that refuses to return a doubtful value."""
    out = quad(
        f,
        a,
        b,
        epsabs=GREENS_EPSABS,
        epsrel=GREENS_EPSREL,
        limit=limit,
        points=points,
        full_output=1,
    )
    if len(out) > 3 or out[1] > _ERR_GATE:
        raise QuadratureUnresolved(
            f"angular quadrature error estimate {out[1]:.2e} over ({a:.3g}, {b:.3g})"
        )
    return out[0]


def _quad_complex(f, a, b, *, limit, points=None):
    re = _quad_checked(lambda x: f(x).real, a, b, limit=limit, points=points)
    im = _quad_checked(lambda x: f(x).imag, a, b, limit=limit, points=points)
    return complex(re, im)


def greens(m: int, n: int, params: LatticeParams) -> complex:
    """Lattice Green's function G_{m,n} by the single angular integral.

    Both index symmetries (sign flips and the m <-> n swap) are applied
    first, putting the larger index on the decaying root power where it
    damps instead of oscillating.
    """
    mm, nn = sorted((abs(int(m)), abs(int(n))))
    limit = max(200, 40 * (mm + nn))

    def raw(xi):
        t = lambda_of_z(np.exp(1j * xi), params)
        return np.cos(mm * xi) * t**nn / (t - 1.0 / t)

    if params.eps_omega > 0:
        ts = _wave_angle(params.omega2.real)
        pts = None if ts is None else [ts]
        val = _quad_complex(raw, 0.0, np.pi, limit=limit, points=pts)
    else:
        ts = _wave_angle(params.omega2.real)
        # admissible real frequencies always have a band-edge angle
        val = _quad_complex(
            lambda s: 2.0 * s * raw(ts - s * s), 0.0, np.sqrt(ts), limit=limit
        )
        val += _quad_complex(
            lambda s: 2.0 * s * raw(ts + s * s), 0.0, np.sqrt(np.pi - ts), limit=limit
        )
    return val / np.pi


def greens_double(m: int, n: int, params: LatticeParams) -> complex:
    """G_{m,n} by brute-force quadrature of the defining double integral.

    Cross-route check only: needs absorption to keep the symbol
    omega^2 - 4 + 2 cos xi + 2 cos eta away from zero, and converges far
    more slowly than the reduced form.
    """
    if not params.eps_omega > 0:
        raise ConfigError("double-integral route needs eps_omega > 0")
    om2 = params.omega2
    mm, nn = abs(int(m)), abs(int(n))

    def kernel(eta, xi):
        return np.cos(mm * xi) * np.cos(nn * eta) / (
            om2 - 4.0 + 2.0 * np.cos(xi) + 2.0 * np.cos(eta)
        )

    re = dblquad(
        lambda eta, xi: kernel(eta, xi).real, 0.0, np.pi, 0.0, np.pi,
        epsabs=1e-9, epsrel=1e-9,
    )[0]
    im = dblquad(
        lambda eta, xi: kernel(eta, xi).imag, 0.0, np.pi, 0.0, np.pi,
        epsabs=1e-9, epsrel=1e-9,
    )[0]
    return complex(re, im) / np.pi**2


class GreensTable:
    """Memoized Green's values; the sorted (|m|, |n|) key folds in both
    index symmetries so each class is integrated once."""

    def __init__(self, params: LatticeParams):
        self.params = params
        self._cache: dict[tuple[int, int], complex] = {}

    def value(self, m: int, n: int) -> complex:
        key = tuple(sorted((abs(int(m)), abs(int(n)))))
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = greens(key[0], key[1], self.params)
        return got

    def __len__(self) -> int:
        return len(self._cache)


def exact_face_jumps(
    L: int, wave: IncidentWave, params: LatticeParams, table: GreensTable | None = None
):
    """Scattered link jumps v_j, j = 1..L-1, of a single crack of length L.

    Self-consistency of the Green's superposition with v_m = -2 u_{m,0}
    gives v = F (v + v^in) with the symmetric Toeplitz matrix
    [F]_{ij} = 2 G_{i-j,1} - 2 G_{i-j,0}.  Returns (v, v_in, table).
    """
    L = int(L)
    if not 2 <= L <= 200:
        raise ConfigError(f"crack length {L} outside the supported range [2, 200]")
    if table is None:
        table = GreensTable(params)
    col = np.array(
        [2.0 * table.value(k, 1) - 2.0 * table.value(k, 0) for k in range(L - 1)]
    )
    # complex symmetric, not Hermitian: pass the row explicitly, since
    # one-argument toeplitz would conjugate it
    F = toeplitz(col, col)
    A = np.eye(L - 1) - F
    cond = np.linalg.cond(A)
    if cond > COND_LIMIT:
        raise SingularSystem(f"I - F condition number {cond:.3e}")
    v_in = np.asarray(incident_v(np.arange(1, L), wave), dtype=np.complex128)
    v = np.linalg.solve(A, F @ v_in)
    return v, v_in, table


def exact_crack_field(
    L: int, wave: IncidentWave, params: LatticeParams, grid
) -> FieldGrid:
    """Scattered field of a single crack by Green's superposition.

    ``grid`` is ((m_lo, m_hi), (0, n_hi)).  Each node sums the face
    jumps against vertical differences of the Green's function:
    u_{m,n} = sum_j (v_j + v^in_j)(G_{m-j,n} - G_{m-j,n+1}).
    """
    (m_lo, m_hi), (n_lo, n_hi) = grid
    if n_lo != 0:
        raise ConfigError("field window must start at n = 0")
    v, v_in, table = exact_face_jumps(L, wave, params)
    w = v + v_in
    ms = range(int(m_lo), int(m_hi) + 1)
    vals = np.empty((len(ms), int(n_hi) + 1), dtype=np.complex128)
    for i, mv in enumerate(ms):
        for nv in range(int(n_hi) + 1):
            acc = 0.0 + 0.0j
            for j in range(1, L):
                acc += w[j - 1] * (table.value(mv - j, nv) - table.value(mv - j, nv + 1))
            vals[i, nv] = acc
    return FieldGrid(m_range=(int(m_lo), int(m_hi)), n_range=(0, int(n_hi)), values=vals)


def compare(a: FieldGrid, b: FieldGrid, region) -> float:
    """Largest node-wise difference |a - b| over an iterable of (m, n)."""
    return max(abs(a.value(mv, nv) - b.value(mv, nv)) for mv, nv in region)


def region_D(L: int):
    """Perimeter of the comparison rectangle m in [-10, L+10], n in [0, 10]."""
    m_lo, m_hi, n_hi = -10, int(L) + 10, 10
    nodes = {(mv, nv) for mv in (m_lo, m_hi) for nv in range(n_hi + 1)}
    nodes.update((mv, nv) for mv in range(m_lo, m_hi + 1) for nv in (0, n_hi))
    return tuple(sorted(nodes))
