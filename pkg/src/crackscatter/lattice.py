"""Square-lattice dispersion, propagation factor, and Wiener-Hopf kernel.

Mathematical formulation
------------------------
The out-of-plane displacement on the intact square lattice satisfies the
discrete Helmholtz equation

    u_{m+1,n} + u_{m-1,n} + u_{m,n+1} + u_{m,n-1} + (omega^2 - 4) u_{m,n} = 0,

with plane waves e^{-i(K_m m + K_n n)} on the dispersion surface
omega^2 = 4 - 2 cos K_m - 2 cos K_n. After a horizontal z-transform the
vertical direction decouples into a two-term recursion with symbol

    H(z) = 2 - z - 1/z - omega^2,        R(z) = H(z) + 4,

and the half-plane solution decays like lambda(z)^n where lambda is the
root of lambda^2 - (H + 2) lambda + 1 = 0 with |lambda| < 1. The kernel
of the crack functional equation is K(z) = (1 - lambda)/(1 + lambda),
a branch of sqrt(H/R) that never needs explicit cut tracking: picking
the decaying lambda encodes the radiation condition by itself. On the
propagating arc of the unit circle both roots are unimodular; there the
limiting-absorption rule (omega -> omega + i0) selects Im lambda > 0,
which is what a small positive eps_omega converges to.

Cracks are rows of broken vertical links between n = 0 and n = -1. The
scattered field is antisymmetric, u_{m,-1-n} = -u_{m,n}, so only n >= 0
is ever stored; the face equations use the one-sided boundary operator

    D0 u = u_{m+1,0} + u_{m-1,0} + u_{m,1} - 3 u_{m,0},

and an incident plane wave enters through the link jump
v_m = e^{-i m K_m} (e^{i K_n} - 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._config import DEGENERACY_TOL, ROOT_TOL, TIE_TOL
from .errors import BranchAmbiguity, ConfigError, DegenerateFrequency, OutOfGrid, PoleHit

__all__ = [
    "LatticeParams",
    "IncidentWave",
    "FieldGrid",
    "dispersion_omega",
    "incident_wave",
    "unit_root_pair",
    "lambda_of_z",
    "kernel_K_of_z",
    "incident_v",
    "helmholtz_residual",
]

_DEGENERATE = (0.0, 2.0, 2.0 * np.sqrt(2.0))


@dataclass(frozen=True)
class LatticeParams:
    """Lattice frequency with optional limiting-absorption shift."""

    omega: complex
    eps_omega: float = 0.0

    def __post_init__(self):
        re = self.omega.real
        if not 0.0 < re < 2.0 * np.sqrt(2.0):
            raise DegenerateFrequency(f"omega = {re} outside the passband")
        for w in _DEGENERATE:
            if abs(re - w) <= DEGENERACY_TOL:
                raise DegenerateFrequency(f"omega = {re} within tolerance of {w}")
        if self.eps_omega < 0:
            raise ConfigError("eps_omega must be nonnegative")

    @property
    def omega2(self) -> complex:
        return self.omega * self.omega


@dataclass(frozen=True)
class IncidentWave:
    """Incident plane wave e^{-i(K_m m + K_n n)} on the dispersion surface."""

    k_m: float
    k_n: float
    k: float
    phi_in: float


def dispersion_omega(k: float, phi_in: float, eps_omega: float = 0.0) -> LatticeParams:
    """Frequency of the incident wave with wavenumber k at angle phi_in."""
    if not 0.0 < k <= np.sqrt(2.0) * np.pi:
        raise ConfigError(f"wavenumber k = {k} outside (0, sqrt(2) pi]")
    k_m = k * np.cos(phi_in)
    k_n = k * np.sin(phi_in)
    om = np.sqrt(4.0 - 2.0 * np.cos(k_m) - 2.0 * np.cos(k_n))
    omega = complex(om, eps_omega) if eps_omega > 0 else complex(om)
    return LatticeParams(omega=omega, eps_omega=eps_omega)


def incident_wave(k: float, phi_in: float) -> IncidentWave:
    """Bloch wavenumbers of the incident wave; must stay in the zone."""
    k_m = k * np.cos(phi_in)
    k_n = k * np.sin(phi_in)
    if not (-np.pi <= k_m <= np.pi and -np.pi <= k_n <= np.pi):
        raise ConfigError("Bloch wavenumbers outside the Brillouin zone")
    return IncidentWave(k_m=k_m, k_n=k_n, k=k, phi_in=phi_in)


def unit_root_pair(b):
    """Roots of x^2 - b x + 1 = 0 as (small, big) with small = 1/big.

    The square root is aligned with b so the division for the small
    root never cancels; |small| <= 1 <= |big| always holds.
    """
    b = np.asarray(b, dtype=np.complex128)
    s = np.sqrt(b * b - 4.0)
    flip = np.real(np.conj(b) * s) < 0
    s = np.where(flip, -s, s)
    big = 0.5 * (b + s)
    small = 1.0 / big
    return small, big


def lambda_of_z(z, params: LatticeParams):
    """Vertical decay factor lambda(z), the |lambda| < 1 root.

    On the propagating arc both roots are unimodular and the tie is
    broken toward Im lambda > 0, the omega + i0 limit. Raises
    BranchAmbiguity only where the two roots actually coincide
    (lambda = +-1, the branch points of the kernel).
    """
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z == 0):
        raise ConfigError("lambda_of_z requires z != 0")
    b = 4.0 - z - 1.0 / z - params.omega2
    if np.any(np.abs(b - 2.0) < ROOT_TOL) or np.any(np.abs(b + 2.0) < ROOT_TOL):
        raise BranchAmbiguity(
            "coincident propagation roots; deform the contour or set eps_omega > 0"
        )
    small, big = unit_root_pair(b)
    tie = np.abs(np.abs(small) - 1.0) <= TIE_TOL
    lam = np.where(tie & (small.imag < 0), big, small)
    return lam if lam.shape else complex(lam)


def kernel_K_of_z(z, params: LatticeParams):
    """Wiener-Hopf kernel K(z) = (1 - lambda)/(1 + lambda) = sqrt(H/R)."""
    za = np.asarray(z, dtype=np.complex128)
    if np.any(za == 0):
        raise ConfigError("kernel_K_of_z requires z != 0")
    b = 4.0 - za - 1.0 / za - params.omega2
    # lambda = -1 is a double root there, so test b before branch selection
    if np.any(np.abs(b + 2.0) < ROOT_TOL):
        raise PoleHit("kernel pole: lambda = -1 (zero of R)")
    lam = lambda_of_z(z, params)
    if np.any(np.abs(1.0 + lam) < ROOT_TOL):
        raise PoleHit("kernel pole: lambda = -1 (zero of R)")
    out = (1.0 - lam) / (1.0 + lam)
    return out if np.asarray(out).shape else complex(out)


def incident_v(m: int, wave: IncidentWave) -> complex:
    """Incident link jump v_m = u^in_{m,-1} - u^in_{m,0} across the crack row."""
    return np.exp(-1j * m * wave.k_m) * (np.exp(1j * wave.k_n) - 1.0)


def incident_field(wave: IncidentWave, m, n):
    """Incident plane wave u^in_{m,n} = e^{-i(m K_m + n K_n)}."""
    return np.exp(-1j * (np.asarray(m) * wave.k_m + np.asarray(n) * wave.k_n))


@dataclass
class FieldGrid:
    """Complex field on an (m, n >= 0) window; n < 0 read by antisymmetry.

    values[i, j] holds u at m = m_range[0] + i, n = j. The mirror rule
    u_{m,-1-n} = -u_{m,n} matches the scattered field of a crack row on
    n in {-1, 0}; grids holding other fields should only be read at
    n >= 0.
    """

    m_range: tuple[int, int]
    n_range: tuple[int, int]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_range[0] != 0:
            raise ConfigError("FieldGrid stores n >= 0 only")
        expect = (
            self.m_range[1] - self.m_range[0] + 1,
            self.n_range[1] - self.n_range[0] + 1,
        )
        if self.values.shape != expect:
            raise ConfigError(f"values shape {self.values.shape} != {expect}")

    def value(self, m: int, n: int) -> complex:
        if n < 0:
            return -self.value(m, -1 - n)
        if not (self.m_range[0] <= m <= self.m_range[1] and n <= self.n_range[1]):
            raise OutOfGrid(f"node ({m}, {n}) outside stored window")
        return complex(self.values[m - self.m_range[0], n])


def helmholtz_residual(grid: FieldGrid, params: LatticeParams, node) -> complex:
    """Discrete Helmholtz operator applied to the grid at one node.

    Interior rows (|2n + 1| > 1) use the five-point stencil; the crack
    rows n = 0 and n = -1 use the one-sided three-point boundary
    operator, whose value the caller compares against the appropriate
    face forcing. Antisymmetry maps n <= -1 onto the stored half.
    """
    m, n = node
    if n <= -1:
        return -helmholtz_residual(grid, params, (m, -1 - n))
    u = grid.value
    center = u(m, n)
    if n == 0:
        acc = u(m + 1, 0) + u(m - 1, 0) + u(m, 1) - 3.0 * center
    else:
        acc = u(m + 1, n) + u(m - 1, n) + u(m, n + 1) + u(m, n - 1) - 4.0 * center
    return acc + params.omega2 * center
