"""Iterative solution of the per-edge scalar Wiener-Hopf equations.

The boundary-row transform is partitioned at the crack edges m_1 < ...
< m_M (m_1 = 0).  Pieces covering crack faces enter the boundary
equation multiplied by the kernel K, pieces covering intact nodes enter
with coefficient 1.  Rewriting the piece left of edge ell as a shifted
minus-function gives, after multiplying the whole equation by z^{m_ell},
one scalar equation per edge,

    A_ll U_-^(ell) + B_ll U_+^(ell) = F_ell,

with constant diagonal pair (A_ll, B_ll) = (1, K) at a start edge
(intact left / crack right) and (K, 1) at an end edge.  Off-diagonal
couplings are monomial shifts times 1 or K and go to the right-hand
side, evaluated at the latest available iterates (Gauss-Seidel).  Each
scalar equation is solved exactly by multiplicative factorization of K
and an additive split, so a sweep costs O(M) rational-function updates
regardless of the crack lengths.

Convention note: U_-^(ell) here is normalized so that the diagonal pair
stays constant, i.e. U_-^(ell) = z^{m_ell - m_{ell-1}} U_+^(ell-1) at
the solution.  Under this normalization U_-^(ell)(0) equals the edge
value u_{m_ell,0} when the piece left of edge ell is intact and closed
on the right (start edges with ell >= 2); for end edges the constant-
fixing step of the solve enforces U_-^(ell)(0) = 0 exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from ._config import POLE_OFFSET_DEFAULT, SPECTRAL_TOL, UNIT_CIRCLE_GUARD
from .errors import ConfigError, SemiInfiniteUnsupportedAngle
from .kernel import Contour, KernelFactors
from .lattice import IncidentWave
from .rfun import LaurentPF, ZPK, add, additive_split, mul_monomial, mul_zpk, scale

__all__ = [
    "CrackLayout",
    "IterationConfig",
    "SpectralState",
    "initial_state",
    "forcing_fN",
    "assemble_Ftilde",
    "solve_odd",
    "solve_even",
    "iterate",
    "iterate_until",
    "assemble_U",
    "spectral_diff",
    "scalar_residual",
    "export_history_csv",
]


@dataclass(frozen=True)
class CrackLayout:
    """Collinear crack layout on the boundary row.

    ``edges`` lists the horizontal indices of the crack-edge nodes in
    increasing order, normalized so the leftmost edge sits at m = 0.
    Broken vertical links lie strictly between consecutive edges of the
    crack segments; segments alternate intact/crack outward from each
    end, with the two infinite ends fixed by the semi-infinite flags.
    """

    edges: tuple
    left_semi_infinite: bool = False
    right_semi_infinite: bool = False

    def __post_init__(self):
        edges = tuple(int(m) for m in self.edges)
        object.__setattr__(self, "edges", edges)
        if not edges:
            raise ConfigError("layout needs at least one edge")
        if edges[0] != 0:
            raise ConfigError("the leftmost edge must sit at m = 0")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise ConfigError("edge positions must be strictly increasing")
        if self.segment_is_crack(len(edges)) != bool(self.right_semi_infinite):
            raise ConfigError(
                "edge count inconsistent with the semi-infinite flags: "
                "segments alternate intact/crack between the two ends"
            )
        for j in range(1, len(edges)):
            if self.segment_is_crack(j) and edges[j] - edges[j - 1] < 2:
                raise ConfigError(
                    f"crack between m={edges[j - 1]} and m={edges[j]} has no "
                    "interior face nodes; finite cracks need length >= 2"
                )

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def segment_is_crack(self, j: int) -> bool:
        """Type of the segment with j edges to its left (0 <= j <= n_edges)."""
        return bool(self.left_semi_infinite) == (j % 2 == 0)

    def edge_is_start(self, ell: int) -> bool:
        """True when edge ``ell`` (1-based) has intact left, crack right."""
        return self.segment_is_crack(ell)

    def crack_spans(self):
        """Edge pairs (m_left, m_right) of the finite cracks, left to right."""
        return [
            (self.edges[j - 1], self.edges[j])
            for j in range(1, self.n_edges)
            if self.segment_is_crack(j)
        ]


@dataclass(frozen=True)
class IterationConfig:
    """Sweep strategy, stopping rule and the contour used for monitoring."""

    contour: Contour
    strategy: str = "forward_forward"
    max_iter: int = 30
    spectral_tol: float = SPECTRAL_TOL
    n_samples: int = 1024

    def __post_init__(self):
        if self.strategy not in ("forward_forward", "forward_backward"):
            raise ConfigError(f"unknown sweep strategy {self.strategy!r}")
        if self.max_iter < 1:
            raise ConfigError("max_iter must be at least 1")
        if not self.spectral_tol > 0:
            raise ConfigError("spectral_tol must be positive")
        if self.n_samples < 64:
            raise ConfigError("n_samples too small to monitor the transform")


@dataclass(frozen=True, eq=False)
class SpectralState:
    """Value snapshot of all per-edge unknowns after some number of sweeps.

    ``c2`` holds the constant fixed by each end-edge solve (keyed by the
    1-based edge index); ``c1`` holds the start-edge diagnostic constants
    U_-^(ell)(0) / C3, reported but never used by the solver.
    """

    layout: CrackLayout
    u_plus: tuple
    u_minus: tuple
    c2: dict
    c1: dict
    iteration: int = 0
    history: tuple = ()


def initial_state(layout: CrackLayout) -> SpectralState:
    """All-zero unknowns at iteration 0."""
    zeros = tuple(LaurentPF() for _ in layout.edges)
    return SpectralState(layout, zeros, zeros, {}, {}, 0, ())


def _face_pole(zp: complex, pole_offset, want_outside: bool) -> complex:
    """Pole position for a semi-infinite face sum, pushed off the circle."""
    r = abs(zp)
    if abs(r - 1.0) <= UNIT_CIRCLE_GUARD:
        if not pole_offset or pole_offset <= UNIT_CIRCLE_GUARD:
            raise SemiInfiniteUnsupportedAngle(
                "semi-infinite face sum has its pole on the unit circle for "
                "real K_m; configure a nonzero pole_offset"
            )
        return zp * (1.0 + pole_offset) if want_outside else zp / (1.0 + pole_offset)
    if (r > 1.0) != want_outside:
        raise SemiInfiniteUnsupportedAngle(
            "incident wave grows along the semi-infinite crack run; the face "
            "sum has no convergent continuation on this side"
        )
    return zp


def forcing_fN(
    layout: CrackLayout,
    wave: IncidentWave,
    k_full: ZPK,
    *,
    pole_offset: float = POLE_OFFSET_DEFAULT,
) -> LaurentPF:
    """Forcing transform f_N(z) of the boundary-row equation.

    f_N = ((e^{iK_n} - 1)/2) (K(z) - 1) sum_faces (z_p / z)^m with
    z_p = e^{-iK_m}; the sum runs over all crack-face nodes.  Finite
    cracks contribute Laurent monomials; a semi-infinite run sums to a
    geometric-series pole at z_p, placed just off the unit circle when
    K_m is real (limiting absorption fixes the side: outside for a
    leftward run, inside for a rightward one).
    """
    pref = 0.5 * (np.exp(1j * wave.k_n) - 1.0)
    if pref == 0.0:
        return LaurentPF()
    zp = complex(np.exp(-1j * complex(wave.k_m)))
    lau: dict[int, complex] = {}
    for a, b in layout.crack_spans():
        for m in range(a + 1, b):
            lau[-m] = lau.get(-m, 0.0) + zp**m
    poles = []
    atoms = []
    if layout.left_semi_infinite:
        # sum_{m <= m_1 - 1} (z_p/z)^m = -1 - z_p/(z - z_p), pole outside
        zpo = _face_pole(zp, pole_offset, want_outside=True)
        lau[0] = lau.get(0, 0.0) - 1.0
        poles.append((zpo, -zpo))
    if layout.right_semi_infinite:
        # sum_{m >= m_M + 1} (z_p/z)^m = z_p^{m_M+1} z^{-m_M}/(z - z_p), inside
        m_last = layout.edges[-1]
        zpo = _face_pole(zp, pole_offset, want_outside=False)
        atoms.append((zpo, zpo ** (m_last + 1), -m_last))
    P = LaurentPF(laurent=lau, poles=poles, atoms=atoms)
    return scale(add(mul_zpk(P, k_full), scale(P, -1.0)), pref)


def assemble_Ftilde(
    ell: int,
    state: SpectralState,
    layout: CrackLayout,
    k_full: ZPK,
    f_N: LaurentPF,
    direction: str = "fwd",
) -> LaurentPF:
    """Right-hand side of the scalar equation at edge ``ell``.

    Collects z^{m_ell} f_N minus all cross-edge couplings, reading
    whatever iterates ``state`` currently holds.  The sweep stores each
    solve back into the state before moving on, which realizes the
    latest-available update rule in either sweep direction; the
    ``direction`` tag only documents which phase asked.
    """
    if direction not in ("fwd", "bwd"):
        raise ConfigError(f"unknown sweep direction {direction!r}")
    if not 1 <= ell <= layout.n_edges:
        raise ConfigError(f"edge index {ell} outside 1..{layout.n_edges}")
    edges = layout.edges
    m_ell = edges[ell - 1]
    F = LaurentPF() if f_N.is_zero else mul_monomial(f_N, m_ell)
    # lower couplings: shifted minus-functions of the pieces left of ell
    for q in range(1, ell):
        U = state.u_minus[q - 1]
        if U.is_zero:
            continue
        term = mul_zpk(U, k_full) if layout.segment_is_crack(q - 1) else U
        F = add(F, scale(mul_monomial(term, m_ell - edges[q - 1]), -1.0))
    # upper couplings: plus-functions of the pieces right of ell
    for p in range(ell + 1, layout.n_edges + 1):
        U = state.u_plus[p - 1]
        if U.is_zero:
            continue
        term = mul_zpk(U, k_full) if layout.edge_is_start(p) else U
        F = add(F, scale(mul_monomial(term, m_ell - edges[p - 1]), -1.0))
    return F


def solve_odd(F_tilde: LaurentPF, factors: KernelFactors):
    """Solve U_- + K U_+ = F (start-edge pair, A = 1, B = K).

    Dividing by K_- and splitting gives an entire function that vanishes
    at infinity on both sides, so it is identically zero and
    U_+ = (1/K_+) (F/K_-)_+ and U_- = K_- (F/K_-)_-.
    """
    if F_tilde.is_zero:
        return LaurentPF(), LaurentPF()
    T = mul_zpk(F_tilde, factors.inv_minus)
    t_minus, t_plus = additive_split(T)
    u_plus = mul_zpk(t_plus, factors.inv_plus)
    u_minus = mul_zpk(t_minus, factors.k_minus)
    return u_plus, u_minus


def solve_even(F_tilde: LaurentPF, factors: KernelFactors):
    """Solve K U_- + U_+ = F (end-edge pair, A = K, B = 1).

    Here the entire function from the split is a bounded constant, fixed
    by requiring U_-(0) = 0: with c2 = (F/K_+)_-(0),
    U_+ = K_+ [ (F/K_+)_+ + c2 ] and U_- = (1/K_-) [ (F/K_+)_- - c2 ].
    """
    if F_tilde.is_zero:
        return LaurentPF(), LaurentPF(), 0j
    G = mul_zpk(F_tilde, factors.inv_plus)
    g_minus, g_plus = additive_split(G)
    c2 = complex(g_minus.eval(0.0))
    u_plus = mul_zpk(add(g_plus, LaurentPF(laurent={0: c2})), factors.k_plus)
    u_minus = mul_zpk(add(g_minus, LaurentPF(laurent={0: -c2})), factors.inv_minus)
    return u_plus, u_minus, c2


def _sweep_order(n_edges: int, strategy: str):
    fwd = [(ell, "fwd") for ell in range(1, n_edges + 1)]
    if strategy == "forward_forward":
        return fwd
    return fwd + [(ell, "bwd") for ell in range(n_edges - 1, 0, -1)]


def iterate(
    state: SpectralState,
    config: IterationConfig,
    factors: KernelFactors,
    f_N: LaurentPF,
) -> SpectralState:
    """One full sweep in the configured strategy; returns the new state.

    Edges are visited 1..M (forward_forward) or 1..M, M-1..1
    (forward_backward), solving the start/end scalar pair at each and
    storing the result immediately.  The max spectral difference of the
    assembled transform against the incoming state is appended to the
    history.
    """
    layout = state.layout
    u_plus = list(state.u_plus)
    u_minus = list(state.u_minus)
    c2 = dict(state.c2)
    c1 = dict(state.c1)
    cur = state
    for ell, direction in _sweep_order(layout.n_edges, config.strategy):
        F = assemble_Ftilde(ell, cur, layout, factors.k_full, f_N, direction)
        if layout.edge_is_start(ell):
            up, um = solve_odd(F, factors)
            c1[ell] = complex(um.eval(0.0)) / factors.c3
        else:
            up, um, c = solve_even(F, factors)
            c2[ell] = c
        u_plus[ell - 1] = up
        u_minus[ell - 1] = um
        cur = replace(cur, u_plus=tuple(u_plus), u_minus=tuple(u_minus))
    diff = spectral_diff(cur, state, config.contour, n_samples=config.n_samples)
    return replace(
        cur,
        c2=c2,
        c1=c1,
        iteration=state.iteration + 1,
        history=state.history + (diff,),
    )


def iterate_until(
    state: SpectralState,
    config: IterationConfig,
    factors: KernelFactors,
    f_N: LaurentPF,
) -> SpectralState:
    """Sweep until spectral_diff < spectral_tol or max_iter is reached."""
    while state.iteration < config.max_iter:
        state = iterate(state, config, factors, f_N)
        if state.history[-1] < config.spectral_tol:
            break
    return state


def assemble_U(state: SpectralState, layout: CrackLayout) -> LaurentPF:
    """Full boundary-row transform U(z) = U_-^(1) + sum_p z^{-m_p} U_+^(p)."""
    U = state.u_minus[0]
    for m_p, piece in zip(layout.edges, state.u_plus):
        if piece.is_zero:
            continue
        U = add(U, mul_monomial(piece, -m_p))
    return U


def spectral_diff(
    a: SpectralState,
    b: SpectralState,
    contour: Contour,
    *,
    n_samples: int = 1024,
) -> float:
    """Max |U_a - U_b| over contour samples of the assembled transforms."""
    D = add(assemble_U(a, a.layout), scale(assemble_U(b, b.layout), -1.0))
    if D.is_zero:
        return 0.0
    z, _ = contour.quad_nodes(n_samples)
    return float(np.max(np.abs(D.eval(z))))


def scalar_residual(
    ell: int,
    state: SpectralState,
    factors: KernelFactors,
    f_N: LaurentPF,
    contour: Contour,
    n_samples: int = 50,
) -> float:
    """Relative residual of the scalar equation at edge ``ell``.

    Returns max |A U_- + B U_+ - F| / max(1, max |F|) over contour
    samples; a solved pair should sit at the rational-arithmetic floor.
    """
    layout = state.layout
    F = assemble_Ftilde(ell, state, layout, factors.k_full, f_N)
    up = state.u_plus[ell - 1]
    um = state.u_minus[ell - 1]
    through_k = up if layout.edge_is_start(ell) else um
    direct = um if layout.edge_is_start(ell) else up
    lhs = add(mul_zpk(through_k, factors.k_full), direct)
    D = add(lhs, scale(F, -1.0))
    z, _ = contour.quad_nodes(n_samples)
    fscale = 1.0 if F.is_zero else max(1.0, float(np.max(np.abs(F.eval(z)))))
    if D.is_zero:
        return 0.0
    return float(np.max(np.abs(D.eval(z)))) / fscale


def export_history_csv(path, state: SpectralState, config: IterationConfig) -> None:
    """Write the convergence history as CSV (iter, max_spectral_diff, strategy)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "max_spectral_diff", "strategy"])
        for i, d in enumerate(state.history, start=1):
            writer.writerow([i, repr(float(d)), config.strategy])
