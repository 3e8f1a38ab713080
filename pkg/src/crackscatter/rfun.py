"""Laurent-plus-partial-fraction algebra on the complex z-plane.

The spectral unknowns of the crack problem are rational functions of z
whose off-origin poles are simple and stay off the unit circle. This
module represents such a function as

    f(z) = sum_k c_k z^k  +  sum_a r_a z^{s_a} / (z - p_a),

a Laurent polynomial (the only place higher-order poles occur, at z = 0)
plus simple poles p_a != 0, each carrying an optional monomial shift
z^{s_a}. A shifted term with |p| < 1, s >= 1 or with |p| > 1, s <= -1 is
flattened on construction using the long-division identities

    z^s / (z - p)    = sum_{i=0..s-1} p^{s-1-i} z^i  +  p^s / (z - p),
    z^{-t} / (z - p) = p^{-t} / (z - p) - sum_{i=1..t} p^{i-t-1} z^{-i},

because in those two cases every generated coefficient is bounded by
|r| (all powers of p point downhill). In the two remaining cases the
same identities would raise |p| to large positive powers; for crack
spans near 10^2 lattice cells that costs ~40 decimal digits and the
function would drown in roundoff. Those shifts are therefore kept
symbolic. They are exactly the terms the additive split can assign to
one side whole, since the pole at p and the pole at the origin then
lie on the same side of |z| = 1.

Values are immutable; every operation returns a new object. Residue
bookkeeping is vectorized per shift group so that repeated products
against fixed kernel factors cost O(n_poles * n_shifts) flops, not
Python-level work per coefficient.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np
from scipy.signal import lfilter

from ._config import POLE_MERGE_TOL, PRUNE_TOL, UNIT_CIRCLE_GUARD
from .errors import MultipleZPKPole, NearPole, PoleCollision, PoleOnCircle

__all__ = [
    "LaurentPF",
    "ZPK",
    "add",
    "scale",
    "mul_monomial",
    "zpk_to_lpf",
    "mul_zpk",
    "additive_split",
]

_EMPTY_C = np.zeros(0, dtype=np.complex128)
_EMPTY_I = np.zeros(0, dtype=np.int64)


def _lau_merge(k0a: int, a: np.ndarray, k0b: int, b: np.ndarray):
    """Add two dense Laurent coefficient blocks with offsets."""
    if a.size == 0:
        return k0b, b.astype(np.complex128, copy=True)
    if b.size == 0:
        return k0a, a.astype(np.complex128, copy=True)
    k0 = min(k0a, k0b)
    k1 = max(k0a + a.size, k0b + b.size)
    out = np.zeros(k1 - k0, dtype=np.complex128)
    out[k0a - k0 : k0a - k0 + a.size] += a
    out[k0b - k0 : k0b - k0 + b.size] += b
    return k0, out


def _geometric_tail(w: complex, r: np.ndarray) -> np.ndarray:
    """Backward recurrence y_i = w * (r_i + y_{i+1}) for i = T..1.

    r holds r_1..r_T in order; the result holds y_1..y_T. With |w| < 1
    every intermediate is bounded by |w| * sum |r|, so no overflow and
    the rounding error stays at the level of direct summation.
    """
    y = lfilter([w], [1.0, -w], r[::-1])
    return y[::-1]


def _flatten_family(pole: complex, shifts: np.ndarray, res: np.ndarray, lower: bool):
    """Flatten all shifted terms at one pole into Laurent + flat residue.

    lower=True handles |p| < 1 with s >= 1, lower=False handles |p| > 1
    with s <= -1 (worked in t = -s). Returns (k0, coeffs, flat_residue).
    """
    if lower:
        smax = int(shifts.max())
        dense = np.zeros(smax, dtype=np.complex128)
        np.add.at(dense, shifts - 1, res)  # dense[s-1] = sum of r_s
        # b_i = r_{i+1} + p b_{i+1}; Laurent gets b_0..b_{smax-1}
        rev = lfilter([1.0], [1.0, -pole], dense[::-1])
        b = rev[::-1]
        return 0, b, pole * b[0]
    t = -shifts
    tmax = int(t.max())
    dense = np.zeros(tmax, dtype=np.complex128)
    np.add.at(dense, t - 1, res)
    d = _geometric_tail(1.0 / pole, dense)  # d_i = sum_{t>=i} r_t p^{i-t-1}
    return -tmax, -d[::-1], d[0]


def _canonical(k0, lc, P, R, S, near_merge=False):
    """Normalize raw parts into (k0, coeffs, flat P/R/S sorted by shift).

    Folds origin poles into the Laurent block, flattens the two safe
    shifted families, merges bitwise-equal poles per shift group and
    prunes entries below PRUNE_TOL relative to the largest coefficient.
    """
    lc = np.asarray(lc, dtype=np.complex128)
    P = np.asarray(P, dtype=np.complex128).ravel()
    R = np.asarray(R, dtype=np.complex128).ravel()
    S = np.asarray(S, dtype=np.int64).ravel()

    if P.size:
        at0 = P == 0
        if at0.any():
            for r, s in zip(R[at0], S[at0]):
                k0, lc = _lau_merge(k0, lc, int(s) - 1, np.array([r]))
            keep = ~at0
            P, R, S = P[keep], R[keep], S[keep]

    for lower in (True, False):
        if not P.size:
            break
        absp = np.abs(P)
        if lower:
            mask = (absp < 1.0) & (S >= 1)
        else:
            mask = (absp > 1.0) & (S <= -1)
        if mask.any():
            sub_p, sub_r, sub_s = P[mask], R[mask], S[mask]
            flat_p, flat_r = [], []
            for p in np.unique(sub_p):
                sel = sub_p == p
                fk0, fc, fres = _flatten_family(p, sub_s[sel], sub_r[sel], lower)
                k0, lc = _lau_merge(k0, lc, fk0, fc)
                flat_p.append(p)
                flat_r.append(fres)
            keep = ~mask
            P = np.concatenate([P[keep], np.array(flat_p)])
            R = np.concatenate([R[keep], np.array(flat_r)])
            S = np.concatenate([S[keep], np.zeros(len(flat_p), dtype=np.int64)])

    if P.size:
        # one lexsort pass merges bitwise-equal (shift, pole) pairs; poles
        # within each shift end up sorted the same way np.unique would sort
        order = np.lexsort((P.imag, P.real, S))
        P, R, S = P[order], R[order], S[order]
        first = np.empty(P.size, dtype=bool)
        first[0] = True
        np.logical_or(S[1:] != S[:-1], P[1:] != P[:-1], out=first[1:])
        starts = np.flatnonzero(first)
        P, S, R = P[starts], S[starts], np.add.reduceat(R, starts)
        if near_merge and P.size > 1:
            same = S[1:] == S[:-1]
            while True:
                close = same & (np.abs(np.diff(P)) < POLE_MERGE_TOL)
                if not close.any():
                    break
                j = int(np.argmax(close))
                R[j] += R[j + 1]
                P = np.delete(P, j + 1)
                R = np.delete(R, j + 1)
                S = np.delete(S, j + 1)
                same = S[1:] == S[:-1]

    scale_terms = [np.max(np.abs(lc))] if lc.size else []
    if P.size:
        scale_terms.append(np.max(np.abs(R)))
    fscale = max(scale_terms) if scale_terms else 0.0
    thr = PRUNE_TOL * fscale

    if P.size:
        keep = np.abs(R) > thr
        P, R, S = P[keep], R[keep], S[keep]

    if lc.size:
        big = np.abs(lc) > thr
        if big.any():
            lo = int(np.argmax(big))
            hi = lc.size - int(np.argmax(big[::-1]))
            lc2 = lc[lo:hi].copy()
            lc2[np.abs(lc2) <= thr] = 0.0
            k0, lc = k0 + lo, lc2
        else:
            k0, lc = 0, _EMPTY_C
    else:
        k0, lc = 0, _EMPTY_C

    if not P.size:
        P = R = _EMPTY_C
        S = _EMPTY_I
    return k0, lc, P, R, S


class LaurentPF:
    """Rational function as Laurent polynomial plus simple shifted poles.

    Parameters
    ----------
    laurent : mapping int -> complex, optional
        Coefficients c_k of z^k; negative k puts a pole at the origin.
    poles : iterable of (p, r), optional
        Simple off-origin pole terms r / (z - p).
    atoms : iterable of (p, r, s), optional
        Shifted terms r z^s / (z - p); safe shifts flatten on entry.
    """

    __slots__ = ("_k0", "_lc", "_allp", "_allr", "_alls", "_groups_cache")

    def __init__(self, laurent=None, poles=None, atoms=None):
        raw = []
        if poles is not None:
            raw += [(complex(p), complex(r), 0) for p, r in poles]
        if atoms is not None:
            raw += [(complex(p), complex(r), int(s)) for p, r, s in atoms]
        if laurent:
            keys = sorted(int(k) for k in laurent)
            k0 = keys[0]
            lc = np.zeros(keys[-1] - k0 + 1, dtype=np.complex128)
            for k, c in laurent.items():
                lc[int(k) - k0] += complex(c)
        else:
            k0, lc = 0, _EMPTY_C
        P = np.array([a[0] for a in raw], dtype=np.complex128)
        R = np.array([a[1] for a in raw], dtype=np.complex128)
        S = np.array([a[2] for a in raw], dtype=np.int64)
        self._k0, self._lc, self._allp, self._allr, self._alls = _canonical(
            k0, lc, P, R, S
        )
        self._groups_cache = None

    @classmethod
    def _raw(cls, k0, lc, P, R, S, near_merge=False):
        obj = object.__new__(cls)
        obj._k0, obj._lc, obj._allp, obj._allr, obj._alls = _canonical(
            k0, lc, P, R, S, near_merge
        )
        obj._groups_cache = None
        return obj

    @property
    def _groups(self) -> dict[int, tuple[np.ndarray, np.ndarray]]:
        """Shift -> (poles, residues) view, built lazily off the hot path."""
        if self._groups_cache is None:
            g: dict[int, tuple[np.ndarray, np.ndarray]] = {}
            P, R, S = self._allp, self._allr, self._alls
            if P.size:
                sb = np.flatnonzero(np.r_[True, S[1:] != S[:-1]])
                bounds = np.append(sb, S.size)
                for i, a in enumerate(sb):
                    g[int(S[a])] = (P[a : bounds[i + 1]], R[a : bounds[i + 1]])
            self._groups_cache = g
        return self._groups_cache

    # -- views ----------------------------------------------------------

    @property
    def laurent(self) -> dict[int, complex]:
        return {
            self._k0 + j: complex(c)
            for j, c in enumerate(self._lc)
            if c != 0
        }

    @property
    def poles(self) -> list[tuple[complex, complex]]:
        """Off-origin poles with their true residues r * p^s."""
        acc: dict[complex, complex] = {}
        with np.errstate(over="ignore"):
            for s, (ps, rs) in sorted(self._groups.items()):
                for p, r in zip(ps, rs):
                    acc[complex(p)] = acc.get(complex(p), 0.0) + complex(r * p**s)
        return sorted(acc.items(), key=lambda t: (abs(t[0]), t[0].real, t[0].imag))

    @property
    def atoms(self) -> list[tuple[complex, complex, int]]:
        out = []
        for s, (ps, rs) in sorted(self._groups.items()):
            out += [(complex(p), complex(r), s) for p, r in zip(ps, rs)]
        return out

    @property
    def is_zero(self) -> bool:
        return self._lc.size == 0 and self._allp.size == 0

    def max_coeff(self) -> float:
        m = float(np.max(np.abs(self._lc))) if self._lc.size else 0.0
        if self._allr.size:
            m = max(m, float(np.max(np.abs(self._allr))))
        return m

    def __repr__(self):
        return (
            f"LaurentPF(k=[{self._k0},{self._k0 + self._lc.size - 1}], "
            f"atoms={self._allp.size})"
            if not self.is_zero
            else "LaurentPF(0)"
        )

    # -- evaluation ------------------------------------------------------

    def eval(self, z):
        """Evaluate at complex z (scalar or array).

        Raises NearPole if z comes within POLE_MERGE_TOL of any pole,
        including the origin when the function has one there.
        """
        z = np.asarray(z, dtype=np.complex128)
        shape = z.shape
        zf = z.ravel()
        out = np.zeros(zf.size, dtype=np.complex128)

        allp, allr, alls = self._allp, self._allr, self._alls
        origin_pole = self._k0 < 0 or (alls.size and alls[0] < 0)
        if origin_pole and zf.size and np.min(np.abs(zf)) < POLE_MERGE_TOL:
            raise NearPole("evaluation point within pole_merge_tol of z = 0")

        if self._lc.size:
            # rows of M are z^{k0}, z^{k0+1}, ... via one cumulative product
            M = np.broadcast_to(zf, (self._lc.size, zf.size)).copy()
            M[0] = zf**self._k0
            np.multiply.accumulate(M, axis=0, out=M)
            out += self._lc @ M

        if allp.size and zf.size:
            # one reciprocal-distance matrix over the distinct poles, then a
            # residue matrix with one column per shift group; the power
            # ladder reuses z^s between consecutive shifts
            upos, pidx = np.unique(allp, return_inverse=True)
            den = zf[:, None] - upos[None, :]
            if np.min(np.abs(den)) < POLE_MERGE_TOL:
                raise NearPole("evaluation point within pole_merge_tol of a pole")
            bnd = np.empty(alls.size, dtype=bool)
            bnd[0] = True
            np.not_equal(alls[1:], alls[:-1], out=bnd[1:])
            starts = np.flatnonzero(bnd)
            shifts = alls[starts]
            rmat = np.zeros((upos.size, starts.size), dtype=np.complex128)
            rmat[pidx, np.cumsum(bnd) - 1] = allr
            terms = (1.0 / den) @ rmat
            if starts.size == 1 and shifts[0] == 0:
                out += terms[:, 0]
            else:
                # z^{s_j} columns by cumulative product over the (sorted)
                # shift gaps; gaps are 1 in the dense case left by products
                # against a contiguous Laurent block
                zpow = np.empty((zf.size, starts.size), dtype=np.complex128)
                zpow[:, 0] = zf ** int(shifts[0])
                gaps = np.diff(shifts)
                if np.all(gaps == 1):
                    zpow[:, 1:] = zf[:, None]
                else:
                    for j, d in enumerate(gaps, start=1):
                        zpow[:, j] = zf if d == 1 else zf ** int(d)
                np.multiply.accumulate(zpow, axis=1, out=zpow)
                out += np.einsum("ij,ij->i", zpow, terms)

        return out.reshape(shape) if shape else out[0]

    __call__ = eval

    # -- arithmetic sugar --------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, a):
        if isinstance(a, ZPK):
            return mul_zpk(self, a)
        return scale(self, a)

    __rmul__ = __mul__


class ZPK:
    """gain * prod(z - zeros) / prod(z - poles) with equal counts.

    The partial-fraction form (cover-up residues) is cached because the
    iteration multiplies by the same few kernel factors thousands of
    times; bitwise-identical pole values are what lets later products
    cancel zeros against poles exactly.
    """

    __slots__ = ("gain", "zeros", "poles", "_pf_cache")

    def __init__(self, zeros, poles, gain):
        self.zeros = np.asarray(zeros, dtype=np.complex128).ravel()
        self.poles = np.asarray(poles, dtype=np.complex128).ravel()
        self.gain = complex(gain)
        self._pf_cache = None
        if self.zeros.size != self.poles.size:
            raise ValueError("ZPK requires equal zero and pole counts")
        n = self.poles.size
        if n > 1:
            d = np.abs(self.poles[:, None] - self.poles[None, :])
            d[np.diag_indices(n)] = np.inf
            if d.min() < POLE_MERGE_TOL:
                raise MultipleZPKPole("repeated pole in ZPK")
        if n and self.zeros.size:
            d = np.abs(self.zeros[:, None] - self.poles[None, :])
            if d.min() < POLE_MERGE_TOL:
                raise MultipleZPKPole("zero coincides with pole in ZPK")

    def eval(self, z):
        z = np.asarray(z, dtype=np.complex128)
        shape = z.shape
        zf = z.ravel()
        out = np.full(zf.size, self.gain, dtype=np.complex128)
        # interleave zero and pole factors to keep intermediates tame
        for j in range(self.poles.size):
            out *= zf - self.zeros[j]
            out /= zf - self.poles[j]
        return out.reshape(shape) if shape else out[0]

    __call__ = eval

    def inverse(self) -> "ZPK":
        return ZPK(self.poles, self.zeros, 1.0 / self.gain)

    def _pf(self):
        """Cover-up residues: (poles, residues, gain at infinity)."""
        if self._pf_cache is None:
            q = self.poles
            if q.size and np.min(np.abs(q)) < POLE_MERGE_TOL:
                raise ValueError("partial fractions require no ZPK pole at 0")
            if q.size:
                num = q[:, None] - self.zeros[None, :]
                den = q[:, None] - q[None, :]
                den[np.diag_indices(q.size)] = 1.0
                res = self.gain * num.prod(axis=1) / den.prod(axis=1)
            else:
                res = _EMPTY_C
            self._pf_cache = (q, res, self.gain)
        return self._pf_cache

    def __repr__(self):
        return f"ZPK(n={self.poles.size}, gain={self.gain:.6g})"


# -- operations ------------------------------------------------------------


def add(f: LaurentPF, g: LaurentPF) -> LaurentPF:
    """f + g. Residues at poles closer than pole_merge_tol are merged."""
    k0, lc = _lau_merge(f._k0, f._lc, g._k0, g._lc)
    return LaurentPF._raw(
        k0,
        lc,
        np.concatenate([f._allp, g._allp]),
        np.concatenate([f._allr, g._allr]),
        np.concatenate([f._alls, g._alls]),
        near_merge=True,
    )


def scale(f: LaurentPF, a) -> LaurentPF:
    a = complex(a)
    if a == 0:
        return LaurentPF()
    # canonical structure is scale invariant (sorting, merging and the
    # relative prune threshold all commute with a nonzero scalar), so
    # skip the _canonical pass; stored arrays are never mutated, which
    # makes sharing _allp/_alls with the source safe
    obj = object.__new__(LaurentPF)
    obj._k0 = f._k0
    obj._lc = a * f._lc
    obj._allp = f._allp
    obj._allr = a * f._allr
    obj._alls = f._alls
    obj._groups_cache = None
    return obj


def mul_monomial(f: LaurentPF, s: int) -> LaurentPF:
    """z^s * f, re-expanded so the representation stays canonical."""
    s = int(s)
    if s == 0:
        return f
    return LaurentPF._raw(f._k0 + s, f._lc, f._allp, f._allr, f._alls + s)


def zpk_to_lpf(Z: ZPK) -> LaurentPF:
    """Expand a balanced ZPK into gain + sum res_l / (z - p_l)."""
    q, res, gain = Z._pf()
    return LaurentPF._raw(
        0,
        np.array([gain]),
        q,
        res,
        np.zeros(q.size, dtype=np.int64),
    )


def mul_zpk(f: LaurentPF, Z: ZPK) -> LaurentPF:
    """f * Z in canonical form.

    Exact pole bookkeeping: a pole p of f that is bitwise equal to a
    zero of Z is cancelled analytically (no residual atom), and a pole
    of f within pole_merge_tol of a pole of Z is a hard PoleCollision.
    Cross terms follow from

        r z^s/(z-p) * Z(z) = r Z(p) z^s/(z-p)
                             + sum_j [r res_j/(q_j-p)] z^s/(z-q_j),
        c z^k * Z(z)       = c g z^k + sum_j [c res_j] z^k/(z-q_j).
    """
    q, qres, gain = Z._pf()

    if f._allp.size and q.size:
        if np.min(np.abs(f._allp[:, None] - q[None, :])) < POLE_MERGE_TOL:
            raise PoleCollision("pole of f meets pole of Z")

    Pf, Rf, Sf = f._allp, f._allr, f._alls
    P, R, S = [], [], []

    # surviving source poles, scaled by Z there (exact kill on Z zeros)
    if Pf.size:
        keep = ~np.isin(Pf, Z.zeros) if Z.zeros.size else np.ones(Pf.size, bool)
        if keep.any():
            pk = Pf[keep]
            P.append(pk)
            R.append(Rf[keep] * Z.eval(pk))
            S.append(Sf[keep])

    k0_out, lc_out = f._k0, gain * f._lc

    # residues collected at each pole of Z, one family per Laurent power
    # and per shift group; _canonical merges coincident (shift, pole) pairs.
    # The negative-exponent block against outside poles is divided out
    # directly: h(z) rho/(z-q) = rho h(q)/(z-q) + rho (h(z)-h(q))/(z-q),
    # with the quotient from the ascending recurrence Q_j = (Q_{j-1} - g_j)/q
    # (decaying for |q| > 1, so no overflow; identical to flattening the
    # tiled atoms, minus the atom traffic, which scales with the block span)
    if q.size:
        nz = np.flatnonzero(f._lc) if f._lc.size else np.zeros(0, dtype=np.int64)
        if nz.size:
            n = f._lc.size
            k1 = f._k0 + n - 1
            outs = np.abs(q) > 1.0
            ins = np.abs(q) < 1.0
            qo, ro = q[outs], qres[outs]
            qi, ri = q[ins], qres[ins]
            ks = f._k0 + nz
            tiles = [(nz[ks == 0], q, qres)]

            nneg = min(-f._k0, n) if f._k0 < 0 else 0
            if nneg and qo.size:
                w = 1.0 / qo
                g = f._lc[:nneg]
                if k1 < -1:
                    # quotient still spans up to exponent -1
                    pad = np.zeros(-1 - k1, dtype=np.complex128)
                    g = np.concatenate([g, pad])
                W = np.broadcast_to(w, (g.size, w.size)).copy()
                np.multiply.accumulate(W, axis=0, out=W)  # row i holds w^(i+1)
                hvals = g[::-1] @ W  # h(q) = sum g_k q^k over k in [k0, -1]
                Qmat = np.empty((qo.size, g.size), dtype=np.complex128)
                for j in range(qo.size):
                    Qmat[j] = lfilter([-w[j]], [1.0, -w[j]], g)
                k0_out, lc_out = _lau_merge(k0_out, lc_out, f._k0, ro @ Qmat)
                P.append(qo)
                R.append(ro * hvals)
                S.append(np.zeros(qo.size, dtype=np.int64))
                tiles.append((nz[ks <= -1], q[~outs], qres[~outs]))
            else:
                tiles.append((nz[ks <= -1], q, qres))

            if k1 >= 1 and qi.size:
                # mirror of the block above: exponents >= 1 against inside
                # poles, with the descending recurrence Q_{j-1} = g_j + q Q_j
                # (decaying for |q| < 1)
                gpos = f._lc[max(1 - f._k0, 0) :]
                if f._k0 > 1:
                    pad = np.zeros(f._k0 - 1, dtype=np.complex128)
                    gpos = np.concatenate([pad, gpos])
                M = np.broadcast_to(qi, (k1, qi.size)).copy()
                np.multiply.accumulate(M, axis=0, out=M)  # row i holds q^(i+1)
                hvals = gpos @ M  # h(q) = sum g_k q^k over k in [1, k1]
                grev = gpos[::-1]
                Qmat = np.empty((qi.size, k1), dtype=np.complex128)
                for j in range(qi.size):
                    Qmat[j] = lfilter([1.0], [1.0, -qi[j]], grev)[::-1]
                k0_out, lc_out = _lau_merge(k0_out, lc_out, 0, ri @ Qmat)
                P.append(qi)
                R.append(ri * hvals)
                S.append(np.zeros(qi.size, dtype=np.int64))
                tiles.append((nz[ks >= 1], q[~ins], qres[~ins]))
            else:
                tiles.append((nz[ks >= 1], q, qres))

            for idx, qs, rs in tiles:
                if idx.size and qs.size:
                    P.append(np.tile(qs, idx.size))
                    R.append((f._lc[idx, None] * rs[None, :]).ravel())
                    S.append(np.repeat(f._k0 + idx, qs.size))
        if Pf.size:
            # shifts are sorted, so groups are contiguous runs of Sf
            bnd = np.empty(Sf.size, dtype=bool)
            bnd[0] = True
            np.not_equal(Sf[1:], Sf[:-1], out=bnd[1:])
            starts = np.flatnonzero(bnd)
            contrib = (1.0 / (q[:, None] - Pf[None, :])) * Rf[None, :]
            cross = qres[:, None] * np.add.reduceat(contrib, starts, axis=1)
            P.append(np.tile(q, starts.size))
            R.append(cross.T.ravel())
            S.append(np.repeat(Sf[starts], q.size))

    if P:
        P, R, S = np.concatenate(P), np.concatenate(R), np.concatenate(S)
    else:
        P = R = _EMPTY_C
        S = _EMPTY_I
    return LaurentPF._raw(k0_out, lc_out, P, R, S)


def additive_split(f: LaurentPF) -> tuple[LaurentPF, LaurentPF]:
    """Split f = f_minus + f_plus across the unit circle.

    f_minus keeps poles with |p| > 1 and Laurent exponents >= 0, so it
    is analytic inside the circle with a finite value at 0; f_plus
    keeps poles with |p| < 1 and negative exponents, so it vanishes as
    z -> infinity. Raises PoleOnCircle when a pole sits in the guard
    band ||p| - 1| <= unit_circle_guard and the side is not decidable.
    """
    if f._allp.size:
        if np.min(np.abs(np.abs(f._allp) - 1.0)) <= UNIT_CIRCLE_GUARD:
            raise PoleOnCircle("pole inside the unit-circle guard band")

    def build(keep_lau, want_outside):
        if f._lc.size:
            ks = f._k0 + np.arange(f._lc.size)
            mask = keep_lau(ks)
            lc = np.where(mask, f._lc, 0.0)
        else:
            lc = _EMPTY_C
        if f._allp.size:
            # deferred shifts are one-sided by construction
            outside = np.where(
                f._alls == 0, np.abs(f._allp) > 1.0, f._alls > 0
            )
            sel = outside == want_outside
            P, R, S = f._allp[sel], f._allr[sel], f._alls[sel]
        else:
            P = R = _EMPTY_C
            S = _EMPTY_I
        return LaurentPF._raw(f._k0, lc, P, R, S)

    f_minus = build(lambda k: k >= 0, want_outside=True)
    f_plus = build(lambda k: k < 0, want_outside=False)
    return f_minus, f_plus
