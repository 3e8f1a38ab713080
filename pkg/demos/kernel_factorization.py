"""Kernel approximation and Wiener-Hopf factorization at a glance.

Builds the indented contour for the canonical frequency, fits the
kernel at a few tolerances, and checks the two identities the rest of
the solver leans on: K = K+ * K- on the contour, and the reciprocal
symmetry K+(z) = K-(1/z).
"""

import numpy as np

from crackscatter import (
    build_contour,
    build_factors,
    dispersion_omega,
    kernel_K_of_z,
)


def main():
    params = dispersion_omega(0.5 * np.pi, np.pi / 4)
    contour = build_contour(params)
    print(f"omega = {params.omega.real:.6f}")

    rng = np.random.default_rng(0)
    z = contour.point(rng.uniform(-np.pi, np.pi, size=500))
    exact = kernel_K_of_z(z, params)

    print(f"{'tol':>8} {'terms':>6} {'fit error':>12} {'product':>12} {'symmetry':>12}")
    for tol in (1e-4, 1e-7, 1e-10):
        f = build_factors(params, contour, tol)
        fit = np.max(np.abs(f.k_full.eval(z) - exact))
        product = np.max(np.abs(f.k_plus.eval(z) * f.k_minus.eval(z) - exact))
        symmetry = np.max(np.abs(f.k_plus.eval(z) - f.k_minus.eval(1.0 / z)))
        print(f"{tol:8.0e} {f.k_full.poles.size:6d} {fit:12.3e} {product:12.3e} {symmetry:12.3e}")

    f = build_factors(params, contour, 1e-10)
    inside = np.max(np.abs(f.k_plus.poles)) if f.k_plus.poles.size else 0.0
    outside = np.min(np.abs(f.k_minus.poles)) if f.k_minus.poles.size else np.inf
    print(f"\nk_plus poles stay inside (max |p| = {inside:.4f}), "
          f"k_minus outside (min |p| = {outside:.4f})")


if __name__ == "__main__":
    main()
