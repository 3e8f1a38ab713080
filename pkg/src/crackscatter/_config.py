"""Shared numerical tolerances and contour defaults.

Values are module constants rather than per-call arguments where a single
consistent choice matters across modules (e.g. the unit-circle guard must
match between the additive split and the factorization partition).
"""

# Root finding / branch selection.
ROOT_TOL = 1e-9            # |b^2 - 4| below this counts as a double root
TIE_TOL = 1e-12            # modulus tie width for limiting-absorption tie-break
DEGENERACY_TOL = 1e-3      # distance from Omega in {0, 2, 2 sqrt 2} that raises

# Rational-function algebra.
POLE_MERGE_TOL = 1e-8      # poles closer than this collide / merge
PRUNE_TOL = 1e-14          # drop atoms and Laurent coefficients below this
UNIT_CIRCLE_GUARD = 1e-6   # ||p| - 1| below this cannot be split by side

# Contour geometry.
INDENT_RADIUS = 0.05       # bump amplitude at the branch points e^{+-i theta*}
INDENT_KAPPA = 60.0        # von Mises bump concentration (analytic, fast tails)
N_VERTICES = 720           # polyline vertices exposed for geometry queries
POLE_CLEARANCE = INDENT_RADIUS / 2   # min distance of approximant poles to contour
ON_CIRCLE_TOL = 1e-12      # how exactly non-indented vertices sit on |z| = 1

# Kernel approximation.
AAA_MAX_TERMS = 120
AAA_RTOL_LADDER = (0.3, 0.1, 0.03)  # multiples of target tol tried in order
N_FIT_SAMPLES = 2000                # kernel samples handed to the fitter
DENSIFY_SPAN = 5 * INDENT_RADIUS    # angular window of 4x sampling near indents
N_CHECK_SAMPLES = 1000              # fresh points for the out-of-sample gate

# Quadrature.
QUAD_MIN_POINTS = 2048
SPECTRAL_TOL = 1e-10       # doubling-check agreement for contour integrals
QUAD_TOL = 1e-8            # node drift allowed when quad points double

# Green's function quadrature.
GREENS_EPSABS = 1e-12
GREENS_EPSREL = 1e-11

# Crack-face linear system.
COND_LIMIT = 1e12

# Semi-infinite forcing.
POLE_OFFSET_DEFAULT = 1e-4
