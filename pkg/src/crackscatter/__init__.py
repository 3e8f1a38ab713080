"""Plane-wave scattering by collinear cracks in a square lattice.

An iterative Wiener-Hopf solver: crack-face unknowns live as rational
functions of the spectral variable z, the kernel is factorized once per
frequency, and a Gauss-Seidel sweep over the crack edges converges to
the scattered field, which is then reconstructed by contour quadrature.
"""

from .errors import (
    ApproximationFailed,
    BranchAmbiguity,
    CircleStraddle,
    ConfigError,
    CrackScatterError,
    DegenerateFrequency,
    MultipleZPKPole,
    NearPole,
    OutOfGrid,
    PoleCollision,
    PoleHit,
    PoleOnCircle,
    PoleOnContour,
    QuadratureUnresolved,
    SemiInfiniteUnsupportedAngle,
    SingularSystem,
)
from .rfun import (
    LaurentPF,
    ZPK,
    add,
    additive_split,
    mul_monomial,
    mul_zpk,
    scale,
    zpk_to_lpf,
)
from .lattice import (
    FieldGrid,
    IncidentWave,
    LatticeParams,
    dispersion_omega,
    helmholtz_residual,
    incident_field,
    incident_v,
    incident_wave,
    kernel_K_of_z,
    lambda_of_z,
    unit_root_pair,
)
from .kernel import (
    Contour,
    KernelFactors,
    approximate_kernel,
    build_contour,
    build_factors,
    dump_debug_csv,
    factorize,
)
from .iteration import (
    CrackLayout,
    IterationConfig,
    SpectralState,
    assemble_Ftilde,
    assemble_U,
    export_history_csv,
    forcing_fN,
    initial_state,
    iterate,
    iterate_until,
    scalar_residual,
    solve_even,
    solve_odd,
    spectral_diff,
)
from .reconstruct import (
    ReconstructionPlan,
    make_plan,
    reconstruct,
    render_heatmaps,
    row_values,
    write_field_csv,
)
from .greens import (
    GreensTable,
    compare,
    exact_crack_field,
    exact_face_jumps,
    greens,
    greens_double,
    region_D,
)

__version__ = "0.1.0"
