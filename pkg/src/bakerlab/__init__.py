"""bakerlab: spectra of quantized open 3-baker maps.

Classical open dynamics with the middle Markov hole, torus quantizations
(plain and parity-covariant), dense resonance spectra, fractal Weyl counting
fits, and the exactly solvable Walsh toy model.
"""

from .classical import (
    CANTOR_DIMENSION,
    DimensionEstimate,
    EscapeResult,
    IntervalCover,
    SymbolWord,
    TorusPoint,
    box_dimension,
    closed_step,
    decode,
    encode,
    escape_time,
    inverse_open_step,
    open_step,
    shift_consistency,
    trapped_cover,
)
from .quantum import (
    PlanckIndex,
    Scheme,
    apply_open_baker,
    closed_baker_matrix,
    dft_matrix,
    open_baker_matrix,
    parity_blocks,
    parity_operator,
)
from .spectra import (
    CountingCurve,
    InsufficientDataError,
    NonConvergenceError,
    SpectrumRecord,
    WeylFit,
    counting_function,
    full_spectrum,
    kernel_dimension,
    shape_function,
    weyl_fit,
)
from .walsh import (
    AnalyticWalshSpectrum,
    WalshSpectrumMismatchError,
    analytic_spectrum,
    core_eigenvalues,
    core_matrix,
    power_k_factorization_check,
    radial_distribution,
    toy_apply,
    toy_matrix,
    walsh_matrix,
)

__version__ = "0.1.0"
