"""Fast Hankel matrix-vector products over interchangeable coefficient rings.

Kernels: :func:`schoolbook_matvec` (exact oracle), :func:`fft_hankel_matvec`
(float64 FFT), :func:`decomp_matvec` (multiprecision via limb decomposition
and one float64 FFT) and :func:`karatsuba_matvec` (recursive three-product
splitting).
"""

from .decomp import (
    DecompAccuracyRecord,
    DecomposedSystem,
    build_decomposed_system,
    decomp_matvec,
    enlarged_complexity_estimate,
    reconstruct,
)
from .errors import (
    ConfigError,
    HankelError,
    InvalidDimensionError,
    InvalidLengthError,
    InvalidLimbError,
    InvalidParameterError,
    ScaleError,
)
from .fft import (
    circulant_matvec_fft,
    fft,
    fft_hankel_matvec,
    hankel_fft_operands,
    ifft,
    linear_convolution,
)
from .fixedpoint import (
    FixedPointNumber,
    LimbDecomposition,
    decompose_limbs,
    limb_as_float,
    recompose_limbs,
)
from .karatsuba import (
    KaratsubaConfig,
    SplitSystem,
    karatsuba_matvec,
    merge,
    op_count_bounds,
    parallel_karatsuba_matvec,
    split_system,
)
from .rings import (
    FLOAT64,
    INTEGERS,
    CountingRing,
    FixedPointRing,
    Float64Ring,
    IntegerRing,
    OpCountReport,
    Ring,
    counting_scope,
)
from .structured import (
    CirculantMatrix,
    HankelMatrix,
    ToeplitzMatrix,
    circulant_matvec_dense,
    element,
    exact_matvec,
    hankel_embed_circulant,
    hankel_from_sequence,
    schoolbook_matvec,
    toeplitz_matvec,
    toeplitz_to_hankel,
)

__version__ = "0.1.0"
