"""Exception types raised by the kernels."""


class HankelError(Exception):
    """Base class for all errors raised by hankelmv."""


class InvalidDimensionError(HankelError, ValueError):
    """Sequence or vector lengths are inconsistent with the matrix order."""


class InvalidLengthError(HankelError, ValueError):
    """Transform length is not a power of two."""


class InvalidParameterError(HankelError, ValueError):
    """A numeric parameter (limb width, cutoff, ...) is out of range."""


class InvalidLimbError(HankelError, ValueError):
    """A limb digit does not fit in its base."""


class ScaleError(HankelError, ArithmeticError):
    """A scaled value leaves the exactly representable float64 range."""


class ConfigError(HankelError, ValueError):
    """An experiment configuration is inconsistent."""
