"""Exception types shared across the package."""


class FermisepError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTupleError(FermisepError, ValueError):
    """Orbital tuple is malformed: not strictly increasing, out of range, or wrong length."""


class BoundsError(FermisepError, IndexError):
    """Linear index outside [0, C(D, N))."""


class DuplicateEntryError(FermisepError, ValueError):
    """The same orbital tuple appears twice in a coefficient listing."""


class ZeroStateError(FermisepError, ValueError):
    """All supplied amplitudes vanish; no state can be normalized from them."""


class DegenerateOrbitalsError(FermisepError, ValueError):
    """Supplied orbitals are linearly dependent."""


class DimensionError(FermisepError, ValueError):
    """Incompatible dimensions, for example N > D or a matrix of the wrong size."""


class NonUnitaryError(FermisepError, ValueError):
    """Matrix fails the unitarity check beyond tolerance."""


class NotADensityMatrixError(FermisepError, ValueError):
    """Eigenvalues are too negative for numerical noise; the input is not a density matrix."""


class InvalidDistributionError(FermisepError, ValueError):
    """Probability vector fails its normalization or positivity checks."""


class UnsupportedError(FermisepError, ValueError):
    """Operation is defined only for a particle number other than the one supplied."""


class ResourceLimitError(FermisepError, ValueError):
    """Requested instance exceeds the configured dense-verification cap."""


class StateFormatError(FermisepError, ValueError):
    """State file is syntactically or semantically malformed.

    ``line`` carries a 1-based line number into the offending file when one
    could be determined, else None.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
