"""Exception hierarchy shared across the package."""


class SecenumError(Exception):
    """Base class for all package-specific errors."""


# --- point configuration / input -----------------------------------------

class NotSpanning(SecenumError):
    """The points do not affinely span the ambient space."""


class DuplicatePoint(SecenumError):
    """Two rows of the configuration coincide."""


class UnknownFamily(SecenumError):
    """generate_family was asked for a name it does not know."""


class KernelNotOneDimensional(SecenumError):
    """An affine dependence was requested for a subset whose kernel is not a line."""


class NotAffine(SecenumError):
    """A candidate symmetry is not induced by any affine map."""


class NotUnimodular(SecenumError):
    """A candidate symmetry is affine but not volume-preserving."""


# --- triangulations -------------------------------------------------------

class InvalidTriangulation(SecenumError):
    """A simplex collection is not a triangulation of the configuration."""


class FlipNotApplicable(SecenumError):
    """apply_flip was handed a flip whose removed simplices are absent."""


# --- symmetry -------------------------------------------------------------

class NotAPermutation(SecenumError):
    """An image tuple is not a bijection on 0..n-1."""


class GroupTooLarge(SecenumError):
    """Group closure exceeded the hard element cap."""


# --- search ---------------------------------------------------------------

class SeedNotRegular(SecenumError):
    """No regular seed triangulation could be constructed for the mode."""


class InconsistentOracle(SecenumError):
    """Adjacency and predecessor oracles disagree about the search tree."""


# --- engine / checkpoints -------------------------------------------------

class DigestMismatch(SecenumError):
    """A checkpoint was written for a different input."""


class MalformedCheckpoint(SecenumError):
    """A checkpoint file does not follow the expected layout."""


# --- cli ------------------------------------------------------------------

class ParseError(SecenumError):
    """Input text could not be parsed; carries line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class BadPermutation(SecenumError):
    """A generator line is not a permutation of the point indices."""
