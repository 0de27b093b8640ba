"""Exception hierarchy shared by every layer of the workbench."""


class DiffsysError(Exception):
    pass


class ContextError(DiffsysError):
    """Values from two different basis contexts were combined."""


class LatticeError(DiffsysError):
    """A shift or point is not a member of the lattice it must live in."""


class RepresentabilityError(DiffsysError):
    """The result would leave the exactly-representable function classes."""


class ResourceError(DiffsysError):
    """A configured size budget was exceeded."""


class ShapeError(DiffsysError):
    """A solver precondition on the shape of the system failed."""


class UndecidedError(DiffsysError):
    """An exact decision procedure does not cover this input."""
