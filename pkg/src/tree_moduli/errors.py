"""Exception types raised across the package."""


class TreeModuliError(Exception):
    """Base class for all package errors."""


class InvalidTree(TreeModuliError, ValueError):
    pass


class InvalidSize(TreeModuliError, ValueError):
    pass


class EdgeNotFound(TreeModuliError, KeyError):
    pass


class MaxMultiplicityExceeded(TreeModuliError, ValueError):
    """The tree has a component with four or more nodes."""


class ArityError(TreeModuliError, ValueError):
    """A point or polynomial has the wrong number of variables."""


class InternalInconsistency(TreeModuliError, RuntimeError):
    pass
