"""Exception hierarchy shared by every module of the package."""


class MaprError(Exception):
    """Base class for all errors raised by mapr."""


class SchemaError(MaprError, ValueError):
    """Data does not conform to the attribute schema (bad index, label, shape)."""


class EmptyInputError(MaprError, ValueError):
    pass


class DomainError(MaprError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(MaprError, ValueError):
    pass


class UnsupportedParameterError(ParameterError):
    pass


class PreconditionError(MaprError, ValueError):
    """A documented precondition of an operation does not hold."""


class SupplyError(PreconditionError):
    """The database lacks enough candidates of some value."""


class OverAllocationError(MaprError, ValueError):
    """A largest-remainder quota handed out more (or fewer) seats than exist."""


class ResourceError(MaprError, RuntimeError):
    """A search exceeded its configured node or enumeration budget."""
