# Semichu - Error hierarchy
#
# Every failure raised by the workbench derives from SemichuError so the
# CLI can map it onto an exit code.


class SemichuError(Exception):
    """Base class for workbench errors"""

    kind = 'error'


class SchemaError(SemichuError):
    """Malformed input: bad document, unknown id, cycle, missing meet, bad literal"""

    kind = 'schema'


class UnknownElementError(SchemaError):
    """An element id that is not in the carrier"""

    kind = 'unknown_element'


class PreconditionError(SemichuError):
    """An operation was called outside of its domain"""

    kind = 'precondition'


class CapExceededError(SemichuError):
    """An exhaustive search would exceed its configured cap"""

    kind = 'cap_exceeded'

    def __init__(self, cap_name: str, limit: int, actual: int):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"cap '{cap_name}' exceeded: {actual} > {limit}")


class InternalConsistencyError(SemichuError):
    """Two independent computations disagree"""

    kind = 'internal_consistency'
