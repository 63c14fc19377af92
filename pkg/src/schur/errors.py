"""Shared exception types."""


class CapExceeded(Exception):
    """A size cap was exceeded (group order, enumeration order, ...)."""


class BudgetExceeded(Exception):
    """A node/time budget ran out before the computation finished."""


class GroupMismatch(ValueError):
    """Operands belong to different groups."""
