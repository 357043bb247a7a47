"""Shared exception types.

The command-line front end maps these onto exit codes, so the split matters:
bad or mismatched input is not the same thing as an enumeration that would
blow a configured capacity, and neither is a search that ran out of nodes.
"""


class InputError(ValueError):
    """Malformed, mismatched, or degenerate input (wrong group, bad schema)."""


class CapacityError(RuntimeError):
    """A configured enumeration capacity would be exceeded.

    Deliberately distinct from a NO answer: NO means proven-no, capacity
    means this build refuses to decide the instance.
    """


class BudgetExceededError(RuntimeError):
    """A backtracking search hit its node budget; the attempt is inconclusive."""
