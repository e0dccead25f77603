"""
Exception hierarchy shared by the library and the CLI.

InfeasibleError subclasses map to exit status 2, every other GDPartError to 1.
"""

from typing import Optional, Any


class GDPartError(Exception):
    """Base class for all gdpart errors."""


# ==================== INPUT ERRORS ====================

class InputError(GDPartError):
    """Malformed or inconsistent input data."""


class GraphFormatError(InputError):
    """Edge-list line that cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None, source: Optional[str] = None):
        self.line_number = line_number
        self.source = source
        location = ''
        if source:
            location += f"{source}:"
        if line_number is not None:
            location += f"{line_number}: "
        elif location:
            location += ' '
        super().__init__(f"{location}{message}")


class WeightError(InputError):
    """Weight row that violates positivity or does not match the graph."""

    def __init__(self, message: str, vertex_id: Optional[int] = None,
                 row_number: Optional[int] = None, dimension: Optional[str] = None):
        self.vertex_id = vertex_id
        self.row_number = row_number
        self.dimension = dimension
        super().__init__(message)


class PartitionFormatError(InputError):
    """Partition file inconsistent with its graph or its part count."""

    def __init__(self, message: str, vertex_id: Optional[int] = None):
        self.vertex_id = vertex_id
        super().__init__(message)


# ==================== INFEASIBILITY ====================

class InfeasibleError(GDPartError):
    """The requested balance cannot be met."""


class InfeasibleProjectionError(InfeasibleError):
    """The feasible set of a projection is empty (or numerically empty)."""


class InfeasibleFixingError(InfeasibleError):
    """Fixed vertices carry more weight than the free vertices can compensate."""

    def __init__(self, message: str, dimension: Optional[int] = None):
        self.dimension = dimension
        super().__init__(message)


class InfeasiblePartitionError(InfeasibleError):
    """No epsilon-balanced partition exists, or a recursion node failed."""

    def __init__(self, message: str, path: str = 'root', report: Any = None):
        self.path = path
        self.report = report
        super().__init__(f"[{path}] {message}")


# ==================== CONVERGENCE ====================

class ConvergenceError(GDPartError):
    """Iterative projection hit its round cap; carries the last iterate."""

    def __init__(self, message: str, result: Any = None):
        self.result = result
        super().__init__(message)
