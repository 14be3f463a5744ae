"""Exception hierarchy shared by every module of the package."""


class EntpercError(Exception):
    """Base class for all package errors."""


class GraphError(EntpercError, ValueError):
    pass


class SelfLoopError(GraphError):
    def __init__(self, u):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class DuplicateEdgeError(GraphError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.u, self.v = u, v


class VertexOutOfRangeError(GraphError, IndexError):
    pass


class EmptyPoolError(EntpercError, ValueError):
    """Raised when excluding the giant component leaves no vertices."""


class DomainError(EntpercError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class NoConvergenceError(EntpercError, RuntimeError):
    pass


class NoTransitionError(EntpercError, RuntimeError):
    """The percolation predicate never fires on the searched interval."""


class GenerationFailedError(EntpercError, RuntimeError):
    pass


class ParseError(EntpercError, ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyGraphError(EntpercError, ValueError):
    pass


class BudgetExceededError(EntpercError, RuntimeError):
    pass


class ConfigError(EntpercError, ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
