"""Exception hierarchy shared by every module."""


class BiasRepError(Exception):
    pass


class InputError(BiasRepError, ValueError):
    """Malformed or inconsistent input (unknown ids, bad JSON, bad field)."""


class DomainError(BiasRepError, ValueError):
    """Input is well formed but outside an operation's domain."""


class CapExceeded(BiasRepError, RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeds cap of {cap}")
        self.what = what
        self.cap = cap


class LinearClassError(BiasRepError, ValueError):
    """A theta subgraph holds exactly two balanced circles."""

    def __init__(self, theta):
        self.theta = theta
        names = [",".join(c.edges) for c in theta]
        super().__init__("theta with exactly two balanced circles: " + " | ".join(names))
