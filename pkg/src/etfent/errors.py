"""Exception hierarchy shared by all modules."""


class EtfError(Exception):
    """Base class for every error raised by :mod:`etfent`."""


class NumericalError(EtfError):
    """A numerical routine failed or an input violated a numerical contract."""


class NotHermitian(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class ShapeMismatch(EtfError, ValueError):
    pass


class DimensionMismatch(EtfError, ValueError):
    pass


class DomainError(EtfError, ValueError):
    """A state-family parameter lies outside its admissible range."""


class NotDensityMatrix(NumericalError):
    pass


class FrameError(NumericalError):
    """A vector set failed equiangular-tight-frame certification."""


class NotUnit(FrameError):
    def __init__(self, index, norm):
        super().__init__(f"vector {index} has norm {norm!r}, expected 1")
        self.index = index
        self.norm = norm


class NotTight(FrameError):
    def __init__(self, residual):
        super().__init__(f"frame operator deviates from bI by {residual:.3e} (Frobenius)")
        self.residual = residual


class NotEquiangular(FrameError):
    def __init__(self, i, j, measured, expected):
        super().__init__(
            f"|<phi_{i}|phi_{j}>|^2 = {measured!r}, expected {expected!r}"
        )
        self.i = i
        self.j = j
        self.measured = measured
        self.expected = expected


class TooManyVectors(FrameError):
    def __init__(self, n, d):
        super().__init__(f"an ETF in dimension {d} has at most {d * d} vectors, got {n}")
        self.n = n
        self.d = d
