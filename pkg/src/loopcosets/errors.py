"""Exception hierarchy.

Every domain error derives from :class:`LoopError`; the command line maps
these to exit status 1.
"""


class LoopError(Exception):
    pass


class ValidationError(LoopError, ValueError):
    pass


class LatinViolation(ValidationError):
    def __init__(self, where, index, symbol):
        self.where = where
        self.index = index
        self.symbol = symbol
        super().__init__(f"symbol {symbol} repeats in {where} {index}")


class IdentityViolation(ValidationError):
    def __init__(self, cell):
        self.cell = cell
        super().__init__(f"0 is not neutral: cell {cell} breaks the identity row/column")


class ParseError(LoopError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownName(LoopError, KeyError):
    def __str__(self):
        return f"unknown catalog name {self.args[0]!r}"


class NotASubloop(LoopError):
    pass


class NotPowerAssociative(LoopError):
    pass


class NotAAIP(LoopError):
    pass


class NotRightBol(LoopError):
    pass


class NotMoufang(LoopError):
    pass


class NotLeftAutomorphic(LoopError):
    pass


class NotLeftAutomorphicMoufang(LoopError):
    pass


class NotMeetDense(LoopError):
    pass


class SubloopIsWhole(LoopError):
    pass


class NonuniformBlocks(LoopError):
    pass


class HallViolation(LoopError):
    """No system of distinct representatives exists.

    ``deficient`` holds block indices whose union has fewer points than
    blocks.
    """

    def __init__(self, deficient, neighbourhood):
        self.deficient = tuple(deficient)
        self.neighbourhood = tuple(neighbourhood)
        super().__init__(
            f"blocks {list(self.deficient)} cover only "
            f"{len(self.neighbourhood)} points"
        )


class InfeasibleOrders(LoopError):
    pass


class NotSymmetric(LoopError):
    pass


class BlockSizeMismatch(LoopError):
    pass


class EmptyMeet(LoopError):
    pass


class RepresentativeNotInMeet(LoopError):
    pass


class SubloopAssertionFailed(LoopError, AssertionError):
    pass
