"""Exception hierarchy.

Every failure raised by the library derives from :class:`ElliptopeError`, so
callers (the CLI in particular) can separate library errors from bugs.
"""


class ElliptopeError(Exception):
    pass


# graph construction
class IndexOutOfRange(ElliptopeError, IndexError):
    pass


class DuplicateEdge(ElliptopeError, ValueError):
    pass


class SelfLoop(ElliptopeError, ValueError):
    pass


class NotUnweighted(ElliptopeError, ValueError):
    pass


class SizeMismatch(ElliptopeError, ValueError):
    pass


class BadSize(ElliptopeError, ValueError):
    pass


class EmptyPartList(ElliptopeError, ValueError):
    pass


class NonpositiveMass(ElliptopeError, ValueError):
    pass


class ZeroMultiplicity(ElliptopeError, ValueError):
    pass


class ParseError(ElliptopeError, ValueError):
    pass


# linear algebra
class NotSymmetricBacking(ElliptopeError, TypeError):
    pass


class MixedBackings(ElliptopeError, TypeError):
    pass


class BadBlockSizes(ElliptopeError, ValueError):
    pass


class NotSymmetric(ElliptopeError, ValueError):
    pass


class NoConvergence(ElliptopeError, RuntimeError):
    pass


# oracle / numeric
class TooLarge(ElliptopeError, ValueError):
    pass


# certificates
class DimensionMismatch(ElliptopeError, ValueError):
    pass


class NotComplementary(ElliptopeError, ValueError):
    pass


class UnequalSizes(ElliptopeError, ValueError):
    pass


class SizesNotStrict(ElliptopeError, ValueError):
    pass


class DegreeBoundViolated(ElliptopeError, ValueError):
    def __init__(self, vertex: int, degree, bound):
        super().__init__(f"vertex {vertex} has induced degree {degree} > {bound}")
        self.vertex = vertex


class WitnessInvalid(ElliptopeError, ValueError):
    pass


class OddOrder(ElliptopeError, ValueError):
    pass


class Dominating(ElliptopeError, ValueError):
    def __init__(self, index: int):
        super().__init__(f"entry {index} dominates the remaining weights")
        self.index = index


class TooSmall(ElliptopeError, ValueError):
    pass


class SpecMismatch(ElliptopeError, ValueError):
    pass


class InfeasibleInput(ElliptopeError, ValueError):
    pass


class PairNotOptimal(ElliptopeError, ValueError):
    pass


class LiftInfeasible(ElliptopeError, ValueError):
    """The lifted dual of a lexicographic product failed its PSD check."""


class NotRankOne(ElliptopeError, ValueError):
    pass


# recognizer
class Unsorted(ElliptopeError, ValueError):
    pass


class DegenerateInstance(ElliptopeError, ValueError):
    pass
