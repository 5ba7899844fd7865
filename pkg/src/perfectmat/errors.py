"""Exception hierarchy.

``MatroidAxiomError`` covers every failure of the basis axioms so the CLI can
map it to a single exit code.
"""


class MatroidError(Exception):
    pass


class MatroidAxiomError(MatroidError):
    pass


class EmptyBases(MatroidAxiomError):
    pass


class UnequalCardinality(MatroidAxiomError):
    pass


class ExchangeAxiomViolated(MatroidAxiomError):
    def __init__(self, b1: int, b2: int, e: int):
        from .bitset import elements

        self.b1, self.b2, self.e = b1, b2, e
        super().__init__(
            f"no exchange for e={e} between {elements(b1)} and {elements(b2)}"
        )


class DuplicateBases(MatroidAxiomError):
    pass


class InvalidRank(MatroidError):
    pass


class ZeroMatrix(MatroidError):
    pass


class NotABasis(MatroidError):
    pass


class ElementInBasis(MatroidError):
    pass


class ElementNotInBasis(MatroidError):
    pass


class ElementInInitialBasis(MatroidError):
    pass


class DependentInput(MatroidError):
    pass


class NotABijection(MatroidError):
    pass


class NotANode(MatroidError):
    pass


class GradednessViolated(MatroidError):
    pass


class LatticeViolated(MatroidError):
    pass


class InvalidDiagonal(MatroidError):
    pass


class NotAnIdeal(MatroidError):
    pass


class PreconditionUnmet(MatroidError):
    pass


class BudgetExceeded(MatroidError):
    def __init__(self, tested: int):
        self.tested = tested
        super().__init__(f"ordering budget exhausted after {tested} orderings")
