"""Exception hierarchy shared by all modules."""


class QHochschildError(ValueError):
    pass


# qcalc
class NotPrime(QHochschildError):
    pass


class H0Violated(QHochschildError):
    pass


class H1Required(QHochschildError):
    pass


class OutOfRange(QHochschildError):
    pass


# exactla
class ShapeMismatch(QHochschildError):
    pass


class ModulusMismatch(QHochschildError):
    pass


class NotContained(QHochschildError):
    pass


class NoSolution(QHochschildError):
    pass


# ncomplex
class NilpotencyFailure(QHochschildError):
    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


# containment failure im(d^{N-p}) not inside ker(d^p)
NotAComplex = NilpotencyFailure


class UnsafeDegree(QHochschildError):
    pass


class NotExact(QHochschildError):
    pass


class NoLift(QHochschildError):
    pass


class InvalidResolution(QHochschildError):
    pass


# simplicial / dqalg
class SimplicialIdentityError(QHochschildError):
    pass


class RelationFailure(QHochschildError):
    pass


class DivisionFailure(QHochschildError):
    pass


class ContextMismatch(QHochschildError):
    pass


# hochschild / derived
class InvalidAlgebra(QHochschildError):
    def __init__(self, msg, triple=None):
        super().__init__(msg)
        self.triple = triple


class InvalidModule(QHochschildError):
    pass


class ResourceBound(QHochschildError):
    pass
