"""Exception types.  Every error the library raises derives from KernelError."""


class KernelError(Exception):
    pass


class DimensionMismatch(KernelError):
    pass


class ShapeMismatch(KernelError):
    pass


class NotAnUpset(KernelError):
    pass


class NotComparable(KernelError):
    pass


class TargetMismatch(KernelError):
    pass


class NonCommuting(KernelError):
    pass


class BoxNotDetermining(KernelError):
    pass


class IllegalNonzeroEntry(KernelError):
    pass


class InvalidFringe(KernelError):
    pass


class HullConstructionFailed(KernelError):
    pass


class NotAHomomorphism(KernelError):
    pass


class NotInGenSpace(KernelError):
    pass


class EmptyInterval(KernelError):
    pass


class NotIsomorphic(KernelError):
    pass
