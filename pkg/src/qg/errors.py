"""Exception hierarchy shared by every module."""


class QGError(Exception):
    """Base class for all library errors."""


class ParseError(QGError):
    pass


class NotLatinSquare(QGError):
    pass


class NotALoop(QGError):
    pass


class NotGroupIsotope(QGError):
    pass


class OrderBoundExceeded(QGError):
    pass


class NotAnEndomorphism(QGError):
    pass


class NotInClass(QGError):
    pass


class InternalCheckFailed(QGError):
    """A theorem-guaranteed invariant failed at runtime."""


class NotSimple(QGError):
    pass


class NotCML(QGError):
    pass


class NotAbelian(QGError):
    pass


class NotAutomorphism(QGError):
    pass


class NotCommutingPair(QGError):
    pass


class NotAGroup(QGError):
    pass


class UnknownFixture(QGError):
    pass


class InconsistentConstraints(QGError):
    pass
