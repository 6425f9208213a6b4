class AffineCheckException(Exception):
    pass


class MalformedInput(AffineCheckException):
    pass


class InvalidParameter(AffineCheckException):
    pass


class InvalidElement(AffineCheckException):
    pass


class IncompatibleStructures(AffineCheckException):
    pass


class PreconditionViolation(AffineCheckException):
    pass


class ResourceLimit(AffineCheckException):
    pass


class UnsupportedInstance(AffineCheckException):
    pass


class UnresolvedReference(AffineCheckException):

    def __init__(self, kind, name):
        super(UnresolvedReference, self).__init__(
            "Unable to find {0} '{1}'".format(kind, name))
        self.kind = kind
        self.name = name
