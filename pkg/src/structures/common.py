from enum import Enum

# absolute tolerance on normalized representations (unit circumradius scale)
EPS = 1e-9

# |w| below this fraction of the coordinate norm marks a point at infinity
IDEAL_EPS = 1e-12


class ExtendedEnum(Enum):
    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))


class GeometryError(ValueError):
    pass


class DegenerateError(GeometryError):
    pass


class ConjugateUndefinedError(GeometryError):
    pass


class UndefinedCenterError(GeometryError):
    pass


class PonceletClosureError(GeometryError):
    pass


class NotPerspectiveError(GeometryError):
    pass


class FitError(GeometryError):
    pass
