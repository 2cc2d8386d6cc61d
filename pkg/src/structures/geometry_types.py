from src.structures.common import ExtendedEnum


class CoordinateSystem(ExtendedEnum):

    TRILINEAR = "trilinear"
    BARYCENTRIC = "barycentric"
    CARTESIAN = "cartesian"


class ConjugationKind(ExtendedEnum):

    ISOGONAL = "isogonal"
    ISOTOMIC = "isotomic"


class ConicKind(ExtendedEnum):

    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    DEGENERATE = "degenerate"


class CenterId(ExtendedEnum):

    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X4 = "X4"
    X5 = "X5"
    X39 = "X39"
    X99 = "X99"
    X110 = "X110"
    X140 = "X140"
    X1385 = "X1385"
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"


class NamedConic(ExtendedEnum):

    CIRCUMCIRCLE = "circumcircle"
    STEINER_CIRCUMELLIPSE = "steiner_circumellipse"
    STEINER_INELLIPSE = "steiner_inellipse"
    MACBEATH_INELLIPSE = "macbeath_inellipse"
    BROCARD_INELLIPSE = "brocard_inellipse"
    KIEPERT_PARABOLA = "kiepert_parabola"


class PolarMode(ExtendedEnum):

    CIRCUM = "circum"
    IN = "in"


class InparabolaAnchor(ExtendedEnum):

    FOCUS = "focus"
    BRIANCHON = "brianchon"


class FamilyKind(ExtendedEnum):

    INELLIPSE = "Inellipse"
    BICENTRIC = "Bicentric"
    MACBEATH = "MacBeath"
    BROCARD = "Brocard"
    HOMOTHETIC = "Homothetic"
    GENERIC = "Generic"


class LocusModel(ExtendedEnum):

    POINT = "point"
    LINE = "line"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    NONE = "none"
