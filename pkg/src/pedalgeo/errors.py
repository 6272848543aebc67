"""Exception hierarchy.

Every degenerate configuration surfaces as a subclass of :class:`GeometryError`
whose class name is the stable error name used by the CLI.
"""


class GeometryError(Exception):
    """Base class for all geometric failures."""

    @property
    def name(self) -> str:
        return type(self).__name__


class NonFinite(GeometryError):
    pass


class ZeroVector(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class CoincidentLines(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class PointAtInfinity(GeometryError):
    pass


class InfiniteLine(GeometryError):
    pass


# conics
class IllConditioned(GeometryError):
    pass


class DegenerateConic(GeometryError):
    pass


class CenterOfConic(GeometryError):
    pass


class InteriorPoint(GeometryError):
    pass


# circles
class CollinearPoints(GeometryError):
    pass


class ConcentricCircles(GeometryError):
    pass


# triangles
class DegenerateTriangle(GeometryError):
    pass


class DegeneratePedal(GeometryError):
    pass


class InvalidPedal(GeometryError):
    pass


class OnSideline(GeometryError):
    pass


class SampleDegenerate(GeometryError):
    pass


class DegenerateReflection(GeometryError):
    pass


class NotOnCircumcircle(GeometryError):
    pass


class NotOrthologic(GeometryError):
    pass


class DegenerateBisectorPedals(GeometryError):
    pass


class UnknownCheckId(KeyError):
    """Raised by the suite runner for an unregistered check identifier."""

    def __init__(self, check_id: str):
        super().__init__(check_id)
        self.check_id = check_id

    def __str__(self) -> str:
        return f"unknown check id: {self.check_id!r}"
