"""Certified piecewise-constant approximation and persistent homology.

Outward-rounded interval arithmetic drives adaptive domain subdivision until
every cell's range enclosure is within eps of its midpoint value; the valued
rectangular complex then yields a lower-star filtration, Z2 persistence, and
diagram distances.
"""

__version__ = "0.1.0"

from rigorpersist.approximation import (
    CANNOT_DECIDE,
    COMPLETE,
    PCApprox,
    approximate,
    approximate_complex,
    box_eval,
    greedy,
)
from rigorpersist.cwcomplex import (
    RectComplex,
    Rectangle,
    from_box,
    subdivide_all,
    subdivide_one,
    top_cofaces,
)
from rigorpersist.errors import (
    CellAbsent,
    CutOutsideInterior,
    DegenerateAxis,
    DivisionByZeroInterval,
    DomainViolation,
    ExpressionSyntaxError,
    IncompleteApproximation,
    InvalidEpsilon,
    NonIntegerExponent,
    NonMonotoneFiltration,
    PointOutsideDomain,
    RigorPersistError,
    UnknownIdentifier,
)
from rigorpersist.expressions import VectorFunction, parse
from rigorpersist.intervals import Interval, IntervalBox, elem, midpt, rad
from rigorpersist.metrics import bottleneck, wasserstein
from rigorpersist.persistence import (
    Filtration,
    PersistenceDiagram,
    compute_persistence,
    export_multifiltration,
    filter_short,
    lower_star,
)

__all__ = [
    "__version__",
    "Interval",
    "IntervalBox",
    "elem",
    "midpt",
    "rad",
    "VectorFunction",
    "parse",
    "Rectangle",
    "RectComplex",
    "from_box",
    "subdivide_one",
    "subdivide_all",
    "top_cofaces",
    "PCApprox",
    "COMPLETE",
    "CANNOT_DECIDE",
    "approximate",
    "approximate_complex",
    "greedy",
    "box_eval",
    "Filtration",
    "PersistenceDiagram",
    "lower_star",
    "compute_persistence",
    "filter_short",
    "export_multifiltration",
    "bottleneck",
    "wasserstein",
    "RigorPersistError",
    "DivisionByZeroInterval",
    "DomainViolation",
    "InvalidEpsilon",
    "DegenerateAxis",
    "CutOutsideInterior",
    "CellAbsent",
    "PointOutsideDomain",
    "IncompleteApproximation",
    "NonMonotoneFiltration",
    "ExpressionSyntaxError",
    "UnknownIdentifier",
    "NonIntegerExponent",
]
