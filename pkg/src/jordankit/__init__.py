"""jordankit: polygonal approximation of closed plane curves.

Sampling a 1-periodic injective curve gives a closed polygon on the curve;
loop cutting turns it into a simple polygon without growing the mesh; a band
radius derived from per-interval deviations encloses the whole curve; region
classification, an interior witness, a separating polygon, and interior path
construction build on top, each validated against independent brute-force
oracles.
"""

from .curves import (
    ClosedCurve,
    EllipseCurve,
    FourierCurve,
    ParamPolygon,
    PolylineCurve,
    auto_band_radius,
    band_radius,
    circle,
    evaluate,
    injectivity_gap,
    mesh,
    polygon_from_points,
    refine_until,
    require_resolution,
    sample,
)
from .connectivity import (
    PathPolyline,
    SeparatingPolygon,
    SideRectangle,
    SpecialPoint,
    SpecialPointOrigin,
    Subdivision,
    build_subdivision,
    connect,
    separating_polygon,
    side_rectangles,
    special_points,
)
from .errors import (
    ConstructionError,
    DegenerateCurveError,
    JordanKitError,
    NotSameFaceError,
    ResolutionError,
)
from .primitives import (
    Orientation,
    OverlapIntersection,
    NoIntersection,
    Point,
    PointIntersection,
    Segment,
    Tolerance,
    is_inner_point,
    orient,
    point_segment_distance,
    segment_intersection,
)
from .regions import RegionLabel, WitnessReport, check_separation, classify, classify_many, interior_witness
from .simplifier import (
    IllegalIntersection,
    IntersectionKind,
    SimplePolygon,
    Winding,
    certify_simple,
    cut_loop,
    find_illegal_intersection,
    fix_adjacent,
    signed_area,
    simplify,
    sweep_illegal_intersections,
)
from .topology import (
    ChainPair,
    PointLocation,
    contains,
    contains_many,
    diameter_pair,
    distance_to,
    distance_to_many,
    is_simple,
    split_chains,
)

__version__ = "0.1.0"
