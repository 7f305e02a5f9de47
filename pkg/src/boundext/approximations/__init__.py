"""Approximation schemes: points, compact sets, functions on the disk and
ULAC initial segments."""

from .model import (
    CompactApprox,
    FunctionApprox,
    PointApprox,
    ULACApprox,
    compact_approx_no_worse,
    compact_diameter_bound,
    function_approx_no_worse,
    points_diameter_sq,
    ulac_approx_no_worse,
    ulac_lookup,
    union_diameter_sq,
)
from .pieces import (
    DomainPiece,
    angle_range_contains_zero,
    piece_bbox,
    piece_in_piece,
    piece_witness_points,
    point_in_piece,
    real_axis_span,
    rect_angle_bounds,
    rect_in_piece,
    rect_misses_piece,
    segment_covered,
    segment_meets_piece,
    validate_piece,
)
