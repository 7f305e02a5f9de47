"""Exact rational arithmetic and geometric predicates."""

from .interval import (
    TWO_PI_LOWER,
    TWO_PI_UPPER,
    Interval,
    RationalInterval,
    angle_enclosure,
    arcsin_enclosure,
    atan_enclosure,
    atan_interval,
    cos_enclosure,
    cos_interval,
    ln_enclosure,
    pi_enclosure,
    pi_interval,
    sin_enclosure,
    sin_interval,
)
from .rational import (
    Q,
    as_rational,
    bounded_ceil,
    bounded_floor,
    ceil_dyadic,
    floor_dyadic,
    is_bounded_by,
    pow2,
    rationals_bounded_by,
    sqrt_lower,
    sqrt_upper,
)
from .shapes import (
    CarlesonRect,
    RationalDisk,
    RationalPoint,
    RationalRect,
    neighborhood_distance_test,
    point_rect_distance_sq,
    rect_bounded_by,
    rect_diameter_sq,
    rect_distance_sq,
    rect_in_neighborhood,
    union_bbox,
)
