"""Combinatorial encodings of arcs and Jordan curves by chains of
rectangles, and the substantiation predicates over them."""

from .arcs import arc_point_rect, arc_rect, cover_beta_range, lambda_beta_range, piece_meets_beta_range
from .polyline import Polyline, goes_straight_through, segment_rect_distance_sq
from .structures import (
    ArcChain,
    ChainStructureError,
    CircularChain,
    WitnessingChain,
    arc_chain_diameter_bound,
    is_chain,
    is_circular_chain,
    is_simple_chain,
    link_diameter_bound,
    link_intersects,
    point_in_link,
    rects_diameter_sq,
)
from .substantiation import (
    intersection_contains_cover_rect,
    segment_image_substantiated,
    substantiate_cut_arc,
    substantiate_point_value,
    substantiate_restricted_witnessing_chain,
    substantiate_segment_image,
    substantiate_sigma,
    substantiate_tau,
    tau_family,
)
