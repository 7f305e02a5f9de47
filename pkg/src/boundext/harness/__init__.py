"""Test-map harness: certified input generation, chain construction and
candidate configurations for guided mode."""
from .chains import (
    boundary_arc_chain,
    boundary_rect_sequence,
    generate_arc_chain,
    group_into_links,
    polyline_cover_sequence,
    restricted_exponent,
)
from .configs import CandidateReport, build_candidate_configuration, build_guided_configuration, guided_candidates
from .generate import (
    DISK_RADIUS,
    FULL_TURN,
    VALUE_PRECISION,
    GroundTruth,
    boundary_leaves,
    generate_boundary_approx,
    generate_phi_approx,
    generate_ulac,
    phi_pieces,
    search_bound,
    snap_rect,
    true_value,
    ulac_constant,
)
from .maps import AnalyticTestMap, CBox, eval_interval, parse_map_name
