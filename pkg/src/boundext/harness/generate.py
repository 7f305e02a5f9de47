"""Certified input generation from a known test map.

Layout at resolution n (all of it shared with every finer resolution, so
resolution n+1 refines resolution n):
  * one origin disk of radius 1/2;
  * bands i = 1..n of Carleson pieces with radii
    (1 - 2**-i - 2**-(i+3), 1 - 2**-(i+1)) and 2**(i+3) angular cells
    centred on angle 0, neighbouring cells overlapping by 1/8 of a cell;
  * boundary rectangles from a fixed binary subdivision of the circle,
    stopped where the image diameter drops to 2**-n.
Value rectangles are rounded outward to rationals bounded by k0, the
search bound derived from the boundary cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..approximations import CompactApprox, FunctionApprox, ULACApprox
from ..errors import CertificateError
from ..exact import (
    TWO_PI_UPPER,
    CarlesonRect,
    RationalDisk,
    RationalInterval,
    RationalPoint,
    RationalRect,
    bounded_ceil,
    bounded_floor,
    ceil_dyadic,
    pow2,
    rect_diameter_sq,
)
from .maps import AnalyticTestMap, arc_box, eval_interval

__all__ = [
    "GroundTruth",
    "FULL_TURN",
    "DISK_RADIUS",
    "VALUE_PRECISION",
    "phi_pieces",
    "boundary_leaves",
    "generate_phi_approx",
    "generate_boundary_approx",
    "generate_ulac",
    "ulac_constant",
    "true_value",
    "search_bound",
    "snap_rect",
]

FULL_TURN = ceil_dyadic(TWO_PI_UPPER, 20)  # rational over-bound of 2 pi
DISK_RADIUS = Fraction(1, 2)
VALUE_PRECISION = 20
_BD_ROOTS = 8
_BD_BITS = 32


@dataclass(frozen=True)
class GroundTruth:
    map: AnalyticTestMap
    resolution: int

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be at least 1")


def snap_rect(r: RationalRect, m: int) -> RationalRect | None:
    """Smallest rectangle bounded by m containing r (None if r leaves
    [-m, m]**2)."""
    if max(-r.x_lo, r.x_hi, -r.y_lo, r.y_hi) > m:
        return None
    return RationalRect(
        bounded_floor(r.x_lo, m), bounded_ceil(r.x_hi, m),
        bounded_floor(r.y_lo, m), bounded_ceil(r.y_hi, m),
    )


def band_radii(i: int) -> tuple[Fraction, Fraction]:
    return 1 - pow2(-i) - pow2(-(i + 3)), 1 - pow2(-(i + 1))


def phi_pieces(resolution: int) -> list:
    pieces: list = [RationalDisk.origin(DISK_RADIUS)]
    for i in range(1, resolution + 1):
        r1, r2 = band_radii(i)
        n = 1 << (i + 3)
        w = FULL_TURN / n
        ow = w / 8
        for c in range(n):
            pieces.append(CarlesonRect(r1, r2, -w / 2 + c * w - ow, -w / 2 + (c + 1) * w + ow))
    return pieces


def _boundary_rect(m: AnalyticTestMap, thetas: RationalInterval) -> RationalRect:
    return m.eval_box(arc_box(thetas.lo, thetas.hi, _BD_BITS + 8)).to_open_rect(_BD_BITS)


@lru_cache(maxsize=32)
def boundary_leaves(m: AnalyticTestMap, resolution: int) -> tuple[tuple[RationalInterval, RationalRect], ...]:
    """(theta-interval, rectangle) leaves of the boundary subdivision, in
    increasing theta starting just below angle 0."""
    limit = pow2(-2 * resolution)
    w = FULL_TURN / _BD_ROOTS
    out = []

    def visit(thetas: RationalInterval, parent: RationalRect | None, depth: int):
        raw = _boundary_rect(m, thetas)
        if parent is not None:
            raw = raw.intersection(parent)
        snapped = snap_rect(raw, 1 << depth)
        if snapped is not None and parent is not None:
            snapped = snapped.intersection(parent)
        ok = snapped is not None and rect_diameter_sq(snapped) <= pow2(-2 * depth)
        rect = snapped if ok else raw
        if rect_diameter_sq(rect) <= limit:
            out.append((thetas, rect))
            return
        mid = thetas.mid
        visit(RationalInterval(thetas.lo, mid), rect, depth + 1)
        visit(RationalInterval(mid, thetas.hi), rect, depth + 1)

    for c in range(_BD_ROOTS):
        visit(RationalInterval(-w / 2 + c * w, -w / 2 + (c + 1) * w), None, 0)
    return tuple(out)


def generate_boundary_approx(gt: GroundTruth) -> CompactApprox:
    return CompactApprox(tuple(r for _, r in boundary_leaves(gt.map, gt.resolution)))


def search_bound(bd: CompactApprox, bits: int = 20) -> int:
    from ..algorithms import AlgorithmInputs, derive_constants

    k0, _, _ = derive_constants(AlgorithmInputs(FunctionApprox(()), bd, ULACApprox(())), bits)
    return k0


@lru_cache(maxsize=4096)
def _raw_value(m: AnalyticTestMap, piece) -> RationalRect:
    return eval_interval(m, piece, VALUE_PRECISION)


def generate_phi_approx(gt: GroundTruth, snap: bool = True) -> FunctionApprox:
    k0 = search_bound(generate_boundary_approx(gt)) if snap else None
    pairs = []
    for u in phi_pieces(gt.resolution):
        v = _raw_value(gt.map, u)
        snapped = snap_rect(v, k0) if snap else None
        pairs.append((u, snapped or v))
    return FunctionApprox(tuple(pairs))


def ulac_constant(m: AnalyticTestMap) -> int:
    """Smallest c >= 2 with 2**(c-2) >= U/L, (L, U) bounds of the difference
    quotient.  Boundary points at distance <= 2**-(k+c) have preimages at
    distance <= 2**-(k+c)/L; the minor arc between those has image
    diameter <= U/L * 2**-(k+c) < 2**-k."""
    lo, hi = m.quotient_bounds()
    if lo <= 0:
        raise CertificateError(f"{m.name or m}: derivative may vanish on the closed disk")
    c = 2
    while pow2(c - 2) * lo < hi:
        c += 1
    return c


def generate_ulac(gt: GroundTruth, length: int) -> ULACApprox:
    c = ulac_constant(gt.map)
    return ULACApprox(tuple(k + c for k in range(length)))


def true_value(m: AnalyticTestMap, p: RationalPoint, k: int) -> RationalRect:
    """Square of diameter below 2**-k centred on the exact value phi(p)."""
    if p.abs_sq() > 1:
        raise ValueError("point outside the closed unit disk")
    v = m.eval_point(p)
    h = pow2(-(k + 2))
    return RationalRect(v.x - h, v.x + h, v.y - h, v.y + h)
