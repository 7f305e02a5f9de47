"""Witnessing chains, arc chains, circular chains and their link geometry."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..approximations import points_diameter_sq
from ..exact import (
    RationalPoint,
    RationalRect,
    neighborhood_distance_test,
    point_rect_distance_sq,
    pow2,
    sqrt_upper,
    union_bbox,
)

__all__ = [
    "WitnessingChain",
    "ArcChain",
    "CircularChain",
    "ChainStructureError",
    "link_intersects",
    "is_chain",
    "is_simple_chain",
    "is_circular_chain",
    "link_diameter_bound",
    "arc_chain_diameter_bound",
    "point_in_link",
    "rects_diameter_sq",
]


class ChainStructureError(ValueError):
    """A chain violates a structural requirement (emptiness, length)."""


@dataclass(frozen=True)
class WitnessingChain:
    """(m, R_1, ..., R_k); its link is the union of the open 2**-m
    neighbourhoods of the rectangles."""

    m: int
    rects: tuple[RationalRect, ...]

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))
        if not self.rects:
            raise ChainStructureError("a witnessing chain needs at least one rectangle")
        if self.m < 0:
            raise ChainStructureError("the neighbourhood exponent is a natural number")

    @property
    def radius(self) -> Fraction:
        return pow2(-self.m)

    @cached_property
    def bbox(self) -> RationalRect:
        return union_bbox(self.rects)

    def __len__(self) -> int:
        return len(self.rects)


@dataclass(frozen=True)
class ArcChain:
    """Sequence of witnessing chains whose links are meant to form a simple
    chain. Use `checked` to enforce that on construction."""

    chains: tuple[WitnessingChain, ...]

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        if not self.chains:
            raise ChainStructureError("an arc chain needs at least one witnessing chain")

    @classmethod
    def checked(cls, chains) -> "ArcChain":
        out = cls(tuple(chains))
        if not is_simple_chain(out.chains):
            raise ChainStructureError("links do not form a simple chain")
        return out

    @property
    def first(self) -> WitnessingChain:
        return self.chains[0]

    @property
    def last(self) -> WitnessingChain:
        return self.chains[-1]

    def all_rects(self) -> list[RationalRect]:
        return [r for w in self.chains for r in w.rects]

    def __len__(self) -> int:
        return len(self.chains)


@dataclass(frozen=True)
class CircularChain:
    chains: tuple[WitnessingChain, ...]

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        if len(self.chains) < 3:
            raise ChainStructureError("a circular chain needs at least three links")

    @classmethod
    def checked(cls, chains) -> "CircularChain":
        out = cls(tuple(chains))
        if not is_circular_chain(out.chains):
            raise ChainStructureError("links do not form a circular chain")
        return out


def link_intersects(a: WitnessingChain, b: WitnessingChain) -> bool:
    if not neighborhood_distance_test(a.bbox, a.m, b.bbox, b.m):
        return False
    return any(
        neighborhood_distance_test(ra, a.m, rb, b.m) for ra in a.rects for rb in b.rects
    )


def _meets_matrix(links) -> list[list[bool]]:
    n = len(links)
    meets = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            meets[i][j] = meets[j][i] = link_intersects(links[i], links[j])
    return meets


def is_chain(links) -> bool:
    links = list(links)
    if not links:
        raise ChainStructureError("empty chain")
    return all(link_intersects(a, b) for a, b in zip(links, links[1:]))


def is_simple_chain(links) -> bool:
    links = list(links)
    if not links:
        raise ChainStructureError("empty chain")
    n = len(links)
    for i in range(n):
        for j in range(i + 1, n):
            if link_intersects(links[i], links[j]) != (j - i == 1):
                return False
    return True


def is_circular_chain(links) -> bool:
    links = list(links)
    k = len(links)
    if k < 3:
        raise ChainStructureError("circular chains need at least three links")
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j - i) % k in (1, k - 1)
            if link_intersects(links[i], links[j]) != adjacent:
                return False
    return True


def rects_diameter_sq(rects) -> Fraction:
    return points_diameter_sq([(p.x, p.y) for r in rects for p in r.corners()])


def link_diameter_bound(w: WitnessingChain, bits: int = 20) -> Fraction:
    """diam(V) <= diam(union of rects) + 2 * 2**-m."""
    return sqrt_upper(rects_diameter_sq(w.rects), bits) + 2 * w.radius


def arc_chain_diameter_bound(p: ArcChain, bits: int = 20) -> Fraction:
    return max(link_diameter_bound(w, bits) for w in p.chains)


def point_in_link(p: RationalPoint, w: WitnessingChain) -> bool:
    r2 = w.radius * w.radius
    return any(point_rect_distance_sq(p, r) < r2 for r in w.rects)
