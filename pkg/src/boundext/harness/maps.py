"""Analytic test maps: rational-coefficient polynomials univalent on the
unit disk, with exact point evaluation and interval enclosures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..approximations import DomainPiece
from ..exact import (
    RationalDisk,
    RationalInterval,
    RationalPoint,
    RationalRect,
    as_rational,
    ceil_dyadic,
    cos_enclosure,
    sin_enclosure,
    floor_dyadic,
    sqrt_lower,
    sqrt_upper,
)

__all__ = ["AnalyticTestMap", "CBox", "parse_map_name", "eval_interval"]


@dataclass(frozen=True)
class CBox:
    """Complex interval: a closed rectangle re x im."""

    re: RationalInterval
    im: RationalInterval

    @classmethod
    def of_rect(cls, r: RationalRect) -> "CBox":
        return cls(RationalInterval(r.x_lo, r.x_hi), RationalInterval(r.y_lo, r.y_hi))

    @classmethod
    def point(cls, x, y=0) -> "CBox":
        return cls(RationalInterval.point(x), RationalInterval.point(y))

    def __add__(self, o: "CBox") -> "CBox":
        return CBox(self.re + o.re, self.im + o.im)

    def __mul__(self, o: "CBox") -> "CBox":
        return CBox(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def hull(self, o: "CBox") -> "CBox":
        return CBox(self.re.hull(o.re), self.im.hull(o.im))

    def abs_sq_bounds(self) -> RationalInterval:
        return self.re.square() + self.im.square()

    def to_open_rect(self, k: int) -> RationalRect:
        """Open rectangle containing the box, padded by 2**-(k+2) and rounded
        outward to the grid 2**-(k+4)."""
        pad = Fraction(1, 1 << (k + 2))
        g = k + 4
        return RationalRect(
            floor_dyadic(self.re.lo - pad, g),
            ceil_dyadic(self.re.hi + pad, g),
            floor_dyadic(self.im.lo - pad, g),
            ceil_dyadic(self.im.hi + pad, g),
        )


@dataclass(frozen=True)
class AnalyticTestMap:
    """phi(z) = sum_k c_k z**k with c_k = (re, im) rational pairs, k >= 1."""

    coefficients: tuple[tuple[Fraction, Fraction], ...]
    univalence_certificate: str = "externally-asserted"
    name: str = ""

    def __post_init__(self):
        coeffs = tuple((as_rational(a), as_rational(b)) for a, b in self.coefficients)
        if not coeffs or coeffs[0] == (0, 0):
            raise ValueError("the linear coefficient must be non-zero")
        object.__setattr__(self, "coefficients", coeffs)
        if self.univalence_certificate == "bounded-second-coefficient":
            if len(coeffs) > 2:
                raise ValueError("bounded-second-coefficient maps are quadratics")
            if len(coeffs) == 2:
                (a, b), (c, d) = coeffs
                # |c2 / c1| <= 1/2  <=>  4 |c2|^2 <= |c1|^2
                if 4 * (c * c + d * d) > a * a + b * b:
                    raise ValueError("|c2/c1| > 1/2: univalence not certified")

    @classmethod
    def identity(cls) -> "AnalyticTestMap":
        return cls(((Fraction(1), Fraction(0)),), "identity", "identity")

    @classmethod
    def quadratic(cls, c2) -> "AnalyticTestMap":
        c2 = as_rational(c2)
        return cls(((Fraction(1), Fraction(0)), (c2, Fraction(0))), "bounded-second-coefficient", f"quad:{c2}")

    @property
    def is_identity(self) -> bool:
        return self.coefficients == ((1, 0),)

    def eval_point(self, p: RationalPoint) -> RationalPoint:
        """Exact value at a rational point."""
        zr, zi = p.x, p.y
        acc_r, acc_i = Fraction(0), Fraction(0)
        for a, b in reversed(self.coefficients):
            acc_r, acc_i = acc_r + a, acc_i + b
            acc_r, acc_i = acc_r * zr - acc_i * zi, acc_r * zi + acc_i * zr
        return RationalPoint(acc_r, acc_i)

    def eval_box(self, z: CBox) -> CBox:
        acc = CBox.point(0)
        for a, b in reversed(self.coefficients):
            acc = (acc + CBox.point(a, b)) * z
        return acc

    def derivative_coefficients(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple((k * a, k * b) for k, (a, b) in enumerate(self.coefficients, start=1))

    def quotient_bounds(self, bits: int = 32) -> tuple[Fraction, Fraction]:
        """Rational (L, U) with L <= |phi(z) - phi(w)| / |z - w| <= U for all
        distinct z, w in the closed disk.

        The quotient is sum_k c_k (z**(k-1) + ... + w**(k-1)), whose k-th term
        has modulus at most k |c_k|.  L may be <= 0, meaning no bound.
        """
        mods = [(sqrt_lower(a * a + b * b, bits), sqrt_upper(a * a + b * b, bits)) for a, b in self.coefficients]
        rest = sum(k * hi for k, (_, hi) in enumerate(mods[1:], start=2))
        return mods[0][0] - rest, mods[0][1] + rest


def parse_map_name(name: str) -> AnalyticTestMap:
    if name == "identity":
        return AnalyticTestMap.identity()
    if name.startswith("quad:"):
        try:
            c2 = Fraction(name[5:])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad quadratic coefficient in {name!r}") from exc
        return AnalyticTestMap.quadratic(c2)
    raise ValueError(f"unknown map {name!r} (expected 'identity' or 'quad:p/q')")


@lru_cache(maxsize=1 << 16)
def unit_point(theta: Fraction, bits: int = 40) -> CBox:
    """Enclosure of e^{i theta}."""
    return CBox(cos_enclosure(theta, bits), sin_enclosure(theta, bits))


def arc_box(t1: Fraction, t2: Fraction, bits: int = 40) -> CBox:
    """Box containing e^{i theta} for theta in [t1, t2], t2 - t1 <= pi.

    A minor arc stays within its sagitta 1 - cos(w/2) <= w**2/8 of the chord.
    """
    a, b = unit_point(t1, bits), unit_point(t2, bits)
    sag = (t2 - t1) * (t2 - t1) / 8
    grow = RationalInterval(-sag, sag)
    return CBox(a.re.hull(b.re) + grow, a.im.hull(b.im) + grow)


def _subpieces(piece: DomainPiece, depth: int):
    n = 1 << depth
    if isinstance(piece, RationalDisk):
        r = piece.radius
        step = 2 * r / n
        for i in range(n):
            for j in range(n):
                box = RationalRect(-r + i * step, -r + (i + 1) * step, -r + j * step, -r + (j + 1) * step)
                if box.min_abs_sq() <= r * r:
                    yield box
        return
    dr = (piece.r2 - piece.r1) / n
    dt = (piece.theta2 - piece.theta1) / n
    for i in range(n):
        for j in range(n):
            radii = RationalInterval(piece.r1 + i * dr, piece.r1 + (i + 1) * dr)
            arc = arc_box(piece.theta1 + j * dt, piece.theta1 + (j + 1) * dt)
            yield CBox(radii * arc.re, radii * arc.im)


def eval_interval(m: AnalyticTestMap, piece: DomainPiece, k: int, depth: int | None = None) -> RationalRect:
    """Open rectangle containing phi[closure(piece)]."""
    if depth is None:
        depth = 0 if m.is_identity else 2
    out = None
    for box in _subpieces(piece, depth):
        img = m.eval_box(box if isinstance(box, CBox) else CBox.of_rect(box))
        out = img if out is None else out.hull(img)
    return out.to_open_rect(k)
