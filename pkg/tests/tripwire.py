"""Floating-point tripwire for exact rational code.

While installed, any Fraction operation that would go through a float
(conversion with float(), mixed arithmetic or comparison with a float,
construction from a float) raises FloatTripwire and is counted. The
library decides every predicate on Fractions and ints, so a single hit
inside the library is a bug.
"""

from __future__ import annotations

import contextlib
import traceback
from fractions import Fraction

__all__ = ["FloatTripwire", "install", "uninstall", "armed", "hits"]


class FloatTripwire(AssertionError):
    pass


_saved: dict[str, object] = {}
_hits: list[str] = []
_INHERITED = object()


def hits() -> list[str]:
    return list(_hits)


def _trip(what: str):
    where = "".join(traceback.format_stack(limit=6)[:-2])
    _hits.append(f"{what}\n{where}")
    raise FloatTripwire(what)


def _is_float(x) -> bool:
    return isinstance(x, (float, complex))


def install() -> None:
    if _saved:
        return
    for name in ("__float__", "__new__", "_richcmp", "__eq__", "from_float"):
        _saved[name] = Fraction.__dict__.get(name, _INHERITED)
    orig_new = Fraction.__new__
    orig_richcmp = Fraction._richcmp
    orig_eq = Fraction.__eq__

    def __float__(self):
        _trip(f"float({self!r})")

    def __new__(cls, numerator=0, denominator=None, *args, **kwargs):
        if _is_float(numerator) or _is_float(denominator):
            _trip(f"Fraction({numerator!r}, {denominator!r})")
        return orig_new(cls, numerator, denominator, *args, **kwargs)

    def _richcmp(self, other, op):
        if _is_float(other):
            _trip(f"comparison of {self!r} with float {other!r}")
        return orig_richcmp(self, other, op)

    def __eq__(a, b):
        if _is_float(b):
            _trip(f"equality of {a!r} with float {b!r}")
        return orig_eq(a, b)

    def from_float(cls, f):
        _trip(f"Fraction.from_float({f!r})")

    Fraction.__float__ = __float__
    Fraction.__new__ = staticmethod(__new__)
    Fraction._richcmp = _richcmp
    Fraction.__eq__ = __eq__
    Fraction.from_float = classmethod(from_float)


def uninstall() -> None:
    for name, value in _saved.items():
        if value is _INHERITED:
            delattr(Fraction, name)
        else:
            setattr(Fraction, name, value)
    _saved.clear()


@contextlib.contextmanager
def armed():
    """Install for the duration of the block, restoring the previous state."""
    was = bool(_saved)
    install()
    try:
        yield
    finally:
        if not was:
            uninstall()
