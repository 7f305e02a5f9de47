"""Structured-text (JSON) encodings of every input and output type.

Every number is a {"num": int, "den": int} record written in lowest terms;
decoding rejects anything else (floats, strings, zero denominators) with a
SchemaError, so files round-trip exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algorithms import Configuration
from .approximations import CompactApprox, FunctionApprox, PointApprox, ULACApprox
from .chains import ArcChain, ChainStructureError, WitnessingChain
from .errors import SchemaError
from .exact import CarlesonRect, RationalDisk, RationalRect

__all__ = [
    "encode_rational",
    "decode_rational",
    "encode_rect",
    "decode_rect",
    "encode_piece",
    "decode_piece",
    "encode",
    "decode",
    "dumps",
    "loads",
    "read_file",
    "write_file",
    "KINDS",
]

KINDS = ("phi.approx", "boundary.approx", "ulac.approx", "point.approx", "configuration")


def _expect(obj, typ, what: str):
    if not isinstance(obj, typ) or isinstance(obj, bool):
        raise SchemaError(f"{what}: expected {typ.__name__}, got {type(obj).__name__}")
    return obj


def _field(obj: dict, key: str, what: str):
    _expect(obj, dict, what)
    if key not in obj:
        raise SchemaError(f"{what}: missing field {key!r}")
    return obj[key]


def encode_rational(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def decode_rational(obj: Any, what: str = "rational") -> Fraction:
    num = _expect(_field(obj, "num", what), int, f"{what}.num")
    den = _expect(_field(obj, "den", what), int, f"{what}.den")
    if den == 0:
        raise SchemaError(f"{what}: zero denominator")
    return Fraction(num, den)


def encode_rect(r: RationalRect) -> dict:
    return {k: encode_rational(getattr(r, k)) for k in ("x_lo", "x_hi", "y_lo", "y_hi")}


def decode_rect(obj: Any, what: str = "rect") -> RationalRect:
    vals = [decode_rational(_field(obj, k, what), f"{what}.{k}") for k in ("x_lo", "x_hi", "y_lo", "y_hi")]
    try:
        return RationalRect(*vals)
    except ValueError as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def encode_piece(u) -> dict:
    if isinstance(u, RationalDisk):
        return {"kind": "disk", "radius": encode_rational(u.radius)}
    if isinstance(u, CarlesonRect):
        out = {"kind": "carleson"}
        out.update({k: encode_rational(getattr(u, k)) for k in ("r1", "r2", "theta1", "theta2")})
        return out
    raise TypeError(f"not a domain piece: {u!r}")


def decode_piece(obj: Any, what: str = "piece"):
    kind = _field(obj, "kind", what)
    try:
        if kind == "disk":
            return RationalDisk.origin(decode_rational(_field(obj, "radius", what), f"{what}.radius"))
        if kind == "carleson":
            vals = [decode_rational(_field(obj, k, what), f"{what}.{k}") for k in ("r1", "r2", "theta1", "theta2")]
            return CarlesonRect(*vals)
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{what}: {exc}") from exc
    raise SchemaError(f"{what}: unknown piece kind {kind!r}")


def _encode_wchain(w: WitnessingChain) -> dict:
    return {"m": w.m, "rects": [encode_rect(r) for r in w.rects]}


def _decode_wchain(obj, what: str) -> WitnessingChain:
    m = _expect(_field(obj, "m", what), int, f"{what}.m")
    rects = _expect(_field(obj, "rects", what), list, f"{what}.rects")
    try:
        return WitnessingChain(m, tuple(decode_rect(r, f"{what}.rects[{i}]") for i, r in enumerate(rects)))
    except ChainStructureError as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def _decode_arc(obj, what: str) -> ArcChain:
    items = _expect(obj, list, what)
    try:
        return ArcChain(tuple(_decode_wchain(w, f"{what}[{i}]") for i, w in enumerate(items)))
    except ChainStructureError as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def encode(x) -> dict:
    """Tagged record for any of the schema types."""
    if isinstance(x, FunctionApprox):
        return {
            "type": "phi.approx",
            "pairs": [{"piece": encode_piece(u), "value": encode_rect(v)} for u, v in x.pairs],
        }
    if isinstance(x, CompactApprox):
        return {"type": "boundary.approx", "rects": [encode_rect(r) for r in x.rects]}
    if isinstance(x, ULACApprox):
        return {"type": "ulac.approx", "values": list(x.values)}
    if isinstance(x, PointApprox):
        return {"type": "point.approx", "rect": encode_rect(x.rect)}
    if isinstance(x, Configuration):
        return {
            "type": "configuration",
            "k1": x.k1,
            "k2": x.k2,
            "t": x.t,
            "tau_k": x.tau_k,
            "c1": [_encode_wchain(w) for w in x.c1.chains],
            "c2": [_encode_wchain(w) for w in x.c2.chains],
            "sigma": [_encode_wchain(w) for w in x.sigma.chains],
            "tau": [_encode_wchain(w) for w in x.tau.chains],
            "u_cover": [encode_piece(u) for u in x.u_cover],
            "phi_1_minus_s0": encode_rect(x.phi_1_minus_s0),
            "phi_seg": [encode_rect(r) for r in x.phi_seg.rects],
            "phi_r0": encode_rect(x.phi_r0),
        }
    raise TypeError(f"no schema for {type(x).__name__}")


def decode(obj: Any, expect: str | None = None):
    kind = _field(obj, "type", "document")
    if kind not in KINDS:
        raise SchemaError(f"unknown document type {kind!r}")
    if expect is not None and kind != expect:
        raise SchemaError(f"expected a {expect} document, got {kind}")
    try:
        return _DECODERS[kind](obj)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{kind}: {exc}") from exc


def _dec_phi(obj) -> FunctionApprox:
    pairs = _expect(_field(obj, "pairs", "phi.approx"), list, "phi.approx.pairs")
    out = []
    for i, p in enumerate(pairs):
        what = f"pairs[{i}]"
        out.append((decode_piece(_field(p, "piece", what), f"{what}.piece"), decode_rect(_field(p, "value", what), f"{what}.value")))
    return FunctionApprox(tuple(out))


def _dec_boundary(obj) -> CompactApprox:
    rects = _expect(_field(obj, "rects", "boundary.approx"), list, "boundary.approx.rects")
    return CompactApprox(tuple(decode_rect(r, f"rects[{i}]") for i, r in enumerate(rects)))


def _dec_ulac(obj) -> ULACApprox:
    vals = _expect(_field(obj, "values", "ulac.approx"), list, "ulac.approx.values")
    return ULACApprox(tuple(_expect(v, int, f"values[{i}]") for i, v in enumerate(vals)))


def _dec_point(obj) -> PointApprox:
    return PointApprox(decode_rect(_field(obj, "rect", "point.approx"), "point.rect"))


def _dec_config(obj) -> Configuration:
    def nat(key):
        return _expect(_field(obj, key, "configuration"), int, key)

    tau_k = obj.get("tau_k")
    if tau_k is not None:
        _expect(tau_k, int, "tau_k")
    seg = _expect(_field(obj, "phi_seg", "configuration"), list, "phi_seg")
    return Configuration(
        k1=nat("k1"),
        k2=nat("k2"),
        c1=_decode_arc(_field(obj, "c1", "configuration"), "c1"),
        c2=_decode_arc(_field(obj, "c2", "configuration"), "c2"),
        sigma=_decode_arc(_field(obj, "sigma", "configuration"), "sigma"),
        tau=_decode_arc(_field(obj, "tau", "configuration"), "tau"),
        t=nat("t"),
        u_cover=tuple(decode_piece(u, f"u_cover[{i}]") for i, u in enumerate(_expect(_field(obj, "u_cover", "configuration"), list, "u_cover"))),
        phi_1_minus_s0=decode_rect(_field(obj, "phi_1_minus_s0", "configuration"), "phi_1_minus_s0"),
        phi_seg=CompactApprox(tuple(decode_rect(r, f"phi_seg[{i}]") for i, r in enumerate(seg))),
        phi_r0=decode_rect(_field(obj, "phi_r0", "configuration"), "phi_r0"),
        tau_k=tau_k,
    )


_DECODERS = {
    "phi.approx": _dec_phi,
    "boundary.approx": _dec_boundary,
    "ulac.approx": _dec_ulac,
    "point.approx": _dec_point,
    "configuration": _dec_config,
}


def dumps(x) -> str:
    return json.dumps(encode(x), separators=(",", ":"), sort_keys=True) + "\n"


def _no_floats(s: str):
    raise SchemaError(f"non-integer number {s!r}; rationals are {{num, den}} records")


def loads(text: str, expect: str | None = None):
    try:
        obj = json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return decode(obj, expect)


def write_file(path, x) -> Path:
    path = Path(path)
    path.write_text(dumps(x))
    return path


def read_file(path, expect: str | None = None):
    return loads(Path(path).read_text(), expect)
