"""JSON encoding of scalars: exact values as strings, doubles as [re, im] numbers."""
from __future__ import annotations

from .scalar import AlgebraError, format_exact, is_exact, parse_exact, parse_numeric


def encode_scalar(x):
    if is_exact(x):
        return format_exact(x)
    z = complex(x)
    return [z.real, z.imag]


def decode_scalar(v):
    """Inverse of ``encode_scalar``; also accepts "re,im" strings and bare numbers."""
    if isinstance(v, bool):
        raise AlgebraError(f"malformed scalar: {v!r}")
    if isinstance(v, (list, tuple)):
        if len(v) != 2 or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
            raise AlgebraError(f"malformed numeric scalar: {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, float):
        return complex(v, 0.0)
    if isinstance(v, int):
        return parse_exact(str(v))
    if isinstance(v, str):
        return parse_numeric(v) if "," in v else parse_exact(v)
    raise AlgebraError(f"malformed scalar: {v!r}")


def encode_point(P):
    return [encode_scalar(x) for x in P]
