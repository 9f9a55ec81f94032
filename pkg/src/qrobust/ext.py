"""Extended non-negative rationals: exact ``Fraction`` values plus ``INF``.

Literals follow the JSON convention used throughout the package:
``"3"``, ``"p/q"`` and ``"inf"``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = ["INF", "ExtRational", "is_inf", "ext", "parse_ext", "format_ext", "add", "sub"]


class _Infinity:
    """The single point at infinity; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __hash__(self) -> int:
        return hash("qrobust.INF")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __ne__(self, other: object) -> bool:
        return other is not self

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtRational = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def ext(x) -> ExtRational:
    """Coerce ``x`` (int, Fraction, literal string or INF) to an extended rational."""
    if x is INF:
        return INF
    if isinstance(x, str):
        return parse_ext(x)
    if isinstance(x, bool):
        raise TypeError(f"not a rational: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} rejected; use an exact literal")
    raise TypeError(f"not an extended rational: {x!r}")


def parse_ext(text: str) -> ExtRational:
    s = text.strip().lower()
    if s in ("inf", "infinity", "∞"):
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_ext(x: ExtRational) -> str:
    if x is INF:
        return "inf"
    return str(x)


def add(x: ExtRational, y: ExtRational) -> ExtRational:
    if x is INF or y is INF:
        return INF
    return x + y


def sub(z: ExtRational, x: ExtRational) -> ExtRational:
    """Truncated difference ``max(z - x, 0)`` with ``inf - inf = 0``."""
    if x is INF:
        return Fraction(0)
    if z is INF:
        return INF
    return z - x if x <= z else Fraction(0)
