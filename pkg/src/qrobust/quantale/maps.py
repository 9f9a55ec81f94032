"""The standard maps between quantales: top/bang into and out of the trivial
quantale, Q/I inclusion and truncation, the Sigma maps, and the maps among
N+, R+ and R-meet."""

from __future__ import annotations

import math
from fractions import Fraction

from ..ext import INF
from .base import Quantale
from .instances import mod_unit, nplus, rmeet, rplus, sigma, trivial
from .laws import LAX, STRICT, MonoidalMap


def top_map(Q: Quantale) -> MonoidalMap:
    """1 -> Q picking the top element."""
    return MonoidalMap(trivial(), Q, lambda _: Q.top, LAX, "top")


def bang(Q: Quantale) -> MonoidalMap:
    """Q -> 1."""
    return MonoidalMap(Q, trivial(), lambda _: 0, STRICT, "bang")


def include_mod_unit(Q: Quantale) -> MonoidalMap:
    """f: Q/I -> Q, the inclusion."""
    return MonoidalMap(mod_unit(Q), Q, lambda x: x, STRICT, "f")


def meet_unit(Q: Quantale) -> MonoidalMap:
    """g: Q -> Q/I, x |-> x meet I."""
    return MonoidalMap(Q, mod_unit(Q), lambda x: Q.meet2(x, Q.unit), LAX, "g")


def sigma_to_mod_unit(Q: Quantale) -> MonoidalMap:
    """f': Sigma -> Q/I sending bottom to bottom and top to top (= I)."""
    QI = mod_unit(Q)
    return MonoidalMap(sigma(), QI, lambda x: QI.bottom if x is INF else QI.top, STRICT, "f'")


def mod_unit_to_sigma(Q: Quantale) -> MonoidalMap:
    """g': Q/I -> Sigma sending the top to 0 and everything strictly below to INF."""
    QI = mod_unit(Q)
    return MonoidalMap(QI, sigma(), lambda x: Fraction(0) if QI.eq(x, QI.top) else INF, STRICT, "g'")


def nat_inclusion() -> MonoidalMap:
    """i: N+ -> R+."""
    return MonoidalMap(nplus(), rplus(), lambda x: x, STRICT, "i")


def _ceil(x):
    return INF if x is INF else Fraction(math.ceil(x))


def ceiling() -> MonoidalMap:
    """c: R+ -> N+, integer round-up."""
    return MonoidalMap(rplus(), nplus(), _ceil, LAX, "c")


def rmeet_to_rplus() -> MonoidalMap:
    """The identity on carriers, from R-meet to R+."""
    return MonoidalMap(rmeet(), rplus(), lambda x: x, LAX, "id")


def identity(Q: Quantale) -> MonoidalMap:
    return MonoidalMap(Q, Q, lambda x: x, STRICT, "id")
