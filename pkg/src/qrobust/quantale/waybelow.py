"""Way-below: the directed-subset oracle, the basic property suite and the
two interpolation lemmas (with witnesses re-verified before they are returned)."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ..errors import GuardError, LawViolation, PreconditionError, UnsupportedOperation
from ..ext import INF
from ..report import VerificationReport
from .base import LEFT, RIGHT, Elem, Quantale
from .instances import MAX, ProductQuantale, ScalarQuantale
from .laws import EXHAUSTIVE, Mode, _resolve, first_failure, tuples

ORACLE_MAX = 6


def directed_subsets(Q: Quantale, max_size: int = ORACLE_MAX) -> list[tuple[tuple, Elem]]:
    """Every nonempty directed subset of a finite quantale, paired with its join."""
    els = Q.elements()
    if len(els) > max_size:
        raise GuardError(f"{Q.name} has {len(els)} elements; the directed-subset oracle allows {max_size}")
    out = []
    for r in range(1, len(els) + 1):
        for D in itertools.combinations(els, r):
            if all(any(Q.leq(a, c) and Q.leq(b, c) for c in D) for a in D for b in D):
                out.append((D, Q.join(D)))
    return out


def way_below_relation(Q: Quantale, max_size: int = ORACLE_MAX) -> set[tuple]:
    """Pairs (x, y) with x << y, read off the definition literally: every
    directed D with y below its join has a member above x."""
    ds = directed_subsets(Q, max_size)
    els = Q.elements()
    return {
        (x, y)
        for x in els
        for y in els
        if all(any(Q.leq(x, d) for d in D) for D, j in ds if Q.leq(y, j))
    }


def check_way_below(Q: Quantale, mode: Mode = EXHAUSTIVE, oracle_max: int = ORACLE_MAX) -> VerificationReport:
    """Way-below is contained in the order, absorbs the order on both sides,
    has bottom below everything, and ``{x : x << y}`` is closed under binary join."""
    s = _resolve(Q, mode)
    rng = random.Random(s.seed if s else 0)
    rep = VerificationReport()
    le, wb = Q.leq, Q.way_below

    case = first_failure(tuples(Q, mode, 2, rng), lambda x, y: not wb(x, y) or le(x, y))
    rep.add("way-below.below-order", "way-below.properties", case is None, case and [Q.format(c) for c in case])

    if s is None:
        quads = ((a, x, y, b) for x, y in tuples(Q, mode, 2) if wb(x, y)
                 for a in Q.elements() if le(a, x) for b in Q.elements() if le(y, b))
    else:
        quads = ((Q.meet2(x, a), x, y, Q.join2(y, b))
                 for x, y, a, b in tuples(Q, mode, 4, rng) if wb(x, y))
    case = first_failure(quads, lambda a, x, y, b: wb(a, b))
    rep.add("way-below.absorbs-order", "way-below.properties", case is None, case and [Q.format(c) for c in case])

    case = first_failure(tuples(Q, mode, 1, rng), lambda x: wb(Q.bottom, x))
    rep.add("way-below.bottom", "way-below.properties", case is None, case and [Q.format(c) for c in case])

    case = first_failure(tuples(Q, mode, 3, rng),
                         lambda a, b, y: not (wb(a, y) and wb(b, y)) or wb(Q.join2(a, b), y))
    rep.add("way-below.join-closed", "way-below.properties", case is None, case and [Q.format(c) for c in case])

    if Q.is_finite and len(Q.elements()) <= oracle_max:
        rel = way_below_relation(Q, oracle_max)
        bad = [(x, y) for x in Q.elements() for y in Q.elements() if wb(x, y) != ((x, y) in rel)]
        rep.add("way-below.oracle", "way-below.directed-oracle", not bad,
                bad and {"pair": [Q.format(c) for c in bad[0]], "rule": wb(*bad[0])})
        if isinstance(Q, ProductQuantale):
            comp = all(wb(x, y) == all(f.way_below(a, b) for f, a, b in zip(Q.factors, x, y))
                       for x in Q.elements() for y in Q.elements())
            rep.add("way-below.componentwise", "continuous.products", comp)
    return rep


# -- interpolation --------------------------------------------------------------

def _require_wb(Q: Quantale, q1: Elem, q2: Elem) -> None:
    if not Q.way_below(q1, q2):
        raise PreconditionError(f"{Q.format(q1)} is not way-below {Q.format(q2)} in {Q.name}")


def _interpolant(Q: Quantale, q1: Elem, q2: Elem) -> Elem:
    if isinstance(Q, ProductQuantale):
        return tuple(_interpolant(f, a, b) for f, a, b in zip(Q.factors, q1, q2))
    if isinstance(Q, ScalarQuantale) and Q.dense:
        if q2 is INF:
            return INF
        hi = q2 + 1 if q1 is INF else q1
        return (hi + q2) / 2
    if Q.way_below(q2, q2):
        return q2
    raise UnsupportedOperation(f"no interpolation rule for {Q.name}")


def interpolate(Q: Quantale, q1: Elem, q2: Elem) -> Elem:
    """Some q with q1 << q << q2, given q1 << q2."""
    _require_wb(Q, q1, q2)
    q = _interpolant(Q, q1, q2)
    if not (Q.way_below(q1, q) and Q.way_below(q, q2)):
        raise LawViolation("interpolation", [Q.format(q1), Q.format(q), Q.format(q2)])
    return q


def _tensor_ok(Q: Quantale, q1, q2, q, side) -> bool:
    t = Q.tensor(q2, q) if side == RIGHT else Q.tensor(q, q2)
    return Q.way_below(q, Q.unit) and Q.way_below(q1, t)


def _tensor_interpolant(Q: Quantale, q1, q2, side):
    if isinstance(Q, ProductQuantale):
        return tuple(_tensor_interpolant(f, a, b, side) for f, a, b in zip(Q.factors, q1, q2))
    if isinstance(Q, ScalarQuantale) and Q.dense:
        if q1 is INF:
            return Fraction(1)
        if Q.tensor_kind == MAX:
            return (q1 + q2) / 2
        return (q1 - q2) / 2
    if Q.is_finite:
        for q in (Q.unit,) + Q.elements():
            if _tensor_ok(Q, q1, q2, q, side):
                return q
        raise LawViolation("tensor-interpolation", [Q.format(q1), Q.format(q2), side],
                           f"no tensor interpolant for {Q.format(q1)} << {Q.format(q2)} in {Q.name}")
    if Q.way_below(Q.unit, Q.unit):
        return Q.unit
    raise UnsupportedOperation(f"no tensor interpolation rule for {Q.name}")


def tensor_interpolate(Q: Quantale, q1: Elem, q2: Elem, side: str = RIGHT) -> Elem:
    """Some q << I with q1 << q2 (x) q (``side="right"``) or q1 << q (x) q2 (``"left"``)."""
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    _require_wb(Q, q1, q2)
    q = _tensor_interpolant(Q, q1, q2, side)
    if not _tensor_ok(Q, q1, q2, q, side):
        raise LawViolation("tensor-interpolation", [Q.format(q1), Q.format(q2), Q.format(q), side])
    return q


def way_below_pairs(Q: Quantale, mode: Mode, count: int | None = None):
    """Way-below pairs: all of them (exhaustive) or ``count`` sampled ones."""
    s = _resolve(Q, mode)
    if s is None:
        return [(x, y) for x, y in tuples(Q, mode, 2) if Q.way_below(x, y)]
    rng = random.Random(s.seed)
    want = count if count is not None else s.count
    out = [(x, y) for x in Q.landmarks() for y in Q.landmarks() if Q.way_below(x, y)]
    while len(out) < want:
        x, y = Q.sample(rng), Q.sample(rng)
        if Q.way_below(x, y):
            out.append((x, y))
        elif Q.way_below(y, x):
            out.append((y, x))
    return out[:want]


def check_interpolation(Q: Quantale, mode: Mode = EXHAUSTIVE) -> VerificationReport:
    rep = VerificationReport()
    pairs = way_below_pairs(Q, mode)
    failures = {"lattice": None, RIGHT: None, LEFT: None}
    for q1, q2 in pairs:
        for kind, fn in (("lattice", lambda: interpolate(Q, q1, q2)),
                         (RIGHT, lambda: tensor_interpolate(Q, q1, q2, RIGHT)),
                         (LEFT, lambda: tensor_interpolate(Q, q1, q2, LEFT))):
            if failures[kind] is not None:
                continue
            try:
                fn()
            except (LawViolation, UnsupportedOperation) as exc:
                failures[kind] = {"pair": [Q.format(q1), Q.format(q2)], "error": str(exc)}
    rep.add("interpolation.lattice", "interpolation.lattice", failures["lattice"] is None, failures["lattice"])
    rep.add("interpolation.tensor-right", "interpolation.tensor", failures[RIGHT] is None, failures[RIGHT])
    rep.add("interpolation.tensor-left", "interpolation.tensor", failures[LEFT] is None, failures[LEFT])
    rep.note("interpolation.pairs", "interpolation.lattice", len(pairs))
    return rep
