"""Brute-force (finite) and sampled (analytic) checks of the quantale laws,
of lax/strict monoidal maps and of adjunctions between quantale maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator

from ..errors import LawViolation, PreconditionError
from ..report import VerificationReport
from .base import LEFT, RIGHT, Elem, Quantale

EXHAUSTIVE = "exhaustive"
# above this carrier size distributivity is checked on binary and empty joins,
# which yields every finite join by induction
ALL_SUBSETS_MAX = 12


@dataclass(frozen=True)
class Sampled:
    seed: int = 0
    count: int = 1000


Mode = Any  # EXHAUSTIVE or Sampled


def _resolve(Q: Quantale, mode: Mode) -> Sampled | None:
    if mode == EXHAUSTIVE:
        if not Q.is_finite:
            raise PreconditionError(f"exhaustive mode needs a finite quantale, {Q.name} is not")
        return None
    if isinstance(mode, Sampled):
        return mode
    raise ValueError(f"unknown mode {mode!r}")


def tuples(Q: Quantale, mode: Mode, arity: int, rng: random.Random | None = None) -> Iterator[tuple]:
    """All ``arity``-tuples of elements (exhaustive) or landmark tuples followed by
    random ones up to ``mode.count`` (sampled)."""
    s = _resolve(Q, mode)
    if s is None:
        yield from itertools.product(Q.elements(), repeat=arity)
        return
    rng = rng or random.Random(s.seed)
    n = 0
    for t in itertools.product(Q.landmarks(), repeat=arity):
        if n >= s.count:
            return
        yield t
        n += 1
    while n < s.count:
        yield tuple(Q.sample(rng) for _ in range(arity))
        n += 1


def subsets(Q: Quantale, mode: Mode, rng: random.Random | None = None, max_size: int = 4) -> Iterator[tuple]:
    s = _resolve(Q, mode)
    if s is None:
        els = Q.elements()
        if len(els) <= ALL_SUBSETS_MAX:
            for r in range(len(els) + 1):
                yield from itertools.combinations(els, r)
        else:
            yield ()
            yield from itertools.combinations(els, 1)
            yield from itertools.combinations_with_replacement(els, 2)
        return
    rng = rng or random.Random(s.seed)
    yield ()
    for _ in range(s.count):
        yield tuple(Q.sample(rng) for _ in range(rng.randint(1, max_size)))


def first_failure(cases: Iterable, pred: Callable[..., bool]):
    """The first case falsifying ``pred`` (unpacked as arguments), or None."""
    for case in cases:
        if not pred(*case):
            return case
    return None


def _fmt(Q: Quantale, case) -> Any:
    if case is None:
        return None
    return [Q.format(x) if not isinstance(x, tuple) or Q.contains(x) else [Q.format(y) for y in x]
            for x in case]


def check_quantale_laws(Q: Quantale, mode: Mode = EXHAUSTIVE) -> VerificationReport:
    """Check the partial order, lattice, monoid, distributivity, bottom and
    residual laws; one report entry per law, with a witness on failure."""
    s = _resolve(Q, mode)
    rng = random.Random(s.seed if s else 0)
    rep = VerificationReport()
    le, ten = Q.leq, Q.tensor

    def law(id, anchor, arity, pred):
        case = first_failure(tuples(Q, mode, arity, rng), pred)
        rep.add(id, anchor, case is None, _fmt(Q, case))

    law("order.reflexive", "quantale.order", 1, lambda x: le(x, x))
    law("order.antisymmetric", "quantale.order", 2,
        lambda x, y: not (le(x, y) and le(y, x)) or x == y)
    law("order.transitive", "quantale.order", 3,
        lambda x, y, z: not (le(x, y) and le(y, z)) or le(x, z))

    def join_is_lub(x, y, z):
        j = Q.join2(x, y)
        return le(x, j) and le(y, j) and (not (le(x, z) and le(y, z)) or le(j, z))

    def meet_is_glb(x, y, z):
        m = Q.meet2(x, y)
        return le(m, x) and le(m, y) and (not (le(z, x) and le(z, y)) or le(z, m))

    law("lattice.join", "quantale.lattice", 3, join_is_lub)
    law("lattice.meet", "quantale.lattice", 3, meet_is_glb)
    law("lattice.bounds", "quantale.lattice", 1, lambda x: le(Q.bottom, x) and le(x, Q.top))
    rep.add("lattice.empty", "quantale.lattice",
            Q.join([]) == Q.bottom and Q.meet([]) == Q.top,
            [Q.format(Q.join([])), Q.format(Q.meet([]))])

    law("monoid.associative", "quantale.monoid", 3,
        lambda x, y, z: ten(ten(x, y), z) == ten(x, ten(y, z)))
    law("monoid.unit", "quantale.monoid", 1,
        lambda x: ten(Q.unit, x) == x and ten(x, Q.unit) == x)

    xs = [t[0] for t in tuples(Q, mode, 1, rng)]
    for side in (LEFT, RIGHT):
        def distributes(x, S, side=side):
            if side == LEFT:
                return Q.eq(ten(x, Q.join(S)), Q.join(ten(x, y) for y in S))
            return Q.eq(ten(Q.join(S), x), Q.join(ten(y, x) for y in S))

        if s is None:
            cases = ((x, S) for S in subsets(Q, mode, rng) for x in xs)
        else:
            cases = zip(itertools.cycle(xs), subsets(Q, mode, rng))
        witness = first_failure(cases, distributes)
        rep.add(f"distributive.{side}", "quantale.distributivity", witness is None,
                None if witness is None else {"x": Q.format(witness[0]),
                                              "S": [Q.format(y) for y in witness[1]]})

    law("bottom.annihilates", "quantale.bottom", 1,
        lambda x: ten(x, Q.bottom) == Q.bottom and ten(Q.bottom, x) == Q.bottom)

    def res_left(x, y, z):
        return le(ten(x, y), z) == le(y, Q.residual(x, z, LEFT))

    def res_right(x, y, z):
        return le(ten(x, y), z) == le(x, Q.residual(y, z, RIGHT))

    law("residual.left", "quantale.residual", 3, res_left)
    law("residual.right", "quantale.residual", 3, res_right)

    if Q.is_finite and s is None:
        els = Q.elements()
        total = all(le(x, y) or le(y, x) for x in els for y in els)
        comm = all(ten(x, y) == ten(y, x) for x in els for y in els)
        rep.add("flags", "quantale.flags",
                total == Q.is_linear and comm == Q.is_commutative
                and Q.is_affine == (Q.unit == Q.top) and Q.is_trivial == (Q.bottom == Q.unit),
                {"linear": Q.is_linear, "total": total, "commutative": Q.is_commutative, "computed": comm})
    else:
        if Q.is_linear:
            law("flags.linear", "quantale.flags", 2, lambda x, y: le(x, y) or le(y, x))
        if Q.is_commutative:
            law("flags.commutative", "quantale.flags", 2, lambda x, y: ten(x, y) == ten(y, x))
    return rep


def require_quantale(Q: Quantale) -> Quantale:
    """Raise :class:`LawViolation` on the first failing law of a finite quantale."""
    rep = check_quantale_laws(Q, EXHAUSTIVE)
    for e in rep.failures:
        raise LawViolation(e.id, e.witness)
    return Q


# -- monoidal maps ------------------------------------------------------------

LAX = "lax"
STRICT = "strict"


@dataclass(frozen=True, eq=False)
class MonoidalMap:
    """A monotone map between quantales with its claimed monoidal kind."""

    source: Quantale
    target: Quantale
    fn: Callable[[Elem], Elem]
    kind: str = LAX
    name: str = "h"

    def __call__(self, x: Elem) -> Elem:
        return self.fn(x)

    def __post_init__(self):
        if self.kind not in (LAX, STRICT):
            raise ValueError(f"kind must be 'lax' or 'strict', not {self.kind!r}")


def check_monoidal_map(h: MonoidalMap, mode: Mode = EXHAUSTIVE) -> VerificationReport:
    """Monotonicity and lax inequalities; strict equalities are pass/fail when
    claimed and otherwise recorded as an observation."""
    P, Q = h.source, h.target
    s = _resolve(P, mode)
    rng = random.Random(s.seed if s else 0)
    rep = VerificationReport()
    fmt = P.format

    pairs = list(tuples(P, mode, 2, rng))
    mono = first_failure(pairs, lambda x, y: not P.leq(x, y) or Q.leq(h(x), h(y)))
    if mono is None and s is not None:
        # random pairs are rarely comparable; also compare x with x (+) y and x (/\) y
        mono = first_failure(pairs, lambda x, y: Q.leq(h(P.meet2(x, y)), h(x)) and Q.leq(h(x), h(P.join2(x, y))))
    rep.add("monotone", "monoidal-map.lax", mono is None, mono and [fmt(x) for x in mono])
    rep.add("lax.unit", "monoidal-map.lax", Q.leq(Q.unit, h(P.unit)), Q.format(h(P.unit)))
    lax = first_failure(pairs, lambda x, y: Q.leq(Q.tensor(h(x), h(y)), h(P.tensor(x, y))))
    rep.add("lax.tensor", "monoidal-map.lax", lax is None, lax and [fmt(x) for x in lax])

    unit_eq = Q.eq(Q.unit, h(P.unit))
    strict = first_failure(pairs, lambda x, y: Q.eq(Q.tensor(h(x), h(y)), h(P.tensor(x, y))))
    strict_w = strict and [fmt(x) for x in strict]
    if h.kind == STRICT:
        rep.add("strict.unit", "monoidal-map.strict", unit_eq, Q.format(h(P.unit)))
        rep.add("strict.tensor", "monoidal-map.strict", strict is None, strict_w)
    else:
        rep.note("strict", "monoidal-map.strict",
                 {"strict": unit_eq and strict is None, "counterexample": strict_w})
    return rep


def _all_pointwise(pool, pred):
    for x in pool:
        if not pred(x):
            return x
    return None


def adjunction_status(f: MonoidalMap, g: MonoidalMap, mode: Mode = EXHAUSTIVE) -> dict:
    """Evaluate the four composite inequalities between ``f: P -> Q`` and ``g: Q -> P``."""
    P, Q = f.source, f.target
    if g.source != Q or g.target != P:
        raise PreconditionError("f and g must go between the same quantales in opposite directions")
    sp, sq = _resolve(P, mode), _resolve(Q, mode)
    rng = random.Random((sp or sq).seed if (sp or sq) else 0)
    pool_p = [t[0] for t in tuples(P, mode, 1, rng)]
    pool_q = [t[0] for t in tuples(Q, mode, 1, rng)]
    fails = {
        "fg<=id": _all_pointwise(pool_q, lambda y: Q.leq(f(g(y)), y)),
        "id<=gf": _all_pointwise(pool_p, lambda x: P.leq(x, g(f(x)))),
        "gf<=id": _all_pointwise(pool_p, lambda x: P.leq(g(f(x)), x)),
        "id<=fg": _all_pointwise(pool_q, lambda y: Q.leq(y, f(g(y)))),
    }
    holds = {k: v is None for k, v in fails.items()}
    f_left = holds["fg<=id"] and holds["id<=gf"]
    g_left = holds["gf<=id"] and holds["id<=fg"]
    return {
        f"{f.name}-|{g.name}": f_left,
        f"{g.name}-|{f.name}": g_left,
        "equivalence": f_left and g_left,
        "counterexamples": {k: (None if v is None else (P if k in ("id<=gf", "gf<=id") else Q).format(v))
                            for k, v in fails.items()},
    }


def check_adjoint_pair(f: MonoidalMap, g: MonoidalMap, mode: Mode = EXHAUSTIVE,
                       expect: str | None = None) -> VerificationReport:
    """Report which of ``f -| g``, ``g -| f`` and equivalence hold.

    ``expect`` may be ``"f-|g"``, ``"g-|f"``, ``"equivalence"`` or ``"neither"``
    to turn the observation into a pass/fail entry.
    """
    st = adjunction_status(f, g, mode)
    fg, gf = f"{f.name}-|{g.name}", f"{g.name}-|{f.name}"
    rep = VerificationReport()
    rep.note("orientation", "monoidal-map.adjunction",
             {"f-|g": st[fg], "g-|f": st[gf], "equivalence": st["equivalence"]})
    if expect is not None:
        actual = {"f-|g": st[fg], "g-|f": st[gf], "equivalence": st["equivalence"],
                  "neither": not (st[fg] or st[gf])}
        if expect not in actual:
            raise ValueError(f"unknown expectation {expect!r}")
        rep.add(f"expect.{expect}", "monoidal-map.adjunction", actual[expect], st["counterexamples"])
    return rep
