"""Ball topologies, closure and continuity, the robustness operators B_R and
delta-flattening, and the robust topology on P(X), over continuous quantales.

Every quantifier over radii ``delta << I`` has two evaluations:

* ``LITERAL``: runs over :func:`radii`, which is every radius for a finite
  quantale and a finite set of probes realising every behaviour otherwise;
* ``REDUCED``: the limit-radius form valid on finite carriers, where the
  existential becomes a test against ``I`` itself (``{y : I <= d(x, y)}``).

The two are compared by :func:`check_reductions`.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import GuardError, PreconditionError
from .qmetric import QMetricSpace, SpaceMap, d_preorder_leq
from .report import VerificationReport, Verdict, YES, jsonable

LITERAL = "literal"
REDUCED = "reduced"

BALL, DUAL, ROBUST, STAR_ROBUST = "ball", "dual", "robust", "star_robust"
FAMILY_MAX = 4


def _dist(X: QMetricSpace, dual: bool) -> Callable:
    return (lambda x, y: X.dist(y, x)) if dual else X.dist


def radii(X: QMetricSpace, extra: Iterable = ()) -> list:
    """Radii ``delta << I`` sufficient for every quantifier over the finite carrier ``X``
    (and for comparisons against the ``extra`` values)."""
    Q = X.quantale
    vals = X.values() | set(extra)
    if Q.is_finite:
        return [q for q in Q.elements() if Q.way_below(q, Q.unit)]
    return [q for q in Q.probe_radii(vals) if Q.way_below(q, Q.unit)]


def _require_radius(X: QMetricSpace, delta) -> None:
    Q = X.quantale
    if not Q.contains(delta) or not Q.way_below(delta, Q.unit):
        raise PreconditionError(f"radius {Q.format(delta) if Q.contains(delta) else delta!r} is not way-below I")


def all_subsets(X: QMetricSpace | Sequence) -> list[frozenset]:
    """Every subset of the carrier, in bitmask order of carrier indices."""
    pts = X.points if isinstance(X, QMetricSpace) else tuple(X)
    return [frozenset(p for i, p in enumerate(pts) if m >> i & 1) for m in range(1 << len(pts))]


# -- balls, openness, closure ---------------------------------------------------------

def ball(X: QMetricSpace, x, delta, dual: bool = False) -> frozenset:
    _require_radius(X, delta)
    d = _dist(X, dual)
    Q = X.quantale
    X.index(x)
    return frozenset(y for y in X.points if Q.way_below(delta, d(x, y)))


def limit_ball(X: QMetricSpace, x, dual: bool = False) -> frozenset:
    """``{y : I <= d(x, y)}``: the intersection of all balls around ``x``."""
    return frozenset(y for y in X.points
                     if (d_preorder_leq(X, y, x) if dual else d_preorder_leq(X, x, y)))


def is_open(X: QMetricSpace, O: Iterable, dual: bool = False, method: str = REDUCED) -> Verdict:
    O = X.subset(O)
    rs = radii(X) if method == LITERAL else None
    for x in X.points:
        if x not in O:
            continue
        if method == LITERAL:
            ok = any(ball(X, x, r, dual) <= O for r in rs)
        else:
            ok = limit_ball(X, x, dual) <= O
        if not ok:
            return Verdict(False, x)
    return YES


def closure(X: QMetricSpace, A: Iterable, dual: bool = False, method: str = REDUCED) -> frozenset:
    """``cl A`` (points from which A is arbitrarily close) or, with ``dual``, ``cl A^o``."""
    A = X.subset(A)
    Q = X.quantale
    # cl uses d(y, x); its dual uses d(x, y)
    d = (lambda y, x: X.dist(x, y)) if dual else X.dist
    if method == LITERAL:
        rs = radii(X)
        return frozenset(y for y in X.points
                         if all(any(Q.way_below(r, d(y, x)) for x in A) for r in rs))
    return frozenset(y for y in X.points if any(Q.leq(Q.unit, d(y, x)) for x in A))


def is_continuous(f: SpaceMap, method: str = REDUCED) -> Verdict:
    """Epsilon-delta continuity for the ball topologies; the reduced form is
    monotonicity for the d-preorders."""
    X, Y = f.source, f.target
    if method == LITERAL:
        rx, ry = radii(X), radii(Y)
        for x in X.points:
            for eps in ry:
                target = ball(Y, f(x), eps)
                if not any(f.image(ball(X, x, r)) <= target for r in rx):
                    return Verdict(False, {"point": jsonable(x), "eps": Y.quantale.format(eps)})
        return YES
    for x in X.points:
        for y in limit_ball(X, x):
            if not d_preorder_leq(Y, f(x), f(y)):
                return Verdict(False, {"point": jsonable(x), "to": jsonable(y)})
    return YES


def union_of_balls(X: QMetricSpace, O: Iterable, dual: bool = False) -> bool:
    """Whether ``O`` is the union of the balls it contains."""
    O = X.subset(O)
    covered = set()
    for x in X.points:
        for r in radii(X):
            B = ball(X, x, r, dual)
            if B <= O:
                covered |= B
    return covered == O


# -- robustness -------------------------------------------------------------------------

def b_r(X: QMetricSpace, A: Iterable, delta) -> frozenset:
    """Points of A up to precision delta: the union of the balls ``B(x, delta)`` over A."""
    A = X.subset(A)
    _require_radius(X, delta)
    Q = X.quantale
    return frozenset(y for y in X.points if any(Q.way_below(delta, X.dist(x, y)) for x in A))


def flatten(X: QMetricSpace, A: Iterable, delta, method: str = REDUCED) -> frozenset:
    """The delta-flattening: dual closure of ``B_R(A, delta)``."""
    return closure(X, b_r(X, A, delta), dual=True, method=method)


class Families:
    """Subsets of one carrier as bitmasks, and families of subsets as bitmasks over those."""

    def __init__(self, X: QMetricSpace):
        self.X = X
        self.n = len(X.points)
        self._down: dict[int, int] = {}

    def mask(self, A: Iterable) -> int:
        m = 0
        for a in A:
            m |= 1 << self.X.index(a)
        return m

    def members(self, m: int) -> frozenset:
        return frozenset(p for i, p in enumerate(self.X.points) if m >> i & 1)

    def down(self, m: int) -> int:
        """The family P(S) of all subsets of S, as a family mask."""
        if m not in self._down:
            fam, sub = 0, m
            while True:
                fam |= 1 << sub
                if sub == 0:
                    break
                sub = (sub - 1) & m
            self._down[m] = fam
        return self._down[m]

    def family_mask(self, U: Iterable[Iterable]) -> int:
        fam = 0
        for A in U:
            fam |= 1 << self.mask(A)
        return fam

    def family(self, fam: int) -> list[frozenset]:
        return [self.members(m) for m in range(1 << self.n) if fam >> m & 1]


def _requirements(X: QMetricSpace, fams: Families, operator: Callable, limit: Callable, method: str) -> list:
    """For each subset mask A: the alternative families P(op(A, delta)), one of which
    an open family containing A must include."""
    out = []
    rs = radii(X) if method == LITERAL else None
    for m in range(1 << fams.n):
        A = fams.members(m)
        if method == LITERAL:
            alts = {fams.down(fams.mask(operator(X, A, r))) for r in rs}
        else:
            alts = {fams.down(fams.mask(limit(X, A)))}
        out.append(sorted(alts))
    return out


def _dual_closure(X, A):
    return closure(X, A, dual=True)


def _open_in(reqs: list, fam: int) -> Verdict:
    m, rest = 0, fam
    while rest:
        if rest & 1 and not any(alt & ~fam == 0 for alt in reqs[m]):
            return Verdict(False, m)
        rest >>= 1
        m += 1
    return YES


def robust_open(X: QMetricSpace, U: Iterable[Iterable], method: str = REDUCED) -> Verdict:
    """Whether U is open in the robust topology: every member A has some delta with
    ``P(B_R(A, delta))`` inside U.  The witness is an offending member."""
    fams = Families(X)
    v = _open_in(_requirements(X, fams, b_r, _dual_closure, method), fams.family_mask(U))
    return v if v else Verdict(False, sorted(jsonable(fams.members(v.witness))))


def robust_spec_leq(X: QMetricSpace, A: Iterable, B: Iterable) -> bool:
    """``A <= B`` in the specialization preorder of the robust topology."""
    return X.subset(B) <= closure(X, A, dual=True)


def _star_ops():
    from .hsmonad import b_s, star_closure
    return b_s, star_closure


def enumerate_topology(X: QMetricSpace, kind: str, method: str = LITERAL,
                       max_carrier: int = FAMILY_MAX, ball_max: int = 12) -> list:
    """All opens of a topology by brute force over candidates.

    ``ball``/``dual`` return subsets of X; ``robust``/``star_robust`` return
    families of subsets (each a list of frozensets).
    """
    if kind in (BALL, DUAL):
        if len(X) > ball_max:
            raise GuardError(f"ball topology enumeration allows at most {ball_max} points")
        return [O for O in all_subsets(X) if is_open(X, O, kind == DUAL, method)]
    if kind not in (ROBUST, STAR_ROBUST):
        raise ValueError(f"unknown topology {kind!r}")
    if len(X) > max_carrier:
        raise GuardError(f"family enumeration allows at most {max_carrier} points, got {len(X)}")
    if method == LITERAL and not X.quantale.is_finite:
        raise GuardError("family enumeration needs a finite quantale")
    fams, opens = open_family_masks(X, kind, method)
    return [fams.family(f) for f in opens]


def open_family_masks(X: QMetricSpace, kind: str, method: str = LITERAL):
    """``(Families, [open family masks])`` for the robust or *-robust topology."""
    fams = Families(X)
    if kind == ROBUST:
        reqs = _requirements(X, fams, b_r, _dual_closure, method)
    else:
        b_s, star_closure = _star_ops()
        reqs = _requirements(X, fams, b_s, star_closure, method)
    return fams, [f for f in range(1 << (1 << fams.n)) if _open_in(reqs, f)]


def specialization_from_opens(subsets: Sequence[frozenset], opens: Sequence[int], fams: Families):
    """``A <= B`` iff every open containing A contains B."""
    rel = set()
    for A in subsets:
        a = 1 << fams.mask(A)
        for B in subsets:
            b = 1 << fams.mask(B)
            if all(f & b for f in opens if f & a):
                rel.add((A, B))
    return rel


# -- property suites ----------------------------------------------------------------------------

def _fmt_r(X, r):
    return X.quantale.format(r)


def check_open_balls(X: QMetricSpace, dual: bool = False) -> VerificationReport:
    """The four open-ball properties over every centre and every radius in :func:`radii`."""
    Q = X.quantale
    rs = radii(X)
    rep = VerificationReport()
    balls = {(x, r): ball(X, x, r, dual) for x in X.points for r in rs}
    w1 = next(([jsonable(x), _fmt_r(X, r)] for (x, r), B in balls.items() if x not in B), None)
    rep.add("ball.centre", "topology.balls", w1 is None, w1)
    w2 = next(([jsonable(x), _fmt_r(X, r), _fmt_r(X, s)] for x in X.points for r in rs for s in rs
               if Q.leq(r, s) and not balls[x, s] <= balls[x, r]), None)
    rep.add("ball.antitone", "topology.balls", w2 is None, w2)

    def inner(y, target):
        return any(balls[y, s] <= target for s in rs)

    w3 = next(([jsonable(x), _fmt_r(X, r), jsonable(y)] for (x, r), B in balls.items() for y in B
               if not inner(y, B)), None)
    rep.add("ball.inner", "topology.balls", w3 is None, w3)
    w4 = None
    for (x1, r1), B1 in balls.items():
        for (x2, r2), B2 in balls.items():
            meet = B1 & B2
            y = next((y for y in meet if not inner(y, meet)), None)
            if y is not None:
                w4 = [jsonable(x1), _fmt_r(X, r1), jsonable(x2), _fmt_r(X, r2), jsonable(y)]
                break
        if w4:
            break
    rep.add("ball.intersection", "topology.balls", w4 is None, w4)
    return rep


def check_closure(X: QMetricSpace, max_carrier: int = 8) -> VerificationReport:
    """Closure is extensive, monotone and idempotent; it is the closure operator of the
    enumerated topology; both dual settings."""
    rep = VerificationReport()
    if len(X) > max_carrier:
        rep.add("closure.guard", "suite.guard", False, {"points": len(X), "max": max_carrier})
        return rep
    subs = all_subsets(X)
    for dual in (False, True):
        tag = "dual" if dual else "plain"
        cl = {A: closure(X, A, dual) for A in subs}
        w = next((sorted(jsonable(A)) for A in subs if not A <= cl[A]), None)
        rep.add(f"closure.{tag}.extensive", "topology.closure", w is None, w)
        w = next(([sorted(jsonable(A)), sorted(jsonable(B))] for A in subs for B in subs
                  if A <= B and not cl[A] <= cl[B]), None)
        rep.add(f"closure.{tag}.monotone", "topology.closure", w is None, w)
        w = next((sorted(jsonable(A)) for A in subs if cl[cl[A]] != cl[A]), None)
        rep.add(f"closure.{tag}.idempotent", "topology.closure", w is None, w)
        # closure for the ball topology uses d(y, x), i.e. the complement of the
        # open sets of tau_d; the dual closure pairs with tau_d^o
        opens = [O for O in subs if is_open(X, O, dual)]
        pts = frozenset(X.points)
        w = next((sorted(jsonable(A)) for A in subs
                  if cl[A] != frozenset.intersection(pts, *(pts - O for O in opens if not (A & O)))), None)
        rep.add(f"closure.{tag}.topological", "topology.closure", w is None, w)
    return rep


def check_reductions(X: QMetricSpace, max_carrier: int = 8, family_max: int = FAMILY_MAX) -> VerificationReport:
    """Limit-radius reductions against the all-radius definitions."""
    rep = VerificationReport()
    if len(X) > max_carrier:
        rep.add("reduction.guard", "suite.guard", False, {"points": len(X), "max": max_carrier})
        return rep
    subs = all_subsets(X)
    for dual in (False, True):
        tag = "dual" if dual else "plain"
        w = next((sorted(jsonable(O)) for O in subs
                  if bool(is_open(X, O, dual, LITERAL)) != bool(is_open(X, O, dual, REDUCED))), None)
        rep.add(f"reduction.open.{tag}", "robust.reduction", w is None, w)
        w = next((sorted(jsonable(A)) for A in subs
                  if closure(X, A, dual, LITERAL) != closure(X, A, dual, REDUCED)), None)
        rep.add(f"reduction.closure.{tag}", "robust.reduction", w is None, w)
        w = next((sorted(jsonable(O)) for O in subs if bool(is_open(X, O, dual)) != union_of_balls(X, O, dual)), None)
        rep.add(f"open.union-of-balls.{tag}", "topology.open", w is None, w)
    if len(X) <= family_max and X.quantale.is_finite:
        for kind in (ROBUST, STAR_ROBUST):
            _, lit = open_family_masks(X, kind, LITERAL)
            _, red = open_family_masks(X, kind, REDUCED)
            rep.add(f"reduction.{kind}", "robust.reduction", lit == red,
                    None if lit == red else {"literal": len(lit), "reduced": len(red)})
    return rep


def check_continuity(X: QMetricSpace, Y: QMetricSpace, limit: int = 4096) -> VerificationReport:
    """Over all maps X -> Y (up to ``limit``): the two continuity tests agree, and
    short maps are continuous."""
    from .qmetric import all_maps, arrow_check
    rep = VerificationReport()
    agree = short_ok = None
    for k, f in enumerate(all_maps(X, Y)):
        if k >= limit:
            break
        c_lit, c_red = bool(is_continuous(f, LITERAL)), bool(is_continuous(f, REDUCED))
        if agree is None and c_lit != c_red:
            agree = [jsonable(p) for p in f.images]
        if short_ok is None and arrow_check("short", f) and not c_red:
            short_ok = [jsonable(p) for p in f.images]
    rep.add("continuity.reduction", "robust.reduction", agree is None, agree)
    rep.add("continuity.short", "topology.continuity", short_ok is None, short_ok)
    return rep


def check_br_properties(X: QMetricSpace, max_carrier: int = 8) -> VerificationReport:
    """The five B_R properties over all subsets and all radii in :func:`radii`.

    Property 2 is checked under ``delta << delta1 (x) delta2``; whether the
    extra bracketed condition ``delta1 (x) delta2 <= delta_i`` held on the
    tested triples is reported separately.
    """
    Q = X.quantale
    rep = VerificationReport()
    if len(X) > max_carrier:
        rep.add("br.guard", "suite.guard", False, {"points": len(X), "max": max_carrier})
        return rep
    rs = radii(X)
    subs = all_subsets(X)
    br = {(A, r): b_r(X, A, r) for A in subs for r in rs}
    cl = {A: closure(X, A, dual=True) for A in subs}

    w = None
    for A in subs:
        for r in rs:
            if not A <= br[A, r]:
                w = [sorted(jsonable(A)), _fmt_r(X, r)]
                break
            for A2 in subs:
                if not A <= A2:
                    continue
                for r2 in rs:
                    if Q.leq(r2, r) and not br[A, r] <= br[A2, r2]:
                        w = [sorted(jsonable(A)), _fmt_r(X, r), sorted(jsonable(A2)), _fmt_r(X, r2)]
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("br.monotone", "robust.br", w is None, w)

    w, bracket_held, tested = None, True, 0
    for A in subs:
        for r1 in rs:
            inner = br[A, r1]
            for r2 in rs:
                outer = b_r(X, inner, r2)
                t = Q.tensor(r1, r2)
                for r in rs:
                    if not Q.way_below(r, t):
                        continue
                    tested += 1
                    if not (Q.leq(t, r1) and Q.leq(t, r2)):
                        bracket_held = False
                    if not outer <= br[A, r]:
                        w = [sorted(jsonable(A)), _fmt_r(X, r1), _fmt_r(X, r2), _fmt_r(X, r)]
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("br.tensor", "robust.br", w is None, w)
    rep.note("br.tensor.bracket", "robust.br", {"triples": tested, "bracket_condition_always_held": bracket_held})

    pts = frozenset(X.points)
    w = next((sorted(jsonable(A)) for A in subs
              if cl[A] != frozenset.intersection(pts, *(br[A, r] for r in rs))), None)
    rep.add("br.closure-intersection", "robust.br", w is None, w)

    w = next(([sorted(jsonable(A)), _fmt_r(X, r)] for A in subs for r in rs
              if b_r(X, cl[A], r) != br[A, r]), None)
    rep.add("br.closure-invariant", "robust.br", w is None, w)

    w = None
    for A in subs:
        for r in rs:
            flat = closure(X, br[A, r], dual=True)
            for r2 in rs:
                if Q.way_below(r2, r) and not (br[A, r] <= flat <= br[A, r2]):
                    w = [sorted(jsonable(A)), _fmt_r(X, r), _fmt_r(X, r2)]
                    break
            if w:
                break
        if w:
            break
    rep.add("br.flattening", "robust.flattening", w is None, w)
    return rep


def check_specialization(X: QMetricSpace, method: str = LITERAL) -> VerificationReport:
    """``robust_spec_leq`` against the preorder read off the enumerated robust topology."""
    rep = VerificationReport()
    if len(X) > 3 or not X.quantale.is_finite:
        rep.add("specialization.guard", "suite.guard", False,
                {"points": len(X), "finite": X.quantale.is_finite})
        return rep
    fams, opens = open_family_masks(X, ROBUST, method)
    subs = all_subsets(X)
    rel = specialization_from_opens(subs, opens, fams)
    w = next(([sorted(jsonable(A)), sorted(jsonable(B))] for A in subs for B in subs
              if ((A, B) in rel) != robust_spec_leq(X, A, B)), None)
    rep.add("specialization.robust", "robust.specialization", w is None, w)
    return rep


def check_space_topology(X: QMetricSpace) -> VerificationReport:
    rep = VerificationReport()
    rep.extend(check_open_balls(X).prefixed("plain"))
    rep.extend(check_open_balls(X, dual=True).prefixed("dual"))
    rep.extend(check_closure(X))
    rep.extend(check_reductions(X))
    rep.extend(check_br_properties(X))
    if len(X) <= 3 and X.quantale.is_finite:
        rep.extend(check_specialization(X))
    return rep
