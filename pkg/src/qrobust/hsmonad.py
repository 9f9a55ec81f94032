"""The Hausdorff-Smyth distance, the P_S monad, *-distance and *-closure, B_S and
the *-robust topology, and the checks relating it to the robust and ball topologies."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable

from .errors import GuardError, PreconditionError
from .quantale import ProductQuantale, rplus, sigma
from .qmetric import QMetricSpace, SpaceMap, arrow_check, check_qmetric, d_preorder_leq
from .report import VerificationReport, Verdict, jsonable
from .topology import (
    BALL,
    LITERAL,
    REDUCED,
    ROBUST,
    STAR_ROBUST,
    Families,
    _open_in,
    _requirements,
    all_subsets,
    b_r,
    closure,
    enumerate_topology,
    open_family_masks,
    radii,
    _require_radius,
)

PS_MAX = 5


class PowerSpace(QMetricSpace):
    """``(P(X), d_S)``; points are frozensets of points of ``base`` in bitmask order."""

    def __init__(self, base: QMetricSpace, name: str = ""):
        self.base = base
        subs = all_subsets(base)
        super().__init__(base.quantale, subs, [[d_s(base, A, B) for B in subs] for A in subs],
                         name or f"P({base.name})")


def d_s(X: QMetricSpace, A: Iterable, B: Iterable):
    """``meet over y in B of join over x in A of d(x, y)``."""
    A, B = X.subset(A), X.subset(B)
    Q = X.quantale
    return Q.meet(Q.join(X.dist(x, y) for x in A) for y in B)


def ps_space(X: QMetricSpace, max_carrier: int = PS_MAX) -> PowerSpace:
    if len(X) > max_carrier:
        raise GuardError(f"P_S of a {len(X)}-point space exceeds the guard of {max_carrier} points")
    return PowerSpace(X)


def eta(X: QMetricSpace, PX: PowerSpace | None = None) -> SpaceMap:
    PX = PX or ps_space(X)
    return SpaceMap.from_function(X, PX, lambda x: frozenset([x]), "eta")


def _base_of(S: QMetricSpace) -> QMetricSpace:
    if not isinstance(S, PowerSpace):
        raise PreconditionError("expected a map into a Hausdorff-Smyth space")
    return S.base


def kleisli_extend(f: SpaceMap, PX: PowerSpace | None = None, check: bool = True) -> SpaceMap:
    """``f*(A)``: the union of ``f(x)`` over ``x in A``."""
    _base_of(f.target)
    if check:
        v = arrow_check("short", f)
        if not v:
            raise PreconditionError(f"extension needs a short map; fails at {v.witness!r}")
    PX = PX or ps_space(f.source)
    return SpaceMap.from_function(PX, f.target, lambda A: frozenset().union(*(f(x) for x in A)), "ext")


def star_distance(X: QMetricSpace, A: Iterable, y):
    A = X.subset(A)
    Q = X.quantale
    return Q.join(X.dist(x, y) for x in A)


def star_closure(X: QMetricSpace, A: Iterable) -> frozenset:
    A = X.subset(A)
    Q = X.quantale
    return frozenset(y for y in X.points if Q.leq(Q.unit, star_distance(X, A, y)))


def b_s(X: QMetricSpace, A: Iterable, delta) -> frozenset:
    A = X.subset(A)
    _require_radius(X, delta)
    Q = X.quantale
    return frozenset(y for y in X.points if Q.way_below(delta, star_distance(X, A, y)))


def star_robust_open(X: QMetricSpace, U: Iterable[Iterable], method: str = REDUCED) -> Verdict:
    fams = Families(X)
    v = _open_in(_requirements(X, fams, b_s, star_closure, method), fams.family_mask(U))
    return v if v else Verdict(False, sorted(jsonable(fams.members(v.witness))))


# -- checks ------------------------------------------------------------------------------------

def _fs(A):
    return sorted(jsonable(A))


def check_star_preorder(X: QMetricSpace, max_carrier: int = PS_MAX) -> VerificationReport:
    """For all A, B: the d_S-preorder is inclusion in the *-closure, the d_S-equivalence
    is equality of *-closures, and d_S is the meet of *-distances."""
    rep = VerificationReport()
    if len(X) > max_carrier:
        rep.add("star.guard", "suite.guard", False, {"points": len(X), "max": max_carrier})
        return rep
    Q = X.quantale
    PX = ps_space(X, max_carrier)
    subs = PX.points
    cle = {A: star_closure(X, A) for A in subs}
    w1 = w2 = w3 = w4 = None
    equivalent_distinct = None
    for A in subs:
        for y in X.points:
            if w4 is None and not Q.eq(star_distance(X, A, y), d_s(X, A, [y])):
                w4 = [_fs(A), jsonable(y)]
        for B in subs:
            leq = d_preorder_leq(PX, A, B)
            if w1 is None and leq != (B <= cle[A]):
                w1 = [_fs(A), _fs(B)]
            eqv = leq and d_preorder_leq(PX, B, A)
            if w2 is None and eqv != (cle[A] == cle[B]):
                w2 = [_fs(A), _fs(B)]
            if eqv and A != B and equivalent_distinct is None:
                equivalent_distinct = [_fs(A), _fs(B)]
            if w3 is None and not Q.eq(PX.dist(A, B), Q.meet(star_distance(X, A, y) for y in B)):
                w3 = [_fs(A), _fs(B)]
    rep.add("star.preorder", "hs.star-preorder", w1 is None, w1)
    rep.add("star.equivalence", "hs.star-preorder", w2 is None, w2)
    rep.add("star.meet-formula", "hs.star-preorder", w3 is None, w3)
    rep.add("star.singleton", "hs.star-preorder", w4 is None, w4)
    w = next((_fs(A) for A in subs if not (d_preorder_leq(PX, A, cle[A]) and d_preorder_leq(PX, cle[A], A))), None)
    rep.add("star.closure-equivalent", "hs.star-preorder", w is None, w)
    w = next((_fs(A) for A in subs if any(cle[A] < B and cle[B] == cle[A] for B in subs)), None)
    rep.add("star.closure-largest", "hs.star-preorder", w is None, w)
    rep.note("star.equivalent-distinct", "hs.star-preorder", equivalent_distinct)
    return rep


def check_ps_monad_structure(X: QMetricSpace, Y: QMetricSpace | None = None) -> VerificationReport:
    """P_S(X) is a Q-metric space, eta is an isometry, and extension preserves
    shortness and the hom-preorder, over all short maps X -> P_S(Y)."""
    from .qmetric import short_maps
    Y = Y or X
    PX, PY = ps_space(X), ps_space(Y)
    rep = VerificationReport()
    rep.extend(check_qmetric(PX).prefixed("ps"))
    rep.add("eta.isometry", "hs.monad", bool(arrow_check("isometry", eta(X, PX))))
    fs = short_maps(X, PY)
    exts = [kleisli_extend(f, PX, check=False) for f in fs]
    w = next(([_fs(p) for p in f.images] for f, e in zip(fs, exts) if not arrow_check("short", e)), None)
    rep.add("extension.short", "hs.enrichment", w is None, w)
    w = None
    for (f, ef), (g, eg) in itertools.product(zip(fs, exts), repeat=2):
        if arrow_check("hom_leq", f, g) and not arrow_check("hom_leq", ef, eg):
            w = [[_fs(p) for p in f.images], [_fs(p) for p in g.images]]
            break
    rep.add("extension.monotone", "hs.enrichment", w is None, w)
    rep.note("extension.maps", "hs.enrichment", len(fs))
    return rep


def check_bs_properties(X: QMetricSpace, max_carrier: int = PS_MAX) -> VerificationReport:
    Q = X.quantale
    rep = VerificationReport()
    if len(X) > max_carrier:
        rep.add("bs.guard", "suite.guard", False, {"points": len(X), "max": max_carrier})
        return rep
    rs = radii(X)
    subs = all_subsets(X)
    bs = {(A, r): b_s(X, A, r) for A in subs for r in rs}
    w = next(([_fs(A), Q.format(r)] for A in subs for r in rs if not b_r(X, A, r) <= bs[A, r]), None)
    rep.add("bs.contains-br", "hs.bs", w is None, w)
    w = next(([_fs(A), Q.format(r), _fs(A2), Q.format(r2)]
              for A in subs for r in rs for A2 in subs if A <= A2 for r2 in rs
              if Q.leq(r2, r) and not bs[A, r] <= bs[A2, r2]), None)
    rep.add("bs.monotone", "hs.bs", w is None, w)
    w = next(([_fs(A), Q.format(r)] for A in subs for r in rs if not Q.leq(r, d_s(X, A, bs[A, r]))), None)
    rep.add("bs.distance", "hs.bs", w is None, w)
    return rep


def check_finite_subset(X: QMetricSpace, max_carrier: int = PS_MAX) -> VerificationReport:
    """delta << d(A, y) iff some finite A0 inside A has delta << d(A0, y); for linear
    quantales and delta other than bottom, a single point of A suffices."""
    Q = X.quantale
    rep = VerificationReport()
    if not Q.is_finite or len(X) > max_carrier:
        rep.add("finite-subset.guard", "suite.guard", False, {"points": len(X), "finite": Q.is_finite})
        return rep
    subs = all_subsets(X)
    w = wl = None
    single_fails = None
    for A in subs:
        parts = [B for B in subs if B <= A]
        for y in X.points:
            dA = star_distance(X, A, y)
            for q in Q.elements():
                lhs = Q.way_below(q, dA)
                if w is None and lhs != any(Q.way_below(q, star_distance(X, B, y)) for B in parts):
                    w = [_fs(A), jsonable(y), Q.format(q)]
                single = any(Q.way_below(q, X.dist(x, y)) for x in A)
                if lhs != single and not Q.eq(q, Q.bottom):
                    if Q.is_linear and wl is None:
                        wl = [_fs(A), jsonable(y), Q.format(q)]
                    if single_fails is None:
                        single_fails = [_fs(A), jsonable(y), Q.format(q)]
    rep.add("finite-subset.general", "hs.finite-subset", w is None, w)
    if Q.is_linear:
        rep.add("finite-subset.linear", "hs.finite-subset", wl is None, wl)
    else:
        rep.note("finite-subset.single-witness", "hs.finite-subset", single_fails)
    return rep


def check_topology_theorems(X: QMetricSpace, max_carrier: int = 3) -> VerificationReport:
    """By exhaustive enumeration of families on P(X):
    (a) the ball topology of P_S(X) equals the *-robust topology,
    (b) the *-robust topology is contained in the robust one,
    (c) the two agree for linear non-trivial quantales,
    (d) the finite-subset lemma."""
    Q = X.quantale
    rep = VerificationReport()
    if len(X) > max_carrier or not Q.is_finite:
        rep.add("theorems.guard", "suite.guard", False,
                {"points": len(X), "max": max_carrier, "finite": Q.is_finite})
        return rep
    PX = ps_space(X)
    fams, star = open_family_masks(X, STAR_ROBUST, LITERAL)
    _, robust = open_family_masks(X, ROBUST, LITERAL)
    ball_opens = enumerate_topology(PX, BALL, LITERAL)
    ds_masks = sorted(fams.family_mask(O) for O in ball_opens)
    rep.add("theorems.a.ds-equals-star", "hs.topologies", ds_masks == star,
            None if ds_masks == star else {"ds": len(ds_masks), "star": len(star)})
    rset = set(robust)
    extra = next((f for f in star if f not in rset), None)
    rep.add("theorems.b.star-in-robust", "hs.topologies", extra is None,
            None if extra is None else [_fs(A) for A in fams.family(extra)])
    if Q.is_linear and not Q.is_trivial:
        rep.add("theorems.c.linear-equal", "hs.linear", star == robust,
                None if star == robust else {"star": len(star), "robust": len(robust)})
    else:
        sset = set(star)
        strict = next((f for f in robust if f not in sset), None)
        rep.note("theorems.c.not-asserted", "hs.linear",
                 {"linear": Q.is_linear, "trivial": Q.is_trivial, "star": len(star), "robust": len(robust),
                  "robust-only": None if strict is None else [_fs(A) for A in fams.family(strict)]})
    rep.extend(check_finite_subset(X).prefixed("theorems.d"))
    return rep


def strict_inclusion_witness(X: QMetricSpace):
    """A family open for the robust topology but not the *-robust one, with the offending member."""
    fams, robust = open_family_masks(X, ROBUST, REDUCED)
    reqs = _requirements(X, fams, b_s, star_closure, REDUCED)
    for f in robust:
        v = _open_in(reqs, f)
        if not v:
            return [_fs(A) for A in fams.family(f)], _fs(fams.members(v.witness))
    return None


def sigma_sq_spaces(points=("a", "b", "p")):
    """Every 3-point Q-metric space over Sigma x Sigma with unit diagonal, in a fixed order."""
    Q = ProductQuantale([sigma(), sigma()])
    els = Q.elements()
    n = len(points)
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for vals in itertools.product(els, repeat=len(off)):
        d = [[Q.unit] * n for _ in range(n)]
        for (i, j), v in zip(off, vals):
            d[i][j] = v
        X = QMetricSpace(Q, points, d, "sigma2-search")
        if check_qmetric(X).ok:
            yield X


def search_strict_inclusion():
    """First 3-point Sigma x Sigma space (in enumeration order) where the robust topology
    has an open family that is not *-robust-open.  Returns ``(X, family, member)`` or None."""
    for X in sigma_sq_spaces():
        if all(star_closure(X, A) == closure(X, A, dual=True) for A in all_subsets(X)):
            continue
        hit = strict_inclusion_witness(X)
        if hit:
            return X, hit[0], hit[1]
    return None


def check_strict_inclusion() -> VerificationReport:
    rep = VerificationReport()
    found = search_strict_inclusion()
    if found is None:
        rep.add("strict-inclusion.search", "hs.strict-inclusion", False, "no instance found")
        return rep
    X, fam, member = found
    rep.add("strict-inclusion.search", "hs.strict-inclusion", True)
    rep.add("strict-inclusion.robust-open", "hs.strict-inclusion", bool(robust_open_literal(X, fam)))
    rep.add("strict-inclusion.not-star-open", "hs.strict-inclusion",
            not star_robust_open(X, fam, LITERAL))
    rep.note("strict-inclusion.instance", "hs.strict-inclusion",
             {"space": X.to_json(), "family": fam, "member": member})
    return rep


def robust_open_literal(X, fam):
    from .topology import robust_open
    return robust_open(X, fam, LITERAL)


# -- the R+ x R+ counterexample ---------------------------------------------------------------

def counterexample_space() -> tuple[QMetricSpace, frozenset, tuple]:
    Q = ProductQuantale([rplus(), rplus()])
    A = ((0, 2), (2, 0))
    p = (2, 2)
    pts = A + (p,)
    X = QMetricSpace.from_function(
        Q, pts, lambda u, v: (Fraction(abs(u[0] - v[0])), Fraction(abs(u[1] - v[1]))), "counterexample")
    return X, frozenset(A), p


def counterexample_grid() -> list:
    grid = [(Fraction(1, n), Fraction(1, m)) for n in range(1, 9) for m in range(1, 9)]
    return grid + [(Fraction(1), Fraction(1)), (Fraction(3), Fraction(3))]


def run_counterexample() -> VerificationReport:
    X, A, p = counterexample_space()
    Q = X.quantale
    rep = VerificationReport()
    rep.extend(check_qmetric(X).prefixed("counterexample"))
    dAp = star_distance(X, A, p)
    rep.add("counterexample.star-distance-is-unit", "hs.counterexample",
            Q.eq(dAp, Q.unit) and Q.eq(dAp, (Fraction(0), Fraction(0))), Q.format(dAp))
    bad = next((Q.format(r) for r in counterexample_grid()
                if not Q.way_below(r, Q.unit) or p not in b_s(X, A, r)), None)
    rep.add("counterexample.p-in-every-bs", "hs.counterexample", bad is None, bad)
    d0 = (Fraction(1), Fraction(1))
    rep.add("counterexample.p-not-in-br", "hs.counterexample", p not in b_r(X, A, d0),
            _fs(b_r(X, A, d0)))
    bad = next((jsonable(q) for q in sorted(A) if Q.way_below(d0, X.dist(q, p))), None)
    rep.add("counterexample.no-single-witness", "hs.counterexample", bad is None, bad)
    # the family from the example: subsets of B_R(A, delta') for delta0 << delta' << I
    O = set()
    for r in radii(X, [d0]):
        if Q.way_below(d0, r):
            bra = b_r(X, A, r)
            O.update(B for B in all_subsets(X) if B <= bra)
    rep.add("counterexample.family-robust-open", "hs.counterexample",
            bool(robust_open_literal(X, O)), sorted(_fs(B) for B in O))
    v = star_robust_open(X, O, LITERAL)
    rep.add("counterexample.family-not-star-open", "hs.counterexample", not v, sorted(_fs(B) for B in O))
    return rep
