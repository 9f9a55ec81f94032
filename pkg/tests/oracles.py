"""Brute-force reference implementations, written directly from the definitions and
sharing no code paths with the package beyond element-level operations."""

from __future__ import annotations

import itertools
from fractions import Fraction

from qrobust.ext import INF


# -- R+ with the reversed order, as plain arithmetic ----------------------------------------------

def rp_leq(x, y) -> bool:
    """x below y in R+ means x >= y as magnitudes (inf is bottom)."""
    if x is INF:
        return True
    if y is INF:
        return False
    return x >= y


def rp_way_below(x, y) -> bool:
    return x is INF or (y is not INF and x > y)


def rp_join(xs):
    xs = list(xs)
    finite = [x for x in xs if x is not INF]
    if not xs:
        return INF
    return min(finite) if finite else INF


def rp_meet(xs):
    xs = list(xs)
    if not xs:
        return Fraction(0)
    return INF if any(x is INF for x in xs) else max(xs)


def rp_plus(x, y):
    return INF if INF in (x, y) else x + y


# -- generic finite-lattice oracles ----------------------------------------------------------------

def powerset(xs):
    xs = list(xs)
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def directed(Q, D) -> bool:
    return bool(D) and all(any(Q.leq(a, c) and Q.leq(b, c) for c in D) for a in D for b in D)


def way_below_by_definition(Q, x, y) -> bool:
    els = Q.elements()
    for D in powerset(els):
        if directed(Q, D) and Q.leq(y, Q.join(D)) and not any(Q.leq(x, d) for d in D):
            return False
    return True


def residual_by_join(Q, x, z, side="left"):
    if side == "left":
        return Q.join([y for y in Q.elements() if Q.leq(Q.tensor(x, y), z)])
    return Q.join([y for y in Q.elements() if Q.leq(Q.tensor(y, x), z)])


# -- metric-space oracles --------------------------------------------------------------------------

def triangle_failures(Q, points, d):
    """Triples (x, y, z) with d(x,y) (x) d(y,z) not below d(x,z); ``d`` is a function."""
    return [(x, y, z) for x in points for y in points for z in points
            if not Q.leq(Q.tensor(d(x, y), d(y, z)), d(x, z))]


def equivalence_closure(points, pairs):
    """Classes of the smallest equivalence containing ``pairs`` (by repeated merging)."""
    classes = [{p} for p in points]
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            ca = next(c for c in classes if a in c)
            cb = next(c for c in classes if b in c)
            if ca is not cb:
                ca |= cb
                classes.remove(cb)
                changed = True
    return [frozenset(c) for c in classes]


def closure_by_definition(X, A, radii, dual=False):
    """``{y : forall delta in radii. exists x in A. delta << d(y, x)}`` (``d(x, y)`` when dual)."""
    Q = X.quantale
    out = set()
    for y in X.points:
        if all(any(Q.way_below(r, X.dist(x, y) if dual else X.dist(y, x)) for x in A) for r in radii):
            out.add(y)
    return frozenset(out)


def hausdorff_smyth(X, A, B):
    Q = X.quantale
    vals = []
    for y in B:
        vals.append(Q.join([X.dist(x, y) for x in A]))
    return Q.meet(vals)


def families(X):
    return powerset(powerset(X.points))


def robust_open_by_definition(X, U, radii, op) -> bool:
    """``forall A in U. exists delta. P(op(A, delta)) inside U`` over explicit sets."""
    U = set(U)
    return all(any(all(S in U for S in powerset(op(X, A, r))) for r in radii) for A in U)


def br_by_definition(X, A, delta):
    Q = X.quantale
    return frozenset(y for y in X.points if any(Q.way_below(delta, X.dist(x, y)) for x in A))


def finite_radii(Q):
    return [q for q in Q.elements() if Q.leq(q, Q.unit)]


def up_sets(points, leq):
    return [S for S in powerset(points) if all(y in S for x in S for y in points if leq(x, y))]
