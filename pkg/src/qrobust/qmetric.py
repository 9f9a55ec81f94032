"""Q-metric spaces on finite carriers, short maps and the hom-preorder,
(co)limits, reindexing along lax maps, and the separation quotient."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import ElementError, LawViolation, PreconditionError
from .quantale import EXHAUSTIVE, MonoidalMap, Quantale, Sampled, build_quantale, check_monoidal_map
from .report import VerificationReport, Verdict, YES, jsonable

Point = Hashable


class QMetricSpace:
    """A finite carrier with a Q-valued distance matrix ``d[i][j] = d(points[i], points[j])``.

    Construction only checks that entries belong to the quantale; the metric
    laws are checked by :func:`check_qmetric`.
    """

    def __init__(self, quantale: Quantale, points: Sequence[Point], d: Sequence[Sequence[Any]], name: str = ""):
        pts = tuple(points)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        if len(d) != len(pts) or any(len(row) != len(pts) for row in d):
            raise ValueError("d must be a square matrix over the points")
        for row in d:
            for v in row:
                if not quantale.contains(v):
                    raise ElementError(f"distance {v!r} is not an element of {quantale.name}", v)
        self.quantale = quantale
        self.points = pts
        self.d = tuple(tuple(row) for row in d)
        self.name = name
        self._index = {p: i for i, p in enumerate(pts)}

    @classmethod
    def from_function(cls, Q: Quantale, points: Iterable[Point], dist: Callable[[Point, Point], Any],
                      name: str = "") -> "QMetricSpace":
        pts = tuple(points)
        return cls(Q, pts, [[dist(x, y) for y in pts] for x in pts], name)

    def index(self, x: Point) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise ElementError(f"{x!r} is not a point of {self.name or 'the space'}", x) from None

    def dist(self, x: Point, y: Point):
        return self.d[self.index(x)][self.index(y)]

    def subset(self, A: Iterable[Point]) -> frozenset:
        A = frozenset(A)
        for a in A:
            self.index(a)
        return A

    def values(self) -> set:
        return {v for row in self.d for v in row}

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    @cached_property
    def _key(self):
        return (self.quantale, self.points, self.d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QMetricSpace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"QMetricSpace({self.name or '?'}: {len(self.points)} points over {self.quantale.name})"

    def to_json(self) -> dict:
        Q = self.quantale
        return {
            "quantale": Q.descriptor(),
            "points": [jsonable(p) for p in self.points],
            "d": [[Q.format(v) for v in row] for row in self.d],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "QMetricSpace":
        Q = build_quantale(data["quantale"])
        points = [p if not isinstance(p, list) else tuple(p) for p in data["points"]]
        d = [[Q.parse(v) for v in row] for row in data["d"]]
        return cls(Q, points, d, name or data.get("name", ""))


@dataclass(frozen=True)
class SpaceMap:
    """A total function between the carriers of two spaces (images aligned with ``source.points``)."""

    source: QMetricSpace
    target: QMetricSpace
    images: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.images) != len(self.source.points):
            raise ValueError("a map needs exactly one image per source point")
        for y in self.images:
            self.target.index(y)

    @classmethod
    def from_function(cls, source: QMetricSpace, target: QMetricSpace, fn: Callable[[Point], Point],
                      name: str = "") -> "SpaceMap":
        return cls(source, target, tuple(fn(x) for x in source.points), name)

    def __call__(self, x: Point) -> Point:
        return self.images[self.source.index(x)]

    def image(self, A: Iterable[Point]) -> frozenset:
        return frozenset(self(x) for x in A)

    def then(self, g: "SpaceMap") -> "SpaceMap":
        """``g o self``."""
        if g.source != self.target:
            raise PreconditionError("maps are not composable")
        return SpaceMap(self.source, g.target, tuple(g(y) for y in self.images))

    def __repr__(self) -> str:
        return f"SpaceMap({self.name or 'f'}: {dict(zip(self.source.points, self.images))})"


def compose(*maps: SpaceMap) -> SpaceMap:
    """``compose(g, f) = g o f`` (rightmost applied first)."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = out.then(m)
    return out


def identity(X: QMetricSpace) -> SpaceMap:
    return SpaceMap(X, X, X.points, "id")


def all_maps(X: QMetricSpace, Y: QMetricSpace) -> Iterable[SpaceMap]:
    for images in itertools.product(Y.points, repeat=len(X.points)):
        yield SpaceMap(X, Y, images)


def short_maps(X: QMetricSpace, Y: QMetricSpace) -> list[SpaceMap]:
    return [f for f in all_maps(X, Y) if arrow_check("short", f)]


# -- metric laws and the d-preorder ---------------------------------------------

def check_qmetric(X: QMetricSpace) -> VerificationReport:
    Q = X.quantale
    rep = VerificationReport()
    bad_unit = next((x for i, x in enumerate(X.points) if not Q.leq(Q.unit, X.d[i][i])), None)
    rep.add("metric.unit", "metric.laws", bad_unit is None, jsonable(bad_unit))
    n = len(X.points)
    bad_tri = next(((X.points[i], X.points[j], X.points[k])
                    for i in range(n) for j in range(n) for k in range(n)
                    if not Q.leq(Q.tensor(X.d[i][j], X.d[j][k]), X.d[i][k])), None)
    rep.add("metric.triangle", "metric.laws", bad_tri is None, jsonable(bad_tri))
    return rep


def is_qmetric(X: QMetricSpace) -> bool:
    return check_qmetric(X).ok


def d_preorder_leq(X: QMetricSpace, x: Point, y: Point) -> bool:
    Q = X.quantale
    return Q.leq(Q.unit, X.dist(x, y))


def d_equivalent(X: QMetricSpace, x: Point, y: Point) -> bool:
    return d_preorder_leq(X, x, y) and d_preorder_leq(X, y, x)


# -- arrows --------------------------------------------------------------------------

SHORT, ISOMETRY, HOM_LEQ, EQUIVALENT = "short", "isometry", "hom_leq", "equivalent"


def arrow_check(kind: str, f: SpaceMap, g: SpaceMap | None = None) -> Verdict:
    """Decide ``short``/``isometry`` for ``f`` or ``hom_leq``/``equivalent`` for the parallel pair ``f, g``."""
    X, Y = f.source, f.target
    Q = X.quantale
    if kind in (SHORT, ISOMETRY):
        if Y.quantale != Q:
            raise PreconditionError("source and target are over different quantales")
        for x, y in itertools.product(X.points, repeat=2):
            a, b = X.dist(x, y), Y.dist(f(x), f(y))
            if not Q.leq(a, b) or (kind == ISOMETRY and not Q.eq(a, b)):
                return Verdict(False, (x, y))
        return YES
    if kind in (HOM_LEQ, EQUIVALENT):
        if g is None or g.source != X or g.target != Y:
            raise PreconditionError(f"{kind} needs two parallel maps")
        for x in X.points:
            if not d_preorder_leq(Y, f(x), g(x)):
                return Verdict(False, x)
            if kind == EQUIVALENT and not d_preorder_leq(Y, g(x), f(x)):
                return Verdict(False, x)
        return YES
    raise ValueError(f"unknown arrow property {kind!r}")


def check_equivalence_pair(f: SpaceMap, g: SpaceMap) -> Verdict:
    """``f: X -> Y`` and ``g: Y -> X`` form an equivalence: g o f ~ id_X and f o g ~ id_Y."""
    if f.target != g.source or g.target != f.source:
        raise PreconditionError("equivalence needs f: X -> Y and g: Y -> X")
    v = arrow_check(EQUIVALENT, compose(g, f), identity(f.source))
    if not v:
        return Verdict(False, {"side": "g.f", "point": v.witness})
    v = arrow_check(EQUIVALENT, compose(f, g), identity(f.target))
    if not v:
        return Verdict(False, {"side": "f.g", "point": v.witness})
    return YES


# -- (co)limits ------------------------------------------------------------------------

def _common_quantale(spaces: Sequence[QMetricSpace]) -> Quantale:
    qs = {X.quantale for X in spaces}
    if len(qs) != 1:
        raise PreconditionError("all spaces must share one quantale")
    return qs.pop()


def product(spaces: Sequence[QMetricSpace], quantale: Quantale | None = None):
    """Cartesian product with the pointwise meet of distances, and its projections."""
    if not spaces and quantale is None:
        raise PreconditionError("the empty product needs an explicit quantale")
    Q = quantale or _common_quantale(spaces)
    pts = list(itertools.product(*(X.points for X in spaces)))
    P = QMetricSpace.from_function(
        Q, pts, lambda x, y: Q.meet(X.dist(a, b) for X, a, b in zip(spaces, x, y)), "product")
    projections = [SpaceMap.from_function(P, X, lambda p, i=i: p[i], f"pi{i}") for i, X in enumerate(spaces)]
    return P, projections


def coproduct(spaces: Sequence[QMetricSpace], quantale: Quantale | None = None):
    """Tagged union; distances across summands are bottom.  Returns the sum and its injections."""
    if not spaces and quantale is None:
        raise PreconditionError("the empty sum needs an explicit quantale")
    Q = quantale or _common_quantale(spaces)
    pts = [(j, x) for j, X in enumerate(spaces) for x in X.points]
    S = QMetricSpace.from_function(
        Q, pts, lambda p, q: spaces[p[0]].dist(p[1], q[1]) if p[0] == q[0] else Q.bottom, "sum")
    injections = [SpaceMap.from_function(X, S, lambda x, j=j: (j, x), f"in{j}") for j, X in enumerate(spaces)]
    return S, injections


def _parallel(f: SpaceMap, g: SpaceMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("equalizer/coequalizer need a parallel pair")
    for h in (f, g):
        if not arrow_check(SHORT, h):
            raise PreconditionError(f"{h.name or 'map'} is not short")


def equalizer(f: SpaceMap, g: SpaceMap):
    """The subspace where ``f`` and ``g`` agree, with its inclusion."""
    _parallel(f, g)
    X = f.source
    pts = [x for x in X.points if f(x) == g(x)]
    E = QMetricSpace.from_function(X.quantale, pts, X.dist, "equalizer")
    return E, SpaceMap(E, X, tuple(pts), "incl")


def tensor_closure(Q: Quantale, d: list[list], max_rounds: int | None = None) -> list[list]:
    """Least matrix above ``d`` satisfying d(a,b) (x) d(b,c) <= d(a,c)."""
    n = len(d)
    d = [list(row) for row in d]
    rounds = max_rounds if max_rounds is not None else 4 * n + 4
    for _ in range(rounds):
        changed = False
        for b in range(n):
            for a in range(n):
                for c in range(n):
                    v = Q.join2(d[a][c], Q.tensor(d[a][b], d[b][c]))
                    if not Q.eq(v, d[a][c]):
                        d[a][c] = v
                        changed = True
        if not changed:
            return d
    raise LawViolation("tensor-closure", None, "chain closure did not stabilise")


def coequalizer(f: SpaceMap, g: SpaceMap):
    """Quotient of the target by the equivalence generated by f(x) ~ g(x).

    Classes are frozensets of target points.  Distances start as the join over
    representatives and are then closed under tensor chains through the
    classes, which the join alone does not guarantee.
    Returns ``(quotient, projection, closure_changed)``.
    """
    _parallel(f, g)
    Y = f.target
    Q = Y.quantale
    parent = {y: y for y in Y.points}

    def find(y):
        while parent[y] != y:
            parent[y] = parent[parent[y]]
            y = parent[y]
        return y

    for x in f.source.points:
        a, b = find(f(x)), find(g(x))
        if a != b:
            if Y.index(a) < Y.index(b):
                parent[b] = a
            else:
                parent[a] = b
    groups: dict = {}
    for y in Y.points:
        groups.setdefault(find(y), []).append(y)
    classes = [frozenset(ms) for ms in sorted(groups.values(), key=lambda ms: Y.index(ms[0]))]
    raw = [[Q.join(Y.dist(a, b) for a in A for b in B) for B in classes] for A in classes]
    closed = tensor_closure(Q, raw)
    changed = any(not Q.eq(u, v) for r1, r2 in zip(raw, closed) for u, v in zip(r1, r2))
    C = QMetricSpace(Q, classes, closed, "coequalizer")
    of = {y: c for c in classes for y in c}
    return C, SpaceMap.from_function(Y, C, lambda y: of[y], "quotient"), changed


def construct(kind: str, data):
    """Dispatch to :func:`product`, :func:`coproduct`, :func:`equalizer` or :func:`coequalizer`."""
    if kind == "product":
        return product(data)
    if kind == "sum":
        return coproduct(data)
    if kind == "equalizer":
        return equalizer(*data)
    if kind == "coequalizer":
        return coequalizer(*data)[:2]
    raise ValueError(f"unknown construction {kind!r}")


# -- reindexing -----------------------------------------------------------------------

def reindex(h: MonoidalMap, X: QMetricSpace, mode=None) -> QMetricSpace:
    """``(X, h o d)`` over the target of a lax map ``h``; raises if ``h`` is not lax."""
    if h.source != X.quantale:
        raise PreconditionError("h must start at the quantale of X")
    mode = mode or (EXHAUSTIVE if h.source.is_finite else Sampled(0, 500))
    lax = check_monoidal_map(h, mode)
    bad = [e for e in lax.failures if e.anchor == "monoidal-map.lax"]
    if bad:
        raise LawViolation(bad[0].id, bad[0].witness, f"{h.name} is not lax monoidal")
    Y = QMetricSpace(h.target, X.points, [[h(v) for v in row] for row in X.d], X.name)
    rep = check_qmetric(Y)
    if not rep.ok:
        raise LawViolation(rep.failures[0].id, rep.failures[0].witness)
    return Y


# -- separation ---------------------------------------------------------------------------

def is_separated(X: QMetricSpace) -> Verdict:
    for x, y in itertools.combinations(X.points, 2):
        if d_equivalent(X, x, y):
            return Verdict(False, (x, y))
    return YES


def equivalence_classes(X: QMetricSpace) -> list[tuple]:
    """Classes of ~_d as tuples in carrier order, ordered by their first member."""
    classes: list[list] = []
    for x in X.points:
        for c in classes:
            if d_equivalent(X, c[0], x):
                c.append(x)
                break
        else:
            classes.append([x])
    return [tuple(c) for c in classes]


def first_member(members: tuple) -> Point:
    return members[0]


def last_member(members: tuple) -> Point:
    return members[-1]


def separation_quotient(X: QMetricSpace, choose: Callable[[tuple], Point] = first_member):
    """``(X0, r, s)``: the separated quotient by ~_d, the quotient isometry ``r``
    and the section ``s`` picking ``choose(class)`` (default: least carrier index).

    Points of ``X0`` are the classes as frozensets, so quotients built with
    different sections have identical carriers and distances.
    """
    classes = equivalence_classes(X)
    reps = {}
    for c in classes:
        rep = choose(c)
        if rep not in c:
            raise PreconditionError(f"section chose {rep!r} outside its class")
        reps[frozenset(c)] = rep
    keys = [frozenset(c) for c in classes]
    X0 = QMetricSpace.from_function(X.quantale, keys, lambda a, b: X.dist(reps[a], reps[b]),
                                    f"{X.name}/~" if X.name else "")
    of = {x: k for k in keys for x in k}
    r = SpaceMap.from_function(X, X0, lambda x: of[x], "r")
    s = SpaceMap.from_function(X0, X, lambda k: reps[k], "s")
    return X0, r, s


def quotient_well_defined(X: QMetricSpace) -> Verdict:
    """All representative choices give the same quotient distance."""
    Q = X.quantale
    classes = equivalence_classes(X)
    for A in classes:
        for B in classes:
            vals = [X.dist(a, b) for a in A for b in B]
            if any(not Q.eq(vals[0], v) for v in vals):
                return Verdict(False, (A, B))
    return YES


# -- small constructors ----------------------------------------------------------------------

def from_preorder(Q: Quantale, points: Sequence[Point], leq: Callable[[Point, Point], bool],
                  name: str = "") -> QMetricSpace:
    """A preorder encoded as a Q-metric: I when related, bottom otherwise (Sigma-style)."""
    return QMetricSpace.from_function(Q, points, lambda x, y: Q.unit if leq(x, y) else Q.bottom, name)


def discrete(Q: Quantale, points: Sequence[Point], name: str = "") -> QMetricSpace:
    return from_preorder(Q, points, lambda x, y: x == y, name)


def chaotic(Q: Quantale, points: Sequence[Point], name: str = "") -> QMetricSpace:
    return from_preorder(Q, points, lambda x, y: True, name)
