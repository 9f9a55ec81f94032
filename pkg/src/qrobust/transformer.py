"""Po-enriched monads over a finite universe of spaces, their law checkers, and
the separation monad transformer."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import PreconditionError
from .hsmonad import eta as ps_eta, kleisli_extend, ps_space, star_closure
from .qmetric import (
    QMetricSpace,
    SpaceMap,
    arrow_check,
    compose,
    first_member,
    identity,
    is_separated,
    last_member,
    separation_quotient,
    short_maps,
)
from .report import VerificationReport, Verdict, YES, jsonable
from .topology import all_subsets, closure

MAX_SOURCE = 2
MAX_IMAGE = 4


@dataclass(eq=False)
class MonadInstance:
    """A monad given extensionally: object map, unit family and Kleisli extension."""

    name: str
    obj: Callable[[QMetricSpace], QMetricSpace]
    unit: Callable[[QMetricSpace], SpaceMap]
    extend: Callable[[SpaceMap], SpaceMap]
    _cache: dict = field(default_factory=dict, repr=False)

    def M(self, X: QMetricSpace) -> QMetricSpace:
        if X not in self._cache:
            self._cache[X] = self.obj(X)
        return self._cache[X]


@dataclass(eq=False)
class MonadMapInstance:
    source: MonadInstance
    target: MonadInstance
    theta: Callable[[QMetricSpace], SpaceMap]
    name: str = "theta"


# -- shipped instances ----------------------------------------------------------------------

def ps_monad() -> MonadInstance:
    spaces: dict = {}

    def obj(X):
        PX = ps_space(X)
        spaces[PX] = PX
        return PX

    M = MonadInstance("P_S", obj, lambda X: ps_eta(X, M.M(X)),
                      lambda f: kleisli_extend(f, M.M(f.source), check=False))
    return M


def identity_monad() -> MonadInstance:
    return MonadInstance("Id", lambda X: X, identity, lambda f: f)


def corrupted_ps_monad() -> MonadInstance:
    """P_S with extension by intersection instead of union (a failing fixture)."""
    M = ps_monad()

    def extend(f: SpaceMap) -> SpaceMap:
        PX = M.M(f.source)
        return SpaceMap.from_function(
            PX, f.target, lambda A: frozenset.intersection(*(f(x) for x in A)) if A else frozenset(), "ext-meet")

    return MonadInstance("P_S-meet", M.obj, M.unit, extend)


def identity_monad_map(M: MonadInstance) -> MonadMapInstance:
    return MonadMapInstance(M, M, lambda X: identity(M.M(X)), "id")


# -- law checks ------------------------------------------------------------------------------------

def _fmt_map(f: SpaceMap) -> list:
    return [jsonable(y) for y in f.images]


def same_map(f: SpaceMap, g: SpaceMap, literal: bool = False) -> Verdict:
    """Pointwise equality, or pointwise equivalence when the codomain is not separated
    (unless ``literal`` is requested)."""
    if f.source != g.source or f.target != g.target:
        return Verdict(False, "different domains")
    if f.images == g.images:
        return YES
    if literal or is_separated(f.target):
        x = next(x for x, a, b in zip(f.source.points, f.images, g.images) if a != b)
        return Verdict(False, jsonable(x))
    return arrow_check("equivalent", f, g)


def _universe_maps(M: MonadInstance, universe: Sequence[QMetricSpace], max_source: int, max_image: int):
    for X in universe:
        MX = M.M(X)
        if not isinstance(MX, QMetricSpace) or MX.quantale != X.quantale:
            raise PreconditionError(f"{M.name} does not send {X.name or X!r} to a space over the same quantale")
        if len(X) > max_source or len(MX) > max_image:
            raise PreconditionError(f"universe space too large to enumerate maps: {len(X)} -> {len(MX)}")
    return {(X, Y): short_maps(X, M.M(Y)) for X in universe for Y in universe}


def _pick(seq, mode, rng):
    if mode is None or len(seq) <= mode:
        return seq
    return rng.sample(seq, mode)


def check_monad_laws(M: MonadInstance, universe: Sequence[QMetricSpace], samples: int | None = None,
                     seed: int = 0, literal: bool = False,
                     max_source: int = MAX_SOURCE, max_image: int = MAX_IMAGE) -> VerificationReport:
    """The three monad equations, shortness of units and extensions, and monotonicity
    of extension.  ``samples`` bounds the maps tried per hom-set (``None``: all)."""
    rng = random.Random(seed)
    maps = _universe_maps(M, universe, max_source, max_image)
    maps = {k: _pick(v, samples, rng) for k, v in maps.items()}
    rep = VerificationReport()
    ext: dict = {}

    def star(f):
        key = (f.source, f.target, f.images)
        if key not in ext:
            ext[key] = M.extend(f)
        return ext[key]

    w = next((X.name or jsonable(X.points) for X in universe if not arrow_check("short", M.unit(X))), None)
    rep.add("unit.short", "transformer.monad", w is None, w)
    w = next((X.name or jsonable(X.points) for X in universe
              if not same_map(star(M.unit(X)), identity(M.M(X)), literal)), None)
    rep.add("law.unit-extension", "transformer.monad", w is None, w)

    w1 = w2 = w3 = None
    for (X, Y), fs in maps.items():
        for f in fs:
            fs_ = star(f)
            if w1 is None and not arrow_check("short", fs_):
                w1 = _fmt_map(f)
            if w2 is None and not same_map(compose(fs_, M.unit(X)), f, literal):
                w2 = _fmt_map(f)
    rep.add("extension.short", "transformer.monad", w1 is None, w1)
    rep.add("law.extension-unit", "transformer.monad", w2 is None, w2)

    for X, Y, Z in itertools.product(universe, repeat=3):
        for f in maps[X, Y]:
            for g in maps[Y, Z]:
                lhs = compose(star(g), star(f))
                rhs = star(compose(star(g), f))
                v = same_map(lhs, rhs, literal)
                if not v:
                    w3 = {"f": _fmt_map(f), "g": _fmt_map(g), "at": v.witness}
                    break
            if w3:
                break
        if w3:
            break
    rep.add("law.associativity", "transformer.monad", w3 is None, w3)

    w = None
    for (X, Y), fs in maps.items():
        for f, g in itertools.product(fs, repeat=2):
            if arrow_check("hom_leq", f, g) and not arrow_check("hom_leq", star(f), star(g)):
                w = [_fmt_map(f), _fmt_map(g)]
                break
        if w:
            break
    rep.add("enrichment.monotone", "transformer.monad", w is None, w)
    return rep


def check_monad_map(theta: MonadMapInstance, universe: Sequence[QMetricSpace], samples: int | None = None,
                    seed: int = 0, literal: bool = False,
                    max_source: int = MAX_SOURCE, max_image: int = MAX_IMAGE) -> VerificationReport:
    """``theta o eta = eta'`` and ``theta_Y o f* = (theta_Y o f)*' o theta_X``."""
    M, N = theta.source, theta.target
    rng = random.Random(seed)
    maps = _universe_maps(M, universe, max_source, max_image)
    maps = {k: _pick(v, samples, rng) for k, v in maps.items()}
    rep = VerificationReport()
    w = next((X.name or jsonable(X.points) for X in universe if not arrow_check("short", theta.theta(X))), None)
    rep.add("map.short", "transformer.monad-map", w is None, w)
    w = next((X.name or jsonable(X.points) for X in universe
              if not same_map(compose(theta.theta(X), M.unit(X)), N.unit(X), literal)), None)
    rep.add("map.unit", "transformer.monad-map", w is None, w)
    w = None
    for (X, Y), fs in maps.items():
        tX, tY = theta.theta(X), theta.theta(Y)
        for f in fs:
            lhs = compose(tY, M.extend(f))
            rhs = compose(N.extend(compose(tY, f)), tX)
            v = same_map(lhs, rhs, literal)
            if not v:
                w = {"f": _fmt_map(f), "at": v.witness}
                break
        if w:
            break
    rep.add("map.extension", "transformer.monad-map", w is None, w)
    return rep


# -- the separation transformer ------------------------------------------------------------------

def separation_transform(M: MonadInstance, choose: Callable[[tuple], object] = first_member):
    """``(M', in_T)`` with ``M'X = R(MX)``, ``eta' = r o eta`` and
    ``f*' = r o (s o f)* o s``, built from :func:`separation_quotient` with section ``choose``."""
    quot: dict = {}
    back: dict = {}

    def R(X):
        MX = M.M(X)
        if MX not in quot:
            X0, r, s = separation_quotient(MX, choose)
            quot[MX] = (X0, r, s)
            back[X0] = MX
        return quot[MX]

    def obj(X):
        return R(X)[0]

    def unit(X):
        return compose(R(X)[1], M.unit(X))

    def extend(f: SpaceMap) -> SpaceMap:
        MY = back.get(f.target)
        if MY is None:
            raise PreconditionError("extension needs a map into a transformed object")
        _, rY, sY = quot[MY]
        _, _, sX = R(f.source)
        return compose(rY, M.extend(compose(sY, f)), sX)

    Mp = MonadInstance(f"T({M.name})", obj, unit, extend)
    in_t = MonadMapInstance(M, Mp, lambda X: R(X)[1], "in_T")
    return Mp, in_t


def check_section_independence(M: MonadInstance, universe: Sequence[QMetricSpace],
                               sections: Sequence[Callable] = (first_member, last_member)) -> VerificationReport:
    """Transformed units and extensions coincide pointwise for every pair of sections."""
    rep = VerificationReport()
    built = [separation_transform(M, c)[0] for c in sections]
    base = built[0]
    w = None
    for other in built[1:]:
        for X in universe:
            if base.M(X) != other.M(X) or base.unit(X).images != other.unit(X).images:
                w = {"space": X.name or jsonable(X.points), "part": "unit"}
                break
        if w:
            break
        for X, Y in itertools.product(universe, repeat=2):
            base.M(X), other.M(X)
            for f in short_maps(X, base.M(Y)):
                if base.extend(f).images != other.extend(f).images:
                    w = {"f": _fmt_map(f), "part": "extension"}
                    break
            if w:
                break
        if w:
            break
    rep.add("sections.independent", "transformer.sections", w is None, w)
    w = next((X.name or jsonable(X.points) for X in universe if not is_separated(base.M(X))), None)
    rep.add("sections.separated-images", "transformer.sections", w is None, w)
    return rep


def check_transformer(M: MonadInstance, universe: Sequence[QMetricSpace]) -> VerificationReport:
    """M up to equivalence, T(M) literally, in_T both ways, and section independence."""
    rep = VerificationReport()
    rep.extend(check_monad_laws(M, universe).prefixed(M.name))
    Mp, in_t = separation_transform(M)
    rep.extend(check_monad_laws(Mp, universe, literal=True).prefixed(Mp.name))
    rep.extend(check_monad_map(in_t, universe, literal=True).prefixed("in_T"))
    rep.extend(check_section_independence(M, universe))
    return rep


# -- canonical representatives ---------------------------------------------------------------------

def canonical_representative(X: QMetricSpace, A) -> frozenset:
    return star_closure(X, A)


def check_canonical(X: QMetricSpace) -> VerificationReport:
    """The *-closure is d_S-equivalent to A; for linear non-trivial quantales it is the
    dual closure, otherwise any difference is reported."""
    Q = X.quantale
    PX = ps_space(X)
    rep = VerificationReport()
    subs = all_subsets(X)
    from .qmetric import d_equivalent
    w = next((sorted(jsonable(A)) for A in subs if not d_equivalent(PX, A, canonical_representative(X, A))), None)
    rep.add("canonical.equivalent", "transformer.canonical", w is None, w)
    diffs = [A for A in subs if canonical_representative(X, A) != closure(X, A, dual=True)]
    if Q.is_linear and not Q.is_trivial:
        rep.add("canonical.dual-closure", "transformer.canonical", not diffs,
                diffs and sorted(jsonable(diffs[0])))
    elif diffs:
        A = diffs[0]
        rep.note("canonical.discrepancy", "transformer.canonical",
                 {"A": sorted(jsonable(A)), "star": sorted(jsonable(star_closure(X, A))),
                  "dual-closure": sorted(jsonable(closure(X, A, dual=True)))})
    return rep
