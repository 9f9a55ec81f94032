"""The built-in corpus of quantales and spaces used by the suites and tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .quantale import (
    PowersetMonoid,
    ProductQuantale,
    Quantale,
    RelationQuantale,
    cyclic_monoid_table,
    lukasiewicz_chain,
    mod_unit,
    nmeet,
    nplus,
    rmeet,
    rplus,
    sigma,
    three_chain,
    trivial,
)
from .qmetric import QMetricSpace, chaotic, discrete, from_preorder, tensor_closure


def finite_quantales() -> dict[str, Quantale]:
    els, mul, unit = cyclic_monoid_table(2)
    return {
        "sigma": sigma(),
        "nplus3": nplus(3),
        "nmeet3": nmeet(3),
        "chain4": lukasiewicz_chain(4),
        "chain3": three_chain(),
        "chain3/I": mod_unit(three_chain()),
        "sigma2": ProductQuantale([sigma(), sigma()]),
        "sigma-chain3": ProductQuantale([sigma(), three_chain()]),
        "relations2": RelationQuantale([0, 1]),
        "powerset-z2": PowersetMonoid(els, mul, unit),
        "trivial": trivial(),
    }


def analytic_quantales() -> dict[str, Quantale]:
    return {
        "rplus": rplus(),
        "rmeet": rmeet(),
        "nplus": nplus(),
        "nmeet": nmeet(),
        "rplus2": ProductQuantale([rplus(), rplus()]),
    }


def all_quantales() -> dict[str, Quantale]:
    return {**finite_quantales(), **analytic_quantales()}


# -- spaces ------------------------------------------------------------------------------------

FIG1_POINTS = (Fraction(0), Fraction(1), Fraction(2), Fraction(12, 5), Fraction(5, 2))
FIG1_STAR_POINTS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 2))


def one_sided(points: Sequence[Fraction], name: str = "one-sided") -> QMetricSpace:
    """R+ valued ``d(x, y) = y - x`` if ``x <= y`` else 0."""
    return QMetricSpace.from_function(rplus(), points, lambda x, y: y - x if x <= y else Fraction(0), name)


def fig1_space() -> QMetricSpace:
    return one_sided(FIG1_POINTS, "fig1")


def fig1_star_space() -> QMetricSpace:
    return one_sided(FIG1_STAR_POINTS, "fig1-star")


def abs_space(points: Sequence = (0, 1, 3), Q: Quantale | None = None, name: str = "abs") -> QMetricSpace:
    Q = Q or rplus()
    pts = [Fraction(p) for p in points]
    return QMetricSpace.from_function(Q, pts, lambda x, y: abs(x - y), name)


def poset_space(points: Sequence[str], leq: Callable[[str, str], bool], name: str = "poset",
                Q: Quantale | None = None) -> QMetricSpace:
    return from_preorder(Q or sigma(), points, leq, name)


def random_space(Q: Quantale, n: int, rng: random.Random, name: str = "random") -> QMetricSpace:
    """A random Q-metric space: random entries with the unit joined on the diagonal,
    then closed under tensor chains so the triangle law holds."""
    d = [[Q.sample(rng) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        d[i][i] = Q.join2(d[i][i], Q.unit)
    d = tensor_closure(Q, d)
    return QMetricSpace(Q, [f"x{i}" for i in range(n)], d, name)


def sigma_strict_instance() -> QMetricSpace:
    """Three points over Sigma x Sigma where the two robust topologies differ:
    p is within the unit of A = {a, b} jointly but of neither point alone."""
    Q = ProductQuantale([sigma(), sigma()])
    z, inf = Fraction(0), Q.bottom[0]
    unit, bot = Q.unit, Q.bottom
    pts = ("a", "b", "p")
    d = {("a", "p"): (z, inf), ("b", "p"): (inf, z)}
    return QMetricSpace.from_function(
        Q, pts, lambda x, y: unit if x == y else d.get((x, y), bot), "sigma2-split")


def corpus_spaces(rng: random.Random | None = None, random_count: int = 4) -> list[QMetricSpace]:
    """Named spaces; the random ones are drawn from ``rng`` (seeded 0 by default)."""
    rng = rng or random.Random(0)
    S = sigma()
    spaces = [
        poset_space(["a", "b", "c"], lambda x, y: x <= y, "sigma-chain"),
        poset_space(["a", "b", "c"], lambda x, y: x == y or x == "a", "sigma-vee"),
        chaotic(S, ["a", "b"], "sigma-chaotic"),
        discrete(S, ["a", "b"], "sigma-discrete"),
        QMetricSpace.from_function(nmeet(3), [0, 1, 2], lambda x, y: Fraction(0 if x == y else max(x, y)),
                                   "nmeet3-ultra"),
        QMetricSpace.from_function(nplus(3), [0, 1, 2], lambda x, y: Fraction(abs(x - y)), "nplus3-line"),
        sigma_strict_instance(),
        fig1_space(),
        fig1_star_space(),
        abs_space(),
    ]
    from .hsmonad import counterexample_space
    spaces.append(counterexample_space()[0])
    finite = finite_quantales()
    pool = ["chain4", "chain3", "sigma2", "nmeet3", "relations2"]
    for k in range(random_count):
        qname = pool[k % len(pool)]
        spaces.append(random_space(finite[qname], 3, rng, f"random-{qname}-{k}"))
    return spaces


def transformer_universe() -> list[QMetricSpace]:
    """Spaces over Sigma with at most two points, closed at one application of P_S."""
    S = sigma()
    return [
        chaotic(S, ["a"], "one"),
        discrete(S, ["a", "b"], "discrete2"),
        from_preorder(S, ["a", "b"], lambda x, y: x <= y, "chain2"),
        chaotic(S, ["a", "b"], "chaotic2"),
    ]
