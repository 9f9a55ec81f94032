import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qrobust.corpus import abs_space, corpus_spaces, fig1_space, poset_space, random_space, transformer_universe
from qrobust.errors import ElementError, LawViolation, PreconditionError
from qrobust.ext import INF
from qrobust.hsmonad import eta
from qrobust.qmetric import (
    QMetricSpace,
    SpaceMap,
    all_maps,
    arrow_check,
    chaotic,
    check_equivalence_pair,
    check_qmetric,
    coequalizer,
    compose,
    coproduct,
    d_preorder_leq,
    discrete,
    equalizer,
    first_member,
    from_preorder,
    identity,
    is_separated,
    last_member,
    product,
    quotient_well_defined,
    reindex,
    separation_quotient,
    short_maps,
)
from qrobust.quantale import EXHAUSTIVE, MonoidalMap, mod_unit, nplus, rplus, sigma, three_chain
from qrobust.quantale import maps as qmaps

from oracles import equivalence_closure, triangle_failures


# 1. metric laws ------------------------------------------------------------------------------------

def test_fig1_formula_is_a_qmetric():
    X = QMetricSpace.from_function(rplus(), [F(0), F(1), F(2)], lambda x, y: y - x if x <= y else F(0))
    assert check_qmetric(X).ok


def test_abs_space_passes_and_corruption_is_caught():
    X = abs_space()
    assert check_qmetric(X).ok
    d = [list(r) for r in X.d]
    d[0][2] = F(5)
    Y = QMetricSpace(rplus(), X.points, d)
    rep = check_qmetric(Y)
    fails = rep.failures
    assert [e.id for e in fails] == ["metric.triangle"]
    assert fails[0].witness == ["0", "1", "3"]
    assert (F(0), F(1), F(3)) in triangle_failures(rplus(), Y.points, Y.dist)


def test_bad_matrices_are_rejected():
    with pytest.raises(ValueError):
        QMetricSpace(rplus(), ["a", "a"], [[F(0), F(0)], [F(0), F(0)]])
    with pytest.raises(ValueError):
        QMetricSpace(rplus(), ["a"], [[F(0), F(0)]])
    with pytest.raises(ElementError):
        QMetricSpace(sigma(), ["a"], [[F(1)]])


@pytest.mark.parametrize("X", corpus_spaces(random.Random(7), 5), ids=lambda X: X.name)
def test_corpus_spaces_are_qmetrics(X):
    assert check_qmetric(X).ok
    assert triangle_failures(X.quantale, X.points, X.dist) == []


def test_json_round_trip():
    X = fig1_space()
    Y = QMetricSpace.from_json(X.to_json())
    assert Y.points == ("0", "1", "2", "12/5", "5/2")
    assert Y.d == X.d and Y.to_json() == X.to_json()


# 2. the distance preorder ---------------------------------------------------------------------------

def test_fig1_preorder():
    X = fig1_space()
    assert d_preorder_leq(X, F(2), F(1))
    assert not d_preorder_leq(X, F(1), F(2))
    assert all(d_preorder_leq(X, x, x) for x in X.points)


def test_unknown_point_is_an_error():
    with pytest.raises(ElementError):
        d_preorder_leq(fig1_space(), F(7), F(1))


def test_sigma_poset_encoding_agrees_with_the_poset():
    order = {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c")}
    X = poset_space(["a", "b", "c"], lambda x, y: (x, y) in order)
    for x, y in itertools.product(X.points, repeat=2):
        assert d_preorder_leq(X, x, y) == ((x, y) in order)


# 3. arrows -----------------------------------------------------------------------------------------

def test_identity_is_an_isometry_and_equivalent_to_itself():
    X = fig1_space()
    i = identity(X)
    assert arrow_check("short", i) and arrow_check("isometry", i) and arrow_check("equivalent", i, i)


def test_unit_into_power_space_is_isometry():
    for X in transformer_universe():
        assert arrow_check("isometry", eta(X))


def test_shrinking_map_is_short_not_isometry():
    X = QMetricSpace(rplus(), ["a", "b"], [[F(0), F(2)], [F(2), F(0)]])
    Y = QMetricSpace(rplus(), ["a", "b"], [[F(0), F(1)], [F(1), F(0)]])
    f = SpaceMap(X, Y, ("a", "b"))
    assert arrow_check("short", f)
    v = arrow_check("isometry", f)
    assert not v and v.witness == ("a", "b")


def test_equivalence_pair_fails_on_non_equivalent_point():
    X = discrete(sigma(), ["a", "b"])
    f = SpaceMap(X, X, ("a", "a"))
    assert check_equivalence_pair(identity(X), identity(X))
    assert not check_equivalence_pair(f, identity(X))


# 4. (co)limits and their universal properties ----------------------------------------------------------

def test_sum_cross_distance_is_bottom():
    X = QMetricSpace(rplus(), ["x"], [[F(0)]])
    S, _ = coproduct([X, X])
    assert S.dist((0, "x"), (1, "x")) is INF


def test_product_distance_is_componentwise_max():
    X = fig1_space()
    P, _ = product([X, X])
    for (a, b), (c, e) in itertools.product(P.points, repeat=2):
        assert P.dist((a, b), (c, e)) == max(X.dist(a, c), X.dist(b, e))


def test_coequalizer_of_constant_maps():
    one = chaotic(sigma(), ["*"])
    Y = discrete(sigma(), ["a", "b"])
    same = SpaceMap(one, Y, ("a",))
    other = SpaceMap(one, Y, ("b",))
    C, q, _ = coequalizer(same, same)
    assert len(C) == 2 and arrow_check("short", q)
    C, q, _ = coequalizer(same, other)
    assert len(C) == 1 and arrow_check("short", q)
    assert [frozenset(c) for c in C.points] == equivalence_closure(Y.points, [("a", "b")])


def _small_spaces():
    rng = random.Random(3)
    out = list(transformer_universe())
    out += [random_space(three_chain(), 2, rng, f"chain3-{k}") for k in range(2)]
    return out


def _by_quantale(spaces):
    groups = {}
    for X in spaces:
        groups.setdefault(X.quantale, []).append(X)
    return groups.values()


def _factorisations(Z, T, pred):
    return [h for h in all_maps(Z, T) if pred(h)]


def test_product_universal_property():
    for group in _by_quantale(_small_spaces()):
        for X, Y, Z in itertools.product(group, repeat=3):
            P, (p0, p1) = product([X, Y])
            for f in short_maps(Z, X):
                for g in short_maps(Z, Y):
                    hs = _factorisations(Z, P, lambda h: compose(p0, h).images == f.images
                                         and compose(p1, h).images == g.images)
                    assert len(hs) == 1 and arrow_check("short", hs[0])


def test_sum_universal_property():
    for group in _by_quantale(_small_spaces()):
        for X, Y, Z in itertools.product(group, repeat=3):
            S, (i0, i1) = coproduct([X, Y])
            for f in short_maps(X, Z):
                for g in short_maps(Y, Z):
                    hs = _factorisations(S, Z, lambda h: compose(h, i0).images == f.images
                                         and compose(h, i1).images == g.images)
                    assert len(hs) == 1 and arrow_check("short", hs[0])


def test_equalizer_universal_property():
    for group in _by_quantale(_small_spaces()):
        for X, Y, Z in itertools.product(group, repeat=3):
            for f, g in itertools.product(short_maps(X, Y), repeat=2):
                E, inc = equalizer(f, g)
                assert check_qmetric(E).ok
                for h in short_maps(Z, X):
                    if compose(f, h).images != compose(g, h).images:
                        continue
                    ks = _factorisations(Z, E, lambda k: compose(inc, k).images == h.images)
                    assert len(ks) == 1 and arrow_check("short", ks[0])


def test_coequalizer_universal_property():
    for group in _by_quantale(_small_spaces()):
        for X, Y, Z in itertools.product(group, repeat=3):
            for f, g in itertools.product(short_maps(X, Y), repeat=2):
                C, q, _ = coequalizer(f, g)
                assert check_qmetric(C).ok and arrow_check("short", q)
                for h in short_maps(Y, Z):
                    if compose(h, f).images != compose(h, g).images:
                        continue
                    ks = _factorisations(C, Z, lambda k: compose(k, q).images == h.images)
                    assert len(ks) == 1 and arrow_check("short", ks[0])


def test_coequalizer_needs_chain_closure():
    # Y = a, b, c, e over R+; identifying b and c makes a -> {b,c} -> e shorter than d(a, e)
    Q = rplus()
    pts = ["a", "b", "c", "e"]
    far = {("a", "b"): F(1), ("c", "e"): F(1)}
    d = lambda x, y: F(0) if x == y else far.get((x, y), F(10))
    Y = QMetricSpace.from_function(Q, pts, d)
    one = QMetricSpace(Q, ["*"], [[F(0)]])
    C, q, changed = coequalizer(SpaceMap(one, Y, ("b",)), SpaceMap(one, Y, ("c",)))
    assert changed and check_qmetric(C).ok
    assert C.dist(q("a"), q("e")) == 2


def test_parallel_pair_precondition():
    X = fig1_space()
    with pytest.raises(PreconditionError):
        equalizer(identity(X), identity(abs_space()))


# 5. reindexing ------------------------------------------------------------------------------------

def test_reindex_along_ceiling_gives_integer_matrix():
    X = QMetricSpace.from_function(rplus(), [F(0), F(1, 2), F(3)], lambda x, y: abs(x - y))
    Y = reindex(qmaps.ceiling(), X)
    assert Y.quantale == nplus()
    assert check_qmetric(Y).ok
    assert all(v is INF or v.denominator == 1 for row in Y.d for v in row)
    assert Y.dist(F(0), F(1, 2)) == 1


def test_reindex_along_identity_is_same_space():
    X = abs_space()
    assert reindex(qmaps.identity(rplus()), X) == X


def test_reindex_along_non_lax_map_is_rejected():
    Q = rplus()
    halve = MonoidalMap(Q, Q, lambda x: x if x is INF else x * x, name="square")
    with pytest.raises(LawViolation):
        reindex(halve, abs_space())


def test_reindex_to_sigma_is_the_preorder_encoding():
    Q = mod_unit(three_chain())
    h = qmaps.mod_unit_to_sigma(three_chain())
    rng = random.Random(11)
    for k in range(10):
        X = random_space(Q, 3, rng)
        Y = reindex(h, X, EXHAUSTIVE)
        expected = from_preorder(sigma(), X.points, lambda x, y: d_preorder_leq(X, x, y))
        assert Y.d == expected.d


# 6. separation -------------------------------------------------------------------------------------

def test_posets_are_separated():
    assert is_separated(poset_space(["a", "b", "c"], lambda x, y: x <= y))
    assert is_separated(fig1_space())


def test_chaotic_pair_is_not_separated():
    v = is_separated(chaotic(sigma(), ["a", "b"]))
    assert not v and v.witness == ("a", "b")


def test_quotient_of_equivalent_pair():
    X = chaotic(sigma(), ["a", "b"])
    X0, r, s = separation_quotient(X)
    assert len(X0) == 1
    assert compose(r, s).images == identity(X0).images


def test_quotient_of_separated_space_is_bijective():
    X = fig1_space()
    X0, r, s = separation_quotient(X)
    assert len(X0) == len(X)
    assert arrow_check("isometry", r) and arrow_check("isometry", s)
    assert compose(s, r).images == identity(X).images


def test_two_classes_and_section_independence():
    X = from_preorder(sigma(), ["a", "a'", "b", "b'"], lambda x, y: x[0] == y[0] or (x[0], y[0]) == ("a", "b"))
    X0, r, s = separation_quotient(X, first_member)
    X1, _, _ = separation_quotient(X, last_member)
    assert len(X0) == 2 and X0 == X1
    assert quotient_well_defined(X)
    assert check_equivalence_pair(r, s)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4))
def test_separation_quotient_properties(seed, n):
    X = random_space(three_chain(), n, random.Random(seed))
    X0, r, s = separation_quotient(X)
    assert check_qmetric(X0).ok and is_separated(X0)
    assert arrow_check("isometry", r) and arrow_check("short", s)
    assert check_equivalence_pair(r, s)
    assert separation_quotient(X, last_member)[0] == X0
