import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qrobust.corpus import corpus_spaces, fig1_space, poset_space, random_space
from qrobust.errors import GuardError, PreconditionError
from qrobust.qmetric import QMetricSpace, SpaceMap, arrow_check, chaotic, discrete, identity, short_maps
from qrobust.quantale import lukasiewicz_chain, rplus, sigma
from qrobust.topology import (
    BALL,
    DUAL,
    LITERAL,
    REDUCED,
    ROBUST,
    STAR_ROBUST,
    all_subsets,
    b_r,
    ball,
    check_br_properties,
    check_closure,
    check_continuity,
    check_open_balls,
    check_reductions,
    check_specialization,
    closure,
    enumerate_topology,
    flatten,
    is_continuous,
    is_open,
    open_family_masks,
    radii,
    robust_open,
    robust_spec_leq,
    specialization_from_opens,
    union_of_balls,
)

from oracles import (
    br_by_definition,
    closure_by_definition,
    families,
    finite_radii,
    powerset,
    robust_open_by_definition,
    up_sets,
)

CORPUS = corpus_spaces(random.Random(5), 5)
SMALL_FINITE = [X for X in CORPUS if len(X) <= 3 and X.quantale.is_finite]
h = F(1, 2)


def fig1_subset(*xs):
    return frozenset(F(x) for x in xs)


# 1. balls and openness ------------------------------------------------------------------------------

def test_fig1_ball():
    assert ball(fig1_space(), F(1), h) == fig1_subset(0, 1)


def test_radius_must_be_way_below_unit():
    with pytest.raises(PreconditionError):
        ball(fig1_space(), F(1), F(0))


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_balls_contain_their_centre_and_are_open(X):
    for x in X.points:
        for r in radii(X):
            assert x in ball(X, x, r)
            assert is_open(X, ball(X, x, r))
    assert check_open_balls(X).ok and check_open_balls(X, dual=True).ok


def test_fig1_openness():
    X = fig1_space()
    assert is_open(X, X.points)
    v = is_open(X, fig1_subset(2))
    assert not v and v.witness == F(2)


# 2. closure -----------------------------------------------------------------------------------------

def test_fig1_dual_closure():
    assert closure(fig1_space(), fig1_subset(1, 2), dual=True) == fig1_subset(0, 1, 2)


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_closure_matches_definition(X):
    rs = radii(X)
    for A in all_subsets(X):
        for dual in (False, True):
            assert closure(X, A, dual) == closure_by_definition(X, A, rs, dual)
            assert closure(X, A, dual, LITERAL) == closure(X, A, dual)
    assert check_closure(X).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.booleans())
def test_closure_is_a_closure_operator(seed, n, dual):
    rng = random.Random(seed)
    X = random_space(lukasiewicz_chain(4), n, rng)
    subsets = all_subsets(X)
    for A in subsets:
        c = closure(X, A, dual)
        assert A <= c and closure(X, c, dual) == c
        for B in subsets:
            if A <= B:
                assert c <= closure(X, B, dual)


# 3. continuity -------------------------------------------------------------------------------------

def test_identity_and_constants_are_continuous():
    X = fig1_space()
    assert is_continuous(identity(X), LITERAL)
    for c in X.points:
        assert is_continuous(SpaceMap(X, X, tuple(c for _ in X.points)), LITERAL)


@pytest.mark.parametrize("X", [X for X in CORPUS if len(X) <= 3], ids=lambda X: X.name)
def test_short_maps_are_continuous(X):
    for f in short_maps(X, X):
        assert is_continuous(f, LITERAL) and is_continuous(f, REDUCED)
    assert check_continuity(X, X).ok


def test_non_short_continuous_map():
    X = QMetricSpace(rplus(), ["a", "b"], [[F(0), F(1)], [F(1), F(0)]])
    Y = QMetricSpace(rplus(), ["a", "b"], [[F(0), F(5)], [F(5), F(0)]])
    f = SpaceMap(X, Y, ("a", "b"))
    assert not arrow_check("short", f)
    assert is_continuous(f, LITERAL)


# 4. B_R and flattening ---------------------------------------------------------------------------------

def test_fig1_br_and_flatten():
    X = fig1_space()
    A = fig1_subset(1, 2)
    expected = frozenset({F(0), F(1), F(2), F(12, 5)})
    assert b_r(X, A, h) == expected
    assert flatten(X, A, h) == expected


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_br_matches_definition_and_contains_a(X):
    for A in all_subsets(X):
        for r in radii(X):
            B = b_r(X, A, r)
            assert B == br_by_definition(X, A, r)
            assert A <= B


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_br_properties(X):
    rep = check_br_properties(X)
    assert rep.ok, rep.failures


# 5. robust topology ------------------------------------------------------------------------------

def test_trivial_families_are_robust_open():
    X = fig1_space()
    assert robust_open(X, all_subsets(X))
    assert robust_open(X, [])


@pytest.mark.parametrize("X", SMALL_FINITE, ids=lambda X: X.name)
def test_union_of_powersets_of_balls_is_robust_open(X):
    rs = radii(X)
    Q = X.quantale
    for A in all_subsets(X):
        U = set()
        for d1, d2 in itertools.product(rs, repeat=2):
            if Q.way_below(d1, d2):
                U.update(powerset(b_r(X, A, d2)))
        assert robust_open(X, U, LITERAL) and robust_open(X, U)


def test_fig1_specialization_examples():
    X = fig1_space()
    A = fig1_subset(1, 2)
    assert robust_spec_leq(X, A, fig1_subset(0))
    assert not robust_spec_leq(X, A, frozenset({F(5, 2)}))


def test_robust_topology_of_two_point_discrete_sigma_space():
    X = discrete(sigma(), ["a", "b"])
    opens = enumerate_topology(X, ROBUST)
    oracle = [U for U in families(X)
              if robust_open_by_definition(X, U, finite_radii(X.quantale), br_by_definition)]
    assert len(opens) == len(oracle) == 6
    assert {frozenset(U) for U in opens} == set(oracle)


@pytest.mark.parametrize("X", SMALL_FINITE, ids=lambda X: X.name)
def test_robust_topology_matches_definition(X):
    oracle = {U for U in families(X)
              if robust_open_by_definition(X, U, finite_radii(X.quantale), br_by_definition)}
    assert {frozenset(U) for U in enumerate_topology(X, ROBUST)} == oracle
    assert {frozenset(U) for U in enumerate_topology(X, ROBUST, REDUCED)} == oracle


@pytest.mark.parametrize("X", SMALL_FINITE, ids=lambda X: X.name)
def test_specialization_preorder_matches_enumeration(X):
    fams, opens = open_family_masks(X, ROBUST)
    subsets = all_subsets(X)
    rel = specialization_from_opens(subsets, opens, fams)
    for A in subsets:
        for B in subsets:
            assert ((A, B) in rel) == robust_spec_leq(X, A, B)
    assert check_specialization(X).ok


# 6. enumeration -------------------------------------------------------------------------------------

def test_one_point_ball_topology():
    X = chaotic(sigma(), ["x"])
    assert enumerate_topology(X, BALL) == [frozenset(), frozenset({"x"})]


def test_two_point_poset_ball_topology_is_up_sets():
    X = poset_space(["a", "b"], lambda x, y: x <= y)
    leq = lambda x, y: x <= y
    assert set(enumerate_topology(X, BALL)) == set(up_sets(X.points, leq))
    assert set(enumerate_topology(X, DUAL)) == set(up_sets(X.points, lambda x, y: leq(y, x)))


def test_family_enumeration_guard():
    X = discrete(sigma(), list("abcde"))
    with pytest.raises(GuardError):
        enumerate_topology(X, ROBUST)
    with pytest.raises(GuardError):
        enumerate_topology(fig1_space(), STAR_ROBUST, max_carrier=5)


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_literal_and_reduced_forms_agree(X):
    rep = check_reductions(X)
    assert rep.ok, rep.failures
    for O in all_subsets(X):
        assert bool(is_open(X, O, False, LITERAL)) == bool(is_open(X, O))
        if is_open(X, O):
            assert union_of_balls(X, O)
