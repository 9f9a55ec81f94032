import itertools
import random
from fractions import Fraction as F

import pytest

from qrobust.corpus import abs_space, corpus_spaces, fig1_star_space, poset_space, transformer_universe
from qrobust.errors import GuardError, PreconditionError
from qrobust.ext import INF
from qrobust.hsmonad import (
    b_s,
    check_bs_properties,
    check_finite_subset,
    check_ps_monad_structure,
    check_star_preorder,
    check_topology_theorems,
    counterexample_space,
    d_s,
    eta,
    kleisli_extend,
    ps_space,
    run_counterexample,
    search_strict_inclusion,
    star_closure,
    star_robust_open,
)
from qrobust.qmetric import SpaceMap, arrow_check, chaotic, check_qmetric, compose, identity, short_maps
from qrobust.quantale import sigma
from qrobust.topology import LITERAL, all_subsets, b_r, closure, radii, robust_open

from oracles import br_by_definition, finite_radii, hausdorff_smyth, powerset, robust_open_by_definition

CORPUS = corpus_spaces(random.Random(5), 5)
SMALL_FINITE = [X for X in CORPUS if len(X) <= 3 and X.quantale.is_finite]


def bs_by_definition(X, A, delta):
    Q = X.quantale
    return frozenset(y for y in X.points if Q.way_below(delta, Q.join(X.dist(x, y) for x in A)))


# 1. the Hausdorff-Smyth distance ---------------------------------------------------------------------

def test_abs_example():
    X = abs_space()
    assert d_s(X, [F(0), F(3)], [F(1)]) == 1


def test_poset_example():
    X = poset_space(["a", "b"], lambda x, y: x <= y)
    assert d_s(X, ["a"], ["b"]) == X.quantale.top


def test_empty_set_conventions():
    X = chaotic(sigma(), ["x"])
    PX = ps_space(X)
    x, empty = frozenset({"x"}), frozenset()
    assert len(PX) == 2
    assert PX.dist(x, empty) == F(0)
    assert PX.dist(empty, x) is INF


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_ds_matches_definition_and_is_a_qmetric(X):
    PX = ps_space(X)
    for A, B in itertools.product(PX.points, repeat=2):
        assert PX.dist(A, B) == hausdorff_smyth(X, A, B)
    assert check_qmetric(PX).ok
    assert arrow_check("isometry", eta(X, PX))


def test_ps_guard():
    with pytest.raises(GuardError):
        ps_space(chaotic(sigma(), list("abcdef")))


# 2. the monad structure -----------------------------------------------------------------------------

UNIVERSE = transformer_universe()


@pytest.mark.parametrize("X", UNIVERSE, ids=lambda X: X.name)
def test_unit_extension_is_identity(X):
    PX = ps_space(X)
    assert kleisli_extend(eta(X, PX), PX).images == identity(PX).images


def test_extension_laws_exhaustively():
    for X, Y, Z in itertools.product(UNIVERSE, repeat=3):
        PX, PY, PZ = ps_space(X), ps_space(Y), ps_space(Z)
        fs = short_maps(X, PY)
        gs = short_maps(Y, PZ)
        for f in fs:
            fe = kleisli_extend(f, PX)
            assert arrow_check("short", fe)
            assert compose(fe, eta(X, PX)).images == f.images
            for g in gs:
                ge = kleisli_extend(g, PY)
                lhs = compose(ge, fe)
                rhs = kleisli_extend(compose(ge, f), PX)
                assert lhs.images == rhs.images


def test_extension_requires_short_map():
    X = poset_space(["a", "b"], lambda x, y: x <= y)
    PX = ps_space(X)
    f = SpaceMap(X, PX, (frozenset({"b"}), frozenset({"a"})))
    with pytest.raises(PreconditionError):
        kleisli_extend(f, PX)


@pytest.mark.parametrize("X", UNIVERSE, ids=lambda X: X.name)
def test_monad_structure_suite(X):
    assert check_ps_monad_structure(X).ok


# 3. *-closure ----------------------------------------------------------------------------------------

def test_star_closure_on_poset_is_up_set():
    order = lambda x, y: x == y or x == "a"
    X = poset_space(["a", "b", "c"], order)
    for A in all_subsets(X):
        assert star_closure(X, A) == frozenset(y for y in X.points if any(order(x, y) for x in A))


def test_fig1_star_closure():
    X = fig1_star_space()
    assert star_closure(X, [F(1), F(2)]) == frozenset({F(0), F(1, 2), F(1), F(2)})


@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_star_preorder_characterisations(X):
    rep = check_star_preorder(X)
    assert rep.ok, rep.failures
    for A, B in itertools.product(all_subsets(X), repeat=2):
        leq = X.quantale.leq(X.quantale.unit, d_s(X, A, B))
        assert leq == (B <= star_closure(X, A))


def test_chaotic_space_has_distinct_equivalent_subsets():
    rep = check_star_preorder(chaotic(sigma(), ["a", "b"]))
    note = rep["star.equivalent-distinct"]
    assert note.status == "reported" and note.witness is not None


# 4. B_S ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("X", CORPUS, ids=lambda X: X.name)
def test_bs_contains_br_and_reaches_delta(X):
    Q = X.quantale
    for A in all_subsets(X):
        for r in radii(X):
            B = b_s(X, A, r)
            assert B == bs_by_definition(X, A, r)
            assert b_r(X, A, r) <= B
            assert Q.leq(r, d_s(X, A, B))
    assert check_bs_properties(X).ok


def test_counterexample_facts():
    X, A, p = counterexample_space()
    Q = X.quantale
    assert d_s(X, A, [p]) == (0, 0) == Q.unit
    assert not Q.way_below((F(1), F(1)), X.dist((0, 2), p))
    assert p in b_s(X, A, (F(3), F(3)))
    assert p not in b_r(X, A, (F(1), F(1)))


# 5. topologies --------------------------------------------------------------------------------------

@pytest.mark.parametrize("X", SMALL_FINITE, ids=lambda X: X.name)
def test_topology_theorems(X):
    rep = check_topology_theorems(X)
    assert rep.ok, rep.failures
    Q = X.quantale
    if Q.is_linear and not Q.is_trivial:
        assert rep.status_of("theorems.c.linear-equal") == "pass"
    assert check_finite_subset(X).ok


@pytest.mark.parametrize("X", SMALL_FINITE, ids=lambda X: X.name)
def test_star_robust_opens_match_definition(X):
    rs = finite_radii(X.quantale)
    for U in [u for u in powerset(powerset(X.points))][:: max(1, 2 ** (2 ** len(X)) // 256)]:
        expected = robust_open_by_definition(X, U, rs, bs_by_definition)
        assert bool(star_robust_open(X, U, LITERAL)) == expected
        if expected:
            assert robust_open(X, U, LITERAL)


def test_strict_inclusion_instance():
    X, fam, member = search_strict_inclusion()
    U = {frozenset(A) for A in fam}
    rs = finite_radii(X.quantale)
    assert robust_open_by_definition(X, U, rs, br_by_definition)
    assert not robust_open_by_definition(X, U, rs, bs_by_definition)
    assert any(star_closure(X, A) != closure(X, A, dual=True) for A in all_subsets(X))


def test_counterexample_report():
    rep = run_counterexample()
    assert rep.ok
    assert {e.id for e in rep.entries} >= {
        "counterexample.star-distance-is-unit",
        "counterexample.p-in-every-bs",
        "counterexample.p-not-in-br",
        "counterexample.no-single-witness",
        "counterexample.family-robust-open",
        "counterexample.family-not-star-open",
    }
