"""Acceptance criteria C1 to C10.  Each test records one PASS/FAIL line, printed in the
terminal summary, and asserts its runtime bound."""

import random
import subprocess
import sys
import time

from conftest import record
from qrobust.corpus import corpus_spaces, finite_quantales, transformer_universe
from qrobust.hsmonad import check_star_preorder, check_strict_inclusion, check_topology_theorems, run_counterexample
from qrobust.quantale import EXHAUSTIVE, Sampled, check_interpolation, check_quantale_laws, check_way_below, rmeet, rplus
from qrobust.report import VerificationReport
from qrobust.topology import ROBUST, all_subsets, check_br_properties, open_family_masks, robust_spec_leq
from qrobust.topology import specialization_from_opens
from qrobust.transformer import check_canonical, check_transformer, ps_monad

from oracles import way_below_by_definition

CORPUS = corpus_spaces(random.Random(0), 5)
SMALL_FINITE = [X for X in CORPUS if len(X) <= 3 and X.quantale.is_finite]


def gate(criterion, rep_ok, seconds, bound, detail=""):
    ok = bool(rep_ok) and seconds < bound
    record(criterion, ok, f"{seconds:.2f}s (bound {bound}s) {detail}".rstrip())
    assert rep_ok, f"{criterion}: {detail}"
    assert seconds < bound, f"{criterion}: {seconds:.2f}s exceeds {bound}s"


def test_c1_quantale_laws():
    names = ["sigma", "nplus3", "nmeet3", "chain4", "sigma2", "relations2", "powerset-z2"]
    fq = finite_quantales()
    t0 = time.perf_counter()
    rep = VerificationReport()
    for n in names:
        rep.extend(check_quantale_laws(fq[n], EXHAUSTIVE).prefixed(n))
    for k, Q in enumerate((rplus(), rmeet())):
        rep.extend(check_quantale_laws(Q, Sampled(k, 10_000)).prefixed(Q.name))
    gate("C1", rep.ok, time.perf_counter() - t0, 10, f"{len(rep)} checks")


def test_c2_way_below_oracle():
    t0 = time.perf_counter()
    small = {n: Q for n, Q in finite_quantales().items() if len(Q.elements()) <= 6}
    rep = VerificationReport()
    mismatches = []
    for n, Q in small.items():
        rep.extend(check_way_below(Q, EXHAUSTIVE).prefixed(n))
        for x in Q.elements():
            for y in Q.elements():
                if Q.way_below(x, y) != way_below_by_definition(Q, x, y):
                    mismatches.append((n, x, y))
    gate("C2", rep.ok and not mismatches, time.perf_counter() - t0, 10, f"{len(small)} table quantales")


def test_c3_interpolation():
    t0 = time.perf_counter()
    rep = VerificationReport()
    for n, Q in finite_quantales().items():
        rep.extend(check_interpolation(Q, EXHAUSTIVE).prefixed(n))
    rep.extend(check_interpolation(rplus(), Sampled(0, 1000)).prefixed("rplus"))
    gate("C3", rep.ok, time.perf_counter() - t0, 60, f"{len(rep)} checks")


def test_c4_br_properties():
    t0 = time.perf_counter()
    rep = VerificationReport()
    for X in CORPUS:
        rep.extend(check_br_properties(X).prefixed(X.name))
    gate("C4", rep.ok, time.perf_counter() - t0, 30, f"{len(CORPUS)} spaces")


def test_c5_specialization():
    t0 = time.perf_counter()
    bad = []
    for X in SMALL_FINITE:
        fams, opens = open_family_masks(X, ROBUST)
        subsets = all_subsets(X)
        rel = specialization_from_opens(subsets, opens, fams)
        bad += [(X.name, A, B) for A in subsets for B in subsets if ((A, B) in rel) != robust_spec_leq(X, A, B)]
    gate("C5", not bad, time.perf_counter() - t0, 60, f"{len(SMALL_FINITE)} spaces")


def test_c6_topology_theorems():
    t0 = time.perf_counter()
    rep = VerificationReport()
    linear = 0
    for X in SMALL_FINITE:
        sub = check_topology_theorems(X)
        rep.extend(sub.prefixed(X.name))
        if X.quantale.is_linear and not X.quantale.is_trivial:
            linear += 1
            assert sub.status_of("theorems.c.linear-equal") == "pass"
    strict = check_strict_inclusion()
    rep.extend(strict)
    found = strict.status_of("strict-inclusion.search") == "pass"
    gate("C6", rep.ok and found and linear > 0, time.perf_counter() - t0, 120,
         f"{len(SMALL_FINITE)} spaces, {linear} linear, strict instance found={found}")


def test_c7_counterexample():
    t0 = time.perf_counter()
    rep = run_counterexample()
    ids = {"counterexample.star-distance-is-unit", "counterexample.p-in-every-bs",
           "counterexample.p-not-in-br", "counterexample.no-single-witness"}
    present = ids <= {e.id for e in rep.entries}
    gate("C7", rep.ok and present, time.perf_counter() - t0, 1)


def test_c8_monad_laws():
    t0 = time.perf_counter()
    rep = check_transformer(ps_monad(), transformer_universe())
    gate("C8", rep.ok, time.perf_counter() - t0, 60, f"{len(rep)} checks")


def test_c9_star_closure():
    t0 = time.perf_counter()
    rep = VerificationReport()
    for X in CORPUS:
        rep.extend(check_star_preorder(X).prefixed(X.name))
        can = check_canonical(X)
        if X.quantale.is_linear and not X.quantale.is_trivial:
            assert can.status_of("canonical.dual-closure") == "pass"
        rep.extend(can.prefixed(X.name))
    gate("C9", rep.ok, time.perf_counter() - t0, 60, f"{len(CORPUS)} spaces")


def test_c10_determinism():
    cmd = [sys.executable, "-m", "qrobust", "verify", "--suite", "all", "--seed", "0"]
    outs, times = [], []
    for _ in range(2):
        t0 = time.perf_counter()
        res = subprocess.run(cmd, capture_output=True, check=False)
        times.append(time.perf_counter() - t0)
        assert res.returncode == 0, res.stderr.decode()
        outs.append(res.stdout)
    gate("C10", outs[0] == outs[1] and res.returncode == 0, max(times), 300,
         f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")
