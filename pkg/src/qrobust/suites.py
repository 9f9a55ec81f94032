"""Suite runner: every check of the package over the built-in corpus or user inputs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .corpus import all_quantales, corpus_spaces, transformer_universe
from .errors import GuardError, QRobustError
from .hsmonad import (
    PS_MAX,
    check_bs_properties,
    check_ps_monad_structure,
    check_star_preorder,
    check_strict_inclusion,
    check_topology_theorems,
    run_counterexample,
)
from .quantale import (
    EXHAUSTIVE,
    Quantale,
    Sampled,
    check_adjoint_pair,
    check_interpolation,
    check_monoidal_map,
    check_quantale_laws,
    check_way_below,
    lukasiewicz_chain,
    three_chain,
)
from .quantale import maps as qmaps
from .qmetric import (
    QMetricSpace,
    arrow_check,
    check_equivalence_pair,
    check_qmetric,
    coequalizer,
    coproduct,
    equalizer,
    is_separated,
    product,
    quotient_well_defined,
    reindex,
    separation_quotient,
    short_maps,
)
from .report import VerificationReport
from .topology import FAMILY_MAX, check_continuity, check_space_topology
from .transformer import check_canonical, check_transformer, ps_monad

SUITES = ("laws", "metq", "topology", "hsmonad", "transformer")
HARD_FAMILY_MAX = FAMILY_MAX
HARD_PS_MAX = PS_MAX


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    seed: int = 0
    samples: int = 10_000
    interpolation_samples: int = 1_000
    max_carrier: int = PS_MAX
    family_max: int = 3
    random_spaces: int = 5
    quantales: tuple = ()
    spaces: tuple = ()

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from all, {', '.join(SUITES)}")
        if not 1 <= self.max_carrier <= HARD_PS_MAX:
            raise ValueError(f"max carrier must be between 1 and {HARD_PS_MAX}")
        if not 1 <= self.family_max <= HARD_FAMILY_MAX:
            raise ValueError(f"family enumeration bound must be between 1 and {HARD_FAMILY_MAX}")
        if self.samples < 1 or self.interpolation_samples < 1:
            raise ValueError("sample counts must be positive")

    @property
    def selected(self) -> tuple:
        return SUITES if self.suite == "all" else (self.suite,)


def _guarded(rep: VerificationReport, id: str, fn, *args, **kwargs) -> None:
    """Run one check; guard or precondition errors become a failing entry instead of aborting."""
    try:
        rep.extend(fn(*args, **kwargs).prefixed(id))
    except GuardError as exc:
        rep.add(f"{id}/guard", "suite.guard", False, str(exc))
    except QRobustError as exc:
        rep.add(f"{id}/error", "suite.guard", False, f"{type(exc).__name__}: {exc}")


# -- laws ------------------------------------------------------------------------------------

def _laws_for(rep, name: str, Q: Quantale, cfg: SuiteConfig, rng: random.Random) -> None:
    mode = EXHAUSTIVE if Q.is_finite else Sampled(rng.randrange(2**32), cfg.samples)
    _guarded(rep, f"laws/{name}", check_quantale_laws, Q, mode)
    _guarded(rep, f"way-below/{name}", check_way_below, Q, mode)
    imode = EXHAUSTIVE if Q.is_finite else Sampled(rng.randrange(2**32), cfg.interpolation_samples)
    _guarded(rep, f"interpolation/{name}", check_interpolation, Q, imode)


def _maps_suite(rep, cfg: SuiteConfig, rng: random.Random) -> None:
    def mode_for(h):
        return EXHAUSTIVE if h.source.is_finite else Sampled(rng.randrange(2**32), min(cfg.samples, 2000))

    chain4, chain3 = lukasiewicz_chain(4), three_chain()
    maps = [qmaps.top_map(chain3), qmaps.bang(chain3), qmaps.include_mod_unit(chain3), qmaps.meet_unit(chain3),
            qmaps.meet_unit(chain4), qmaps.sigma_to_mod_unit(chain3), qmaps.mod_unit_to_sigma(chain3),
            qmaps.nat_inclusion(), qmaps.ceiling(), qmaps.rmeet_to_rplus()]
    for h in maps:
        _guarded(rep, f"maps/{h.name}:{h.source.name}->{h.target.name}", check_monoidal_map, h, mode_for(h))
    pairs = [
        (qmaps.include_mod_unit(chain3), qmaps.meet_unit(chain3), "f-|g"),
        (qmaps.sigma_to_mod_unit(chain3), qmaps.mod_unit_to_sigma(chain3), None),
        (qmaps.top_map(chain3), qmaps.bang(chain3), "g-|f"),
        (qmaps.nat_inclusion(), qmaps.ceiling(), None),
        (qmaps.identity(chain4), qmaps.identity(chain4), "equivalence"),
    ]
    for f, g, expect in pairs:
        mode = EXHAUSTIVE if f.source.is_finite and g.source.is_finite else Sampled(rng.randrange(2**32), 500)
        _guarded(rep, f"adjunction/{f.name},{g.name}", check_adjoint_pair, f, g, mode, expect)


def laws_suite(cfg: SuiteConfig, rng: random.Random, quantales: dict | None = None) -> VerificationReport:
    rep = VerificationReport()
    for name, Q in (quantales or all_quantales()).items():
        _laws_for(rep, name, Q, cfg, rng)
    if quantales is None:
        _maps_suite(rep, cfg, rng)
    return rep


# -- Q-metric spaces -------------------------------------------------------------------------

def _space_metric_checks(X: QMetricSpace) -> VerificationReport:
    rep = VerificationReport()
    rep.extend(check_qmetric(X))
    X0, r, s = separation_quotient(X)
    rep.verdict("separation.separated", "metric.separation-quotient", is_separated(X0))
    rep.verdict("separation.r-isometry", "metric.separation-quotient", arrow_check("isometry", r))
    rep.verdict("separation.s-short", "metric.separation-quotient", arrow_check("short", s))
    rep.verdict("separation.equivalence", "metric.separation-quotient", check_equivalence_pair(r, s))
    rep.verdict("separation.well-defined", "metric.separation-quotient", quotient_well_defined(X))
    return rep


def _limits_checks(X: QMetricSpace, Y: QMetricSpace) -> VerificationReport:
    rep = VerificationReport()
    P, projs = product([X, Y])
    S, injs = coproduct([X, Y])
    rep.extend(check_qmetric(P).prefixed("product"))
    rep.extend(check_qmetric(S).prefixed("sum"))
    rep.add("product.projections-short", "metric.limits", all(arrow_check("short", p) for p in projs))
    rep.add("sum.injections-short", "metric.limits", all(arrow_check("short", i) for i in injs))
    fs = short_maps(X, Y)[:6]
    bad = None
    for f in fs:
        for g in fs:
            E, inc = equalizer(f, g)
            C, q, _ = coequalizer(f, g)
            if not (check_qmetric(E).ok and check_qmetric(C).ok and arrow_check("short", inc)
                    and arrow_check("short", q)):
                bad = [list(f.images), list(g.images)]
                break
        if bad:
            break
    rep.add("equalizer-coequalizer.short", "metric.limits", bad is None, bad)
    return rep


def _reindex_checks(X: QMetricSpace) -> VerificationReport:
    rep = VerificationReport()
    name = X.quantale.name
    lax = {"rplus": [qmaps.ceiling(), qmaps.identity(X.quantale)],
           "rmeet": [qmaps.rmeet_to_rplus()]}.get(name, [qmaps.identity(X.quantale)])
    for h in lax:
        Y = reindex(h, X)
        rep.add(f"reindex.{h.name}", "metric.reindex", check_qmetric(Y).ok)
    return rep


def metq_suite(cfg: SuiteConfig, spaces: Sequence[QMetricSpace]) -> VerificationReport:
    rep = VerificationReport()
    for X in spaces:
        _guarded(rep, f"metq/{X.name}", _space_metric_checks, X)
        _guarded(rep, f"metq/{X.name}", _reindex_checks, X)
    small = [X for X in spaces if len(X) <= 3 and X.quantale.is_finite]
    for X, Y in zip(small, small[1:]):
        if X.quantale == Y.quantale:
            _guarded(rep, f"metq/limits/{X.name},{Y.name}", _limits_checks, X, Y)
    return rep


# -- topology ----------------------------------------------------------------------------------

def topology_suite(cfg: SuiteConfig, spaces: Sequence[QMetricSpace]) -> VerificationReport:
    rep = VerificationReport()
    for X in spaces:
        _guarded(rep, f"topology/{X.name}", check_space_topology, X)
    small = [X for X in spaces if len(X) <= 3]
    for X in small:
        _guarded(rep, f"topology/continuity/{X.name}", check_continuity, X, X)
    return rep


# -- Hausdorff-Smyth ------------------------------------------------------------------------------

def hsmonad_suite(cfg: SuiteConfig, spaces: Sequence[QMetricSpace]) -> VerificationReport:
    rep = VerificationReport()
    for X in spaces:
        if len(X) > cfg.max_carrier:
            rep.add(f"hsmonad/{X.name}/guard", "suite.guard", False, {"points": len(X), "max": cfg.max_carrier})
            continue
        _guarded(rep, f"hsmonad/{X.name}", check_star_preorder, X, cfg.max_carrier)
        _guarded(rep, f"hsmonad/{X.name}", check_bs_properties, X, cfg.max_carrier)
        if len(X) <= 2:
            _guarded(rep, f"hsmonad/{X.name}", check_ps_monad_structure, X)
        if len(X) <= cfg.family_max and X.quantale.is_finite:
            _guarded(rep, f"hsmonad/{X.name}", check_topology_theorems, X, cfg.family_max)
    _guarded(rep, "hsmonad", run_counterexample)
    _guarded(rep, "hsmonad", check_strict_inclusion)
    return rep


# -- transformer ------------------------------------------------------------------------------------

def transformer_suite(cfg: SuiteConfig, spaces: Sequence[QMetricSpace]) -> VerificationReport:
    rep = VerificationReport()
    _guarded(rep, "transformer/P_S", check_transformer, ps_monad(), transformer_universe())
    for X in spaces:
        if len(X) <= cfg.max_carrier:
            _guarded(rep, f"transformer/canonical/{X.name}", check_canonical, X)
    return rep


# -- runner --------------------------------------------------------------------------------------------

def run_suite(cfg: SuiteConfig) -> VerificationReport:
    """Run the selected suites.  All randomness comes from one generator seeded with ``cfg.seed``."""
    rng = random.Random(cfg.seed)
    spaces = list(cfg.spaces) if cfg.spaces else corpus_spaces(random.Random(rng.randrange(2**32)),
                                                                cfg.random_spaces)
    quantales = dict(cfg.quantales) if cfg.quantales else None
    rep = VerificationReport()
    for suite in cfg.selected:
        if suite == "laws":
            if quantales is None and cfg.spaces:
                quantales = {X.quantale.name: X.quantale for X in cfg.spaces}
            rep.extend(laws_suite(cfg, rng, quantales))
        elif suite == "metq":
            rep.extend(metq_suite(cfg, spaces))
        elif suite == "topology":
            rep.extend(topology_suite(cfg, spaces))
        elif suite == "hsmonad":
            rep.extend(hsmonad_suite(cfg, spaces))
        elif suite == "transformer":
            rep.extend(transformer_suite(cfg, spaces))
    return rep
