"""Quantale-valued metric spaces, robust topologies and the Hausdorff-Smyth monad."""

from .errors import ElementError, GuardError, LawViolation, PreconditionError, QRobustError, UnsupportedOperation
from .ext import INF, format_ext, parse_ext
from .hsmonad import b_s, d_s, eta, kleisli_extend, ps_space, run_counterexample, star_closure, star_robust_open
from .qmetric import QMetricSpace, SpaceMap, check_qmetric, separation_quotient
from .quantale import Quantale, build_quantale, check_quantale_laws
from .report import VerificationReport, Verdict
from .suites import SuiteConfig, run_suite
from .topology import b_r, ball, closure, enumerate_topology, flatten, is_open, robust_open, robust_spec_leq
from .transformer import MonadInstance, canonical_representative, check_monad_laws, ps_monad, separation_transform

__all__ = [
    "INF", "format_ext", "parse_ext",
    "QRobustError", "ElementError", "LawViolation", "PreconditionError", "GuardError", "UnsupportedOperation",
    "Quantale", "build_quantale", "check_quantale_laws",
    "QMetricSpace", "SpaceMap", "check_qmetric", "separation_quotient",
    "ball", "is_open", "closure", "b_r", "flatten", "robust_open", "robust_spec_leq", "enumerate_topology",
    "d_s", "ps_space", "eta", "kleisli_extend", "star_closure", "b_s", "star_robust_open", "run_counterexample",
    "MonadInstance", "ps_monad", "check_monad_laws", "separation_transform", "canonical_representative",
    "VerificationReport", "Verdict", "SuiteConfig", "run_suite",
]
