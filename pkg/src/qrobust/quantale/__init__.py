"""Quantales, the way-below relation, residuals and monoidal maps."""

from .base import LEFT, RIGHT, Elem, Quantale
from .build import BUILTINS, DescriptorError, build_quantale, lattice_eval, residual, tensor, way_below
from .instances import (
    PowersetMonoid,
    PowersetQuantale,
    ProductQuantale,
    RelationQuantale,
    ScalarQuantale,
    TableQuantale,
    UnitTruncation,
    chain_table,
    cyclic_monoid_table,
    from_tables,
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
from .laws import (
    EXHAUSTIVE,
    LAX,
    STRICT,
    MonoidalMap,
    Sampled,
    adjunction_status,
    check_adjoint_pair,
    check_monoidal_map,
    check_quantale_laws,
    require_quantale,
)
from .waybelow import (
    check_interpolation,
    check_way_below,
    directed_subsets,
    interpolate,
    tensor_interpolate,
    way_below_pairs,
    way_below_relation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
