"""Quantale descriptors (the JSON schema) and validated element-level operations."""

from __future__ import annotations

from typing import Any, Sequence

from ..errors import ElementError, QRobustError
from .base import LEFT, RIGHT, Elem, Quantale
from .instances import (
    PowersetMonoid,
    ProductQuantale,
    RelationQuantale,
    from_tables,
    mod_unit,
    nmeet,
    nplus,
    rmeet,
    rplus,
    sigma,
    trivial,
)

BUILTINS = {
    "rplus": rplus,
    "rmeet": rmeet,
    "nplus": nplus,
    "nmeet": nmeet,
    "sigma": sigma,
    "trivial": trivial,
}


class DescriptorError(QRobustError, ValueError):
    pass


def build_quantale(desc: Any) -> Quantale:
    """Build a quantale from a descriptor dict (or a bare builtin name).

    Table descriptors are law-checked and raise :class:`LawViolation` with a
    witness; flags of every result are computed rather than declared.
    """
    if isinstance(desc, str):
        desc = {"kind": "builtin", "name": desc}
    if not isinstance(desc, dict) or "kind" not in desc:
        raise DescriptorError(f"quantale descriptor must be an object with a 'kind': {desc!r}")
    kind = desc["kind"]
    if kind == "builtin":
        name = desc.get("name")
        if name not in BUILTINS:
            raise DescriptorError(f"unknown builtin quantale {name!r}")
        if "cap" in desc:
            if name not in ("nplus", "nmeet"):
                raise DescriptorError(f"builtin {name!r} takes no cap")
            return BUILTINS[name](int(desc["cap"]))
        return BUILTINS[name]()
    if kind == "product":
        factors = desc.get("factors")
        if not isinstance(factors, list) or not factors:
            raise DescriptorError("product needs a nonempty 'factors' list")
        return ProductQuantale([build_quantale(f) for f in factors])
    if kind == "mod_unit":
        return mod_unit(build_quantale(desc["base"]))
    if kind == "tables":
        try:
            return from_tables(desc["elements"], desc["leq"], desc["tensor"], desc["unit"],
                               desc.get("name", "tables"))
        except KeyError as exc:
            raise DescriptorError(f"tables descriptor is missing {exc.args[0]!r}") from None
    if kind == "powerset_monoid":
        return PowersetMonoid(desc["elements"], desc["mul"], desc["unit"])
    if kind == "relations":
        return RelationQuantale(desc["points"])
    raise DescriptorError(f"unknown quantale kind {kind!r}")


def _checked(Q: Quantale, args: Sequence[Elem]) -> None:
    for a in args:
        if not Q.contains(a):
            raise ElementError(f"{a!r} is not an element of {Q.name}", a)


def lattice_eval(Q: Quantale, op: str, args: Sequence[Elem] = ()):
    """Dispatch ``leq``, ``join``, ``meet``, ``top`` or ``bottom`` with element checks."""
    args = list(args)
    _checked(Q, args)
    if op == "leq":
        if len(args) != 2:
            raise ValueError("leq takes exactly two elements")
        return Q.leq(*args)
    if op == "join":
        return Q.join(args)
    if op == "meet":
        return Q.meet(args)
    if op == "top":
        return Q.top
    if op == "bottom":
        return Q.bottom
    raise ValueError(f"unknown lattice operation {op!r}")


def tensor(Q: Quantale, x: Elem, y: Elem) -> Elem:
    _checked(Q, (x, y))
    return Q.tensor(x, y)


def residual(Q: Quantale, side: str, x: Elem, z: Elem) -> Elem:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    _checked(Q, (x, z))
    return Q.residual(x, z, side)


def way_below(Q: Quantale, x: Elem, y: Elem) -> bool:
    _checked(Q, (x, y))
    return Q.way_below(x, y)
