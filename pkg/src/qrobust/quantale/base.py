"""Abstract quantale interface shared by finite (table-backed) and analytic instances."""

from __future__ import annotations

import json
import random
from abc import ABC, abstractmethod
from functools import cached_property, reduce
from typing import Any, Hashable, Iterable, Sequence

from ..errors import ElementError, UnsupportedOperation

Elem = Hashable

LEFT = "left"
RIGHT = "right"


class Quantale(ABC):
    """A complete lattice with an associative, join-preserving tensor.

    Subclasses provide the binary lattice operations, the tensor and the
    way-below decision rule; everything else (finite joins/meets, brute-force
    residuals, computed flags) is derived here for finite carriers.
    """

    name: str = "quantale"
    is_finite: bool = False

    # -- structure -------------------------------------------------------
    @abstractmethod
    def contains(self, x: Any) -> bool: ...

    @abstractmethod
    def leq(self, x: Elem, y: Elem) -> bool: ...

    @abstractmethod
    def join2(self, x: Elem, y: Elem) -> Elem: ...

    @abstractmethod
    def meet2(self, x: Elem, y: Elem) -> Elem: ...

    @property
    @abstractmethod
    def bottom(self) -> Elem: ...

    @property
    @abstractmethod
    def top(self) -> Elem: ...

    @property
    @abstractmethod
    def unit(self) -> Elem: ...

    @abstractmethod
    def tensor(self, x: Elem, y: Elem) -> Elem: ...

    @abstractmethod
    def way_below(self, x: Elem, y: Elem) -> bool: ...

    @abstractmethod
    def descriptor(self) -> dict:
        """JSON descriptor that rebuilds this quantale."""

    # -- derived lattice operations ---------------------------------------
    def join(self, xs: Iterable[Elem]) -> Elem:
        return reduce(self.join2, xs, self.bottom)

    def meet(self, xs: Iterable[Elem]) -> Elem:
        return reduce(self.meet2, xs, self.top)

    def eq(self, x: Elem, y: Elem) -> bool:
        return self.leq(x, y) and self.leq(y, x)

    def lt(self, x: Elem, y: Elem) -> bool:
        return self.leq(x, y) and not self.leq(y, x)

    def elements(self) -> tuple:
        """All elements, in a fixed enumeration order (finite instances only)."""
        raise UnsupportedOperation(f"{self.name} has an infinite carrier")

    def residual(self, x: Elem, z: Elem, side: str = LEFT) -> Elem:
        """Left residual: join of {y : x (x) y <= z}; right: join of {y : y (x) x <= z}."""
        if not self.is_finite:
            raise UnsupportedOperation(f"no closed-form residual for {self.name}")
        if side == LEFT:
            ys = [y for y in self.elements() if self.leq(self.tensor(x, y), z)]
        elif side == RIGHT:
            ys = [y for y in self.elements() if self.leq(self.tensor(y, x), z)]
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return self.join(ys)

    def compact(self, x: Elem) -> bool:
        return self.way_below(x, x)

    # -- sampling / radii ---------------------------------------------------
    def landmarks(self) -> list:
        """Distinguished elements tried first by sampled checks."""
        return list(dict.fromkeys([self.bottom, self.unit, self.top]))

    def sample(self, rng: random.Random) -> Elem:
        if self.is_finite:
            return rng.choice(self.elements())
        raise UnsupportedOperation(f"no sampler for {self.name}")

    def sample_pool(self, rng: random.Random, count: int) -> list:
        pool = list(self.landmarks())
        while len(pool) < count:
            pool.append(self.sample(rng))
        return pool[:max(count, 1)]

    def below_unit(self) -> list:
        """Finite carriers: every radius delta with delta << I."""
        return [d for d in self.elements() if self.way_below(d, self.unit)]

    def probe_radii(self, values: Iterable[Elem]) -> list:
        """Radii delta << I that realise every distinct behaviour of ``delta << v``
        over the given finite set of values (all of them for finite carriers)."""
        if self.is_finite:
            return self.below_unit()
        raise UnsupportedOperation(f"no radius probes for {self.name}")

    # -- flags ----------------------------------------------------------------
    @cached_property
    def is_trivial(self) -> bool:
        return self.eq(self.bottom, self.unit)

    @cached_property
    def is_affine(self) -> bool:
        return self.eq(self.unit, self.top)

    @cached_property
    def is_linear(self) -> bool:
        els = self.elements()
        return all(self.leq(x, y) or self.leq(y, x) for x in els for y in els)

    @cached_property
    def is_commutative(self) -> bool:
        els = self.elements()
        return all(self.tensor(x, y) == self.tensor(y, x) for x in els for y in els)

    @property
    def is_continuous(self) -> bool:
        return True

    # -- element I/O ----------------------------------------------------------
    def check(self, x: Any) -> Elem:
        if not self.contains(x):
            raise ElementError(f"{x!r} is not an element of {self.name}", x)
        return x

    def parse(self, literal: Any) -> Elem:
        return self.check(literal)

    def format(self, x: Elem) -> Any:
        return x

    # -- identity -----------------------------------------------------------
    @cached_property
    def key(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quantale) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    def __len__(self) -> int:
        return len(self.elements())


def format_many(Q: Quantale, xs: Sequence[Elem]) -> list:
    return [Q.format(x) for x in xs]
