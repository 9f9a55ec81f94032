"""Concrete quantales: extended non-negative scalars, tables, products,
the unit-truncation Q/I, powersets of monoids and relations."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

from ..errors import ElementError, LawViolation, UnsupportedOperation
from ..ext import INF, add, ext, format_ext, sub
from .base import LEFT, RIGHT, Elem, Quantale

_ZERO = Fraction(0)
PLUS = "plus"
MAX = "max"


class ScalarQuantale(Quantale):
    """Extended non-negative rationals ordered by reverse magnitude.

    Join is ``min``, meet is ``max``, bottom is ``INF``, top and unit are 0.
    ``tensor_kind`` is ``"plus"`` (Lawvere's R+) or ``"max"`` (the frame R-meet).
    ``dense=False`` restricts the carrier to naturals, and ``cap`` truncates it
    to ``{0..cap, INF}`` with sums above ``cap`` sent to ``INF``.
    """

    def __init__(self, name: str, tensor_kind: str, *, dense: bool, cap: int | None = None):
        if tensor_kind not in (PLUS, MAX):
            raise ValueError(f"unknown tensor kind {tensor_kind!r}")
        if dense and cap is not None:
            raise ValueError("a dense carrier cannot be truncated")
        self.name = name
        self.tensor_kind = tensor_kind
        self.dense = dense
        self.cap = cap
        self.is_finite = cap is not None

    def descriptor(self) -> dict:
        d = {"kind": "builtin", "name": self.name}
        if self.cap is not None and self.name != "sigma":
            d["cap"] = self.cap
        return d

    def contains(self, x: Any) -> bool:
        if x is INF:
            return True
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)) or x < 0:
            return False
        if not self.dense and Fraction(x).denominator != 1:
            return False
        return self.cap is None or x <= self.cap

    def leq(self, x, y) -> bool:
        return x >= y

    def join2(self, x, y):
        return y if y < x else x

    def meet2(self, x, y):
        return y if y > x else x

    @property
    def bottom(self):
        return INF

    @property
    def top(self):
        return _ZERO

    @property
    def unit(self):
        return _ZERO

    def tensor(self, x, y):
        if self.tensor_kind == MAX:
            return self.meet2(x, y)
        s = add(x, y)
        if self.cap is not None and s is not INF and s > self.cap:
            return INF
        return s

    def way_below(self, x, y) -> bool:
        if self.dense:
            return x is INF or x > y
        return x >= y

    def residual(self, x, z, side: str = LEFT):
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if self.is_finite:
            return super().residual(x, z, side)
        if self.tensor_kind == PLUS:
            return sub(z, x)
        # max(x, y) >= z holds for every y once x >= z, otherwise needs y >= z
        return _ZERO if x >= z else z

    @cached_property
    def is_linear(self) -> bool:
        return True

    @cached_property
    def is_commutative(self) -> bool:
        return True

    def elements(self) -> tuple:
        if self.cap is None:
            return super().elements()
        return tuple(Fraction(i) for i in range(self.cap + 1)) + (INF,)

    def landmarks(self) -> list:
        if self.dense:
            marks = ["0", "1", "1/2", "2", "3/2", "1/3", "inf", "5/2", "3"]
        else:
            marks = ["0", "1", "2", "3", "inf"]
        return [m for m in (ext(s) for s in marks) if self.contains(m)]

    def sample(self, rng: random.Random):
        if self.is_finite:
            return rng.choice(self.elements())
        r = rng.random()
        if r < 0.08:
            return INF
        if r < 0.16:
            return _ZERO
        if self.dense:
            return Fraction(rng.randint(0, 48), rng.randint(1, 12))
        return Fraction(rng.randint(0, 24))

    def probe_radii(self, values: Iterable[Elem]) -> list:
        if self.is_finite:
            return self.below_unit()
        finite = sorted({v for v in values if v is not INF})
        if not self.dense:
            cands = {_ZERO, INF} | set(finite) | {v + 1 for v in finite}
            return sorted(cands)
        pos = [v for v in finite if v > 0]
        cands = {INF, Fraction(1)}
        cands.update(pos)
        cands.update(v / 2 for v in pos)
        cands.update((a + b) / 2 for a, b in zip(pos, pos[1:]))
        cands.add((pos[-1] if pos else _ZERO) + 1)
        return sorted(cands)

    def parse(self, literal: Any):
        x = ext(literal) if not isinstance(literal, Fraction) else literal
        return self.check(x)

    def format(self, x) -> str:
        return format_ext(x)


def rplus() -> ScalarQuantale:
    return ScalarQuantale("rplus", PLUS, dense=True)


def rmeet() -> ScalarQuantale:
    return ScalarQuantale("rmeet", MAX, dense=True)


def nplus(cap: int | None = None) -> ScalarQuantale:
    return ScalarQuantale("nplus", PLUS, dense=False, cap=cap)


def nmeet(cap: int | None = None) -> ScalarQuantale:
    return ScalarQuantale("nmeet", MAX, dense=False, cap=cap)


def sigma() -> ScalarQuantale:
    """The two-element frame {0, INF} inside R+."""
    return ScalarQuantale("sigma", PLUS, dense=False, cap=0)


class TableQuantale(Quantale):
    """A finite quantale given by its order matrix and tensor table.

    Elements are indices into ``names``.  Construction computes the binary
    join/meet tables from the order; it does not check the quantale laws
    (see :func:`from_tables` and ``check_quantale_laws``).
    """

    is_finite = True

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]],
                 tensor: Sequence[Sequence[int]], unit: int, name: str = "tables"):
        n = len(names)
        if n == 0:
            raise LawViolation("nonempty", None, "a quantale needs at least one element")
        if len(set(names)) != n:
            raise ValueError("element names must be distinct")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValueError("leq must be an n x n matrix")
        if len(tensor) != n or any(len(row) != n for row in tensor):
            raise ValueError("tensor must be an n x n table")
        for row in tensor:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise ElementError(f"tensor entry {v!r} out of range", v)
        if not (isinstance(unit, int) and 0 <= unit < n):
            raise ElementError(f"unit {unit!r} out of range", unit)
        self.name = name
        self.names = tuple(names)
        self._leq = tuple(tuple(bool(b) for b in row) for row in leq)
        self._tensor = tuple(tuple(row) for row in tensor)
        self._unit = unit
        self._join = self._bound_table(upper=True)
        self._meet = self._bound_table(upper=False)
        self._bottom = self._extremum(least=True)
        self._top = self._extremum(least=False)

    def _bound_table(self, upper: bool):
        n = len(self.names)
        le = self._leq
        table = []
        for x in range(n):
            row = []
            for y in range(n):
                if upper:
                    bounds = [u for u in range(n) if le[x][u] and le[y][u]]
                    best = [u for u in bounds if all(le[u][v] for v in bounds)]
                else:
                    bounds = [u for u in range(n) if le[u][x] and le[u][y]]
                    best = [u for u in bounds if all(le[v][u] for v in bounds)]
                if len(best) != 1:
                    law = "join" if upper else "meet"
                    raise LawViolation(law, (self.names[x], self.names[y]),
                                       f"no unique {law} of {self.names[x]!r} and {self.names[y]!r}")
                row.append(best[0])
            table.append(tuple(row))
        return tuple(table)

    def _extremum(self, least: bool) -> int:
        n = len(self.names)
        le = self._leq
        found = [u for u in range(n) if all((le[u][v] if least else le[v][u]) for v in range(n))]
        if len(found) != 1:
            law = "bottom" if least else "top"
            raise LawViolation(law, None, f"no unique {law} element")
        return found[0]

    def descriptor(self) -> dict:
        names = self.names
        return {
            "kind": "tables",
            "elements": list(names),
            "leq": [list(row) for row in self._leq],
            "tensor": [[names[v] for v in row] for row in self._tensor],
            "unit": names[self._unit],
        }

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < len(self.names)

    def leq(self, x, y) -> bool:
        return self._leq[x][y]

    def join2(self, x, y):
        return self._join[x][y]

    def meet2(self, x, y):
        return self._meet[x][y]

    @property
    def bottom(self):
        return self._bottom

    @property
    def top(self):
        return self._top

    @property
    def unit(self):
        return self._unit

    def tensor(self, x, y):
        return self._tensor[x][y]

    def way_below(self, x, y) -> bool:
        return self._leq[x][y]

    def elements(self) -> tuple:
        return tuple(range(len(self.names)))

    def parse(self, literal):
        if isinstance(literal, str):
            try:
                return self.names.index(literal)
            except ValueError:
                raise ElementError(f"{literal!r} is not an element of {self.name}", literal) from None
        return self.check(literal)

    def format(self, x) -> str:
        return self.names[x]

    def with_tensor(self, x, y, value) -> "TableQuantale":
        """Copy with one tensor entry replaced (used to build corrupted fixtures)."""
        rows = [list(r) for r in self._tensor]
        rows[x][y] = value
        return TableQuantale(self.names, self._leq, rows, self._unit, self.name)


def from_tables(names: Sequence[str], leq, tensor_names, unit_name: str, name: str = "tables",
                check: bool = True) -> TableQuantale:
    index = {n: i for i, n in enumerate(names)}
    try:
        tensor = [[index[v] for v in row] for row in tensor_names]
        unit = index[unit_name]
    except KeyError as exc:
        raise ElementError(f"unknown element {exc.args[0]!r} in tables", exc.args[0]) from None
    Q = TableQuantale(names, leq, tensor, unit, name)
    if check:
        from .laws import require_quantale
        require_quantale(Q)
    return Q


def chain_table(names: Sequence[str], tensor_fn: Callable[[int, int], int], unit: int,
                name: str) -> TableQuantale:
    """Linear order ``names[0] < names[1] < ...`` with tensor given on indices."""
    n = len(names)
    leq = [[i <= j for j in range(n)] for i in range(n)]
    tensor = [[tensor_fn(i, j) for j in range(n)] for i in range(n)]
    return TableQuantale(names, leq, tensor, unit, name)


def trivial() -> TableQuantale:
    return TableQuantale(["*"], [[True]], [[0]], 0, "trivial")


def lukasiewicz_chain(n: int = 4) -> TableQuantale:
    """The n-element Lukasiewicz chain ``i (x) j = max(0, i + j - (n-1))`` (affine, linear)."""
    names = [f"l{i}" for i in range(n)]
    return chain_table(names, lambda i, j: max(0, i + j - (n - 1)), n - 1, f"chain{n}")


def three_chain() -> TableQuantale:
    """bot < e < top with e as unit and top (x) top = top: linear but not affine."""
    return chain_table(["bot", "e", "top"], lambda i, j: 0 if 0 in (i, j) else max(i, j), 1, "chain3")


class ProductQuantale(Quantale):
    """Finite product with order and tensor computed componentwise."""

    def __init__(self, factors: Sequence[Quantale]):
        if not factors:
            raise ValueError("a product needs at least one factor")
        self.factors = tuple(factors)
        self.name = "(" + " x ".join(f.name for f in self.factors) + ")"
        self.is_finite = all(f.is_finite for f in self.factors)

    def descriptor(self) -> dict:
        return {"kind": "product", "factors": [f.descriptor() for f in self.factors]}

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.contains(c) for f, c in zip(self.factors, x)))

    def leq(self, x, y) -> bool:
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def join2(self, x, y):
        return tuple(f.join2(a, b) for f, a, b in zip(self.factors, x, y))

    def meet2(self, x, y):
        return tuple(f.meet2(a, b) for f, a, b in zip(self.factors, x, y))

    @cached_property
    def bottom(self):
        return tuple(f.bottom for f in self.factors)

    @cached_property
    def top(self):
        return tuple(f.top for f in self.factors)

    @cached_property
    def unit(self):
        return tuple(f.unit for f in self.factors)

    def tensor(self, x, y):
        return tuple(f.tensor(a, b) for f, a, b in zip(self.factors, x, y))

    def way_below(self, x, y) -> bool:
        return all(f.way_below(a, b) for f, a, b in zip(self.factors, x, y))

    def residual(self, x, z, side: str = LEFT):
        return tuple(f.residual(a, c, side) for f, a, c in zip(self.factors, x, z))

    def elements(self) -> tuple:
        if not self.is_finite:
            return super().elements()
        return tuple(itertools.product(*(f.elements() for f in self.factors)))

    @cached_property
    def is_linear(self) -> bool:
        if self.is_finite:
            return super().is_linear
        nontrivial = [f for f in self.factors if not f.is_trivial]
        return len(nontrivial) <= 1 and all(f.is_linear for f in nontrivial)

    @cached_property
    def is_commutative(self) -> bool:
        return all(f.is_commutative for f in self.factors)

    def landmarks(self) -> list:
        marks = [f.landmarks() for f in self.factors]
        out = list(dict.fromkeys([self.bottom, self.unit, self.top]))
        out.extend(itertools.islice(itertools.product(*marks), 64))
        return list(dict.fromkeys(out))

    def sample(self, rng: random.Random):
        return tuple(f.sample(rng) for f in self.factors)

    def probe_radii(self, values: Iterable[Elem]) -> list:
        values = list(values)
        per = [f.probe_radii([v[i] for v in values]) for i, f in enumerate(self.factors)]
        return list(itertools.product(*per))

    def parse(self, literal):
        if not isinstance(literal, (list, tuple)) or len(literal) != len(self.factors):
            raise ElementError(f"{literal!r} is not an element of {self.name}", literal)
        return tuple(f.parse(c) for f, c in zip(self.factors, literal))

    def format(self, x):
        return [f.format(c) for f, c in zip(self.factors, x)]


class UnitTruncation(Quantale):
    """Q/I: the sub-quantale of elements below the unit (unit becomes top)."""

    is_finite = True

    def __init__(self, base: Quantale):
        if not base.is_finite:
            raise UnsupportedOperation(f"Q/I of the infinite non-affine quantale {base.name}")
        self.base = base
        self.name = f"{base.name}/I"
        self._elements = tuple(x for x in base.elements() if base.leq(x, base.unit))

    def descriptor(self) -> dict:
        return {"kind": "mod_unit", "base": self.base.descriptor()}

    def contains(self, x) -> bool:
        return self.base.contains(x) and self.base.leq(x, self.base.unit)

    def leq(self, x, y) -> bool:
        return self.base.leq(x, y)

    def join2(self, x, y):
        return self.base.join2(x, y)

    def meet2(self, x, y):
        return self.base.meet2(x, y)

    @property
    def bottom(self):
        return self.base.bottom

    @property
    def top(self):
        return self.base.unit

    @property
    def unit(self):
        return self.base.unit

    def tensor(self, x, y):
        return self.base.tensor(x, y)

    def way_below(self, x, y) -> bool:
        return self.base.way_below(x, y)

    def elements(self) -> tuple:
        return self._elements

    def parse(self, literal):
        return self.check(self.base.parse(literal))

    def format(self, x):
        return self.base.format(x)


def mod_unit(Q: Quantale) -> Quantale:
    """Q/I; an affine quantale is returned unchanged since then I is already top."""
    if Q.is_affine:
        return Q
    return UnitTruncation(Q)


class PowersetQuantale(Quantale):
    """Subsets of a finite set of atoms ordered by inclusion, with a
    tensor induced by a partial binary operation on atoms."""

    is_finite = True

    def __init__(self, atoms: Sequence[Hashable], product: Callable[[Any, Any], Iterable],
                 unit: Iterable, name: str):
        self.atoms = tuple(atoms)
        self._atom_set = frozenset(self.atoms)
        self._product = product
        self._unit = frozenset(unit)
        self.name = name
        self._full = frozenset(self.atoms)

    def contains(self, x) -> bool:
        return isinstance(x, frozenset) and x <= self._atom_set

    def leq(self, x, y) -> bool:
        return x <= y

    def join2(self, x, y):
        return x | y

    def meet2(self, x, y):
        return x & y

    @property
    def bottom(self):
        return frozenset()

    @property
    def top(self):
        return self._full

    @property
    def unit(self):
        return self._unit

    def tensor(self, x, y):
        out = set()
        for a in x:
            for b in y:
                out.update(self._product(a, b))
        return frozenset(out)

    def way_below(self, x, y) -> bool:
        # finite subset inclusion; every subset of a finite atom set is finite
        return x <= y

    @cached_property
    def _all(self) -> tuple:
        n = len(self.atoms)
        return tuple(frozenset(self.atoms[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n))

    def elements(self) -> tuple:
        return self._all


class PowersetMonoid(PowersetQuantale):
    """P(M) for a finite monoid M with the pointwise product of subsets."""

    def __init__(self, elements: Sequence[str], mul: Sequence[Sequence[str]], unit: str):
        index = {m: i for i, m in enumerate(elements)}
        if unit not in index:
            raise ElementError(f"unit {unit!r} is not a monoid element", unit)
        self.monoid = (tuple(elements), tuple(tuple(r) for r in mul), unit)
        for row in mul:
            for v in row:
                if v not in index:
                    raise ElementError(f"monoid product {v!r} is not an element", v)
        super().__init__(elements, lambda a, b: (mul[index[a]][index[b]],), [unit], "powerset_monoid")
        _check_monoid(elements, mul, unit)

    def descriptor(self) -> dict:
        els, mul, unit = self.monoid
        return {"kind": "powerset_monoid", "elements": list(els), "mul": [list(r) for r in mul], "unit": unit}

    def parse(self, literal):
        return self.check(frozenset(literal))

    def format(self, x):
        return sorted(x)


def _check_monoid(elements, mul, unit) -> None:
    index = {m: i for i, m in enumerate(elements)}

    def m(a, b):
        return mul[index[a]][index[b]]

    for a in elements:
        if m(unit, a) != a or m(a, unit) != a:
            raise LawViolation("monoid-unit", a)
        for b in elements:
            for c in elements:
                if m(m(a, b), c) != m(a, m(b, c)):
                    raise LawViolation("monoid-associativity", (a, b, c))


class RelationQuantale(PowersetQuantale):
    """P(X x X) with relational composition and the diagonal as unit."""

    def __init__(self, points: Sequence[Hashable]):
        pts = tuple(points)
        atoms = [(a, b) for a in pts for b in pts]

        def compose(r, s):
            return ((r[0], s[1]),) if r[1] == s[0] else ()

        super().__init__(atoms, compose, [(a, a) for a in pts], "relations")
        self.points = pts

    def descriptor(self) -> dict:
        return {"kind": "relations", "points": list(self.points)}

    def parse(self, literal):
        return self.check(frozenset(tuple(p) for p in literal))

    def format(self, x):
        return sorted([list(p) for p in x])


def cyclic_monoid_table(n: int) -> tuple[list[str], list[list[str]], str]:
    """Z/n as a monoid table, element names ``"0".."n-1"``."""
    els = [str(i) for i in range(n)]
    return els, [[str((i + j) % n) for j in range(n)] for i in range(n)], "0"
