"""Polynomials over F_p in k[x0..x3] (plus an optional elimination variable).

Arithmetic, monomial orders and parsing come from sympy's sparse polynomial
rings over GF(p). ``Polynomial`` wraps one ``PolyElement`` so the rest of the
package sees plain ints for coefficients and exponent tuples for monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from itertools import combinations_with_replacement
from operator import itemgetter
from tokenize import TokenError
from typing import Callable, Mapping, Sequence

import numpy as np
import sympy
from sympy import GF
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.monomials import (
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement
from sympy.polys.rings import PolyRing as SparseRing

from mrclab.lib.errors import ConfigError, ParseError, RingMismatchError, ZeroPolynomialError

Monomial = tuple[int, ...]
Term = tuple[int, Monomial]

DEFAULT_PRIME = 32003
DEFAULT_NAMES = ("x0", "x1", "x2", "x3")

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


# ---------- prime field ----------

@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if self.p < 2 or not sympy.isprime(self.p):
            raise ConfigError(f"field modulus must be prime, got {self.p}")
        if self.p >= 2**31:
            raise ConfigError(f"field modulus {self.p} too large for int64 kernels")

    @property
    def domain(self):
        """sympy's GF(p), elements printed and converted in [0, p)."""
        return _gf(self.p)

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return int(self.domain.revert(self.domain(a)))

    def neg(self, a: int) -> int:
        return int(-self.domain(a))


@cache
def _gf(p: int):
    return GF(p, symmetric=False)


# ---------- monomial orders ----------

@cache
def _elimination_order(k: int) -> ProductOrder:
    return ProductOrder((lex, itemgetter(slice(None, k))), (grevlex, itemgetter(slice(k, None))))


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or elim(k): lex on the first k variables, grevlex on the rest."""

    kind: str = "grevlex"
    k: int = 0
    key: Callable[[Monomial], tuple] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind == "grevlex":
            key = grevlex
        elif self.kind == "lex":
            key = lex
        elif self.kind == "elim" and self.k >= 1:
            key = _elimination_order(self.k)
        else:
            raise ConfigError(f"unknown monomial order {self.kind!r} (k={self.k})")
        object.__setattr__(self, "key", key)

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        """-1, 0 or 1 as m1 is less than, equal to or greater than m2."""
        if len(m1) != len(m2):
            raise RingMismatchError("monomials with different variable counts")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __str__(self) -> str:
        return f"elim({self.k})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All monomials of degree d, lex-descending (x0^d first)."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return out


# ---------- ring ----------

@cache
def _sparse_ring(names: tuple[str, ...], p: int, order: MonomialOrder) -> SparseRing:
    return SparseRing(names, _gf(p), order.key)


@dataclass(frozen=True)
class PolyRing:
    field: PrimeField = PrimeField()
    names: tuple[str, ...] = DEFAULT_NAMES
    order: MonomialOrder = GREVLEX

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.names)

    def sparse(self, order: MonomialOrder | None = None) -> SparseRing:
        """The sympy ring behind this one, ordered by ``order`` (default: the ring's)."""
        return _sparse_ring(self.names, self.p, order or self.order)

    def wrap(self, element: PolyElement) -> Polynomial:
        """Polynomial for a sympy element of any ordering of this ring."""
        return Polynomial(self, element)

    def zero(self) -> Polynomial:
        return Polynomial(self, self.sparse().zero)

    def one(self) -> Polynomial:
        return Polynomial(self, self.sparse().one)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, self.sparse().ground_new(int(c)))

    def monomial(self, m: Sequence[int], c: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(m): c})

    def gen(self, i: int) -> Polynomial:
        return Polynomial(self, self.sparse().gens[i])

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomials(self, d: int) -> list[Monomial]:
        return monomials_of_degree(self.nvars, d)

    def with_elimination_variable(self, name: str = "t") -> PolyRing:
        """Same field, one extra variable in front, ordered to eliminate it."""
        return PolyRing(self.field, (name, *self.names), elimination(1))

    def random_form(self, degree: int, rng: np.random.Generator) -> Polynomial:
        monos = self.monomials(degree)
        coeffs = rng.integers(0, self.p, size=len(monos))
        return Polynomial(self, {m: int(c) for m, c in zip(monos, coeffs)})

    def parse(self, text: str) -> Polynomial:
        """Read "x0^2*x1 + 3*x2^3"; `^` and `**` both mean powers, `3x0` means 3*x0."""
        if not text.strip():
            raise ParseError("empty polynomial")
        ring = self.sparse()
        symbols = {name: sympy.Symbol(name) for name in self.names}
        try:
            expr = parse_expr(text, local_dict=symbols, transformations=_TRANSFORMATIONS)
            element = ring.from_expr(expr)
        except (SyntaxError, TokenError, TypeError, ValueError, sympy.SympifyError) as err:
            raise ParseError(f"cannot read {text!r} as a polynomial in {', '.join(self.names)}") from err
        return Polynomial(self, element)


# ---------- polynomials ----------

class Polynomial:
    """Immutable view of a sympy PolyElement; equality is term-for-term."""

    __slots__ = ("ring", "element")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int] | PolyElement):
        sparse = ring.sparse()
        if isinstance(terms, PolyElement):
            if terms.ring.symbols != sparse.symbols or terms.ring.domain != sparse.domain:
                raise RingMismatchError(f"element of {terms.ring} used in {sparse}")
            element = terms.set_ring(sparse)
        else:
            n = ring.nvars
            clean: dict[Monomial, int] = {}
            for mono, coeff in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise RingMismatchError(f"bad exponent vector {mono} for {n} variables")
                clean[mono] = clean.get(mono, 0) + int(coeff)
            element = sparse.from_dict(clean)
        self.ring = ring
        self.element = element

    def over(self, order: MonomialOrder | None = None) -> PolyElement:
        """The sympy element in the ring ordered by ``order``."""
        return self.element.set_ring(self.ring.sparse(order))

    # ----- inspection -----

    def as_dict(self) -> dict[Monomial, int]:
        return {m: int(c) for m, c in self.element.items()}

    def terms(self, order: MonomialOrder | None = None) -> list[Term]:
        """(coefficient, monomial) pairs, strictly descending under the order."""
        return [(int(c), m) for m, c in self.over(order).terms()]

    def monomials(self) -> list[Monomial]:
        return list(self.element.keys())

    def coefficient(self, m: Monomial) -> int:
        return int(self.element.get(tuple(m), 0))

    def is_zero(self) -> bool:
        return not self.element

    def __bool__(self) -> bool:
        return bool(self.element)

    def __len__(self) -> int:
        return len(self.element)

    @property
    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.element.itermonoms()), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.element.itermonoms()}) <= 1

    def is_constant(self) -> bool:
        return self.element.is_ground

    def leading_term(self, order: MonomialOrder | None = None) -> Term:
        if not self.element:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        mono, coeff = self.over(order).LT
        return int(coeff), mono

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[1]

    def leading_coefficient(self, order: MonomialOrder | None = None) -> int:
        return self.leading_term(order)[0]

    # ----- arithmetic -----

    def _coerce(self, other) -> PolyElement | int | None:
        if isinstance(other, Polynomial):
            if self.ring != other.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other.element
        if isinstance(other, (int, np.integer)):
            return int(other)
        return None

    def _new(self, element: PolyElement) -> Polynomial:
        return Polynomial(self.ring, element)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(self.element + other)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self._new(-self.element)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(self.element - other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(-self.element + other)

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._new(self.element * other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        return self._new(self.element ** k)

    def scale(self, c: int) -> Polynomial:
        return self._new(self.element.mul_ground(self.ring.field.domain(int(c))))

    def mul_term(self, c: int, mono: Monomial) -> Polynomial:
        return self._new(self.element.mul_term((tuple(mono), self.ring.field.domain(int(c)))))

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self.element:
            return self
        return self._new(self.over(order).monic())

    def diff(self, i: int) -> Polynomial:
        return self._new(self.element.diff(self.ring.sparse().gens[i]))

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.nvars:
            raise RingMismatchError(f"point with {len(point)} coordinates in {self.ring.nvars} variables")
        if not self.element:
            return 0
        return int(self.element(*(int(x) for x in point)))

    # ----- identity -----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self == self.ring.constant(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and dict.__eq__(self.element, other.element)

    def __hash__(self) -> int:
        return hash(self.element)

    def __str__(self) -> str:
        if not self.element:
            return "0"
        parts = []
        for c, m in self.terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m)
                if e
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c), *factors]))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f; raises ValueError otherwise."""
    if f.ring != g.ring:
        raise RingMismatchError("polynomials live in different rings")
    try:
        return f.ring.wrap(f.element.exquo(g.element))
    except ExactQuotientFailed:
        raise ValueError(f"{g} does not divide {f}") from None
