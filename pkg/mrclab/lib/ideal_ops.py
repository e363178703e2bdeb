"""Ideals of R = k[x0..x3]: intersection, colon, saturation, Hilbert data, points."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np
import sympy

from mrclab.lib import fp_linalg
from mrclab.lib.errors import IdealError, ParseError, RingMismatchError, ZeroPolynomialError
from mrclab.lib.groebner import GroebnerBasis, buchberger, ideal_member
from mrclab.lib.polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    PrimeField,
    exact_quotient,
    monomial_divides,
)

LOGGER = logging.getLogger(__name__)

T = sympy.Symbol("T")
SATURATION_ROUNDS = 10


# ---------- ideals ----------

class Ideal:
    """Generators plus a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = tuple(g for g in generators if g)
        if any(g.ring != ring for g in gens):
            raise RingMismatchError("ideal generators from a different ring")
        self.ring = ring
        self.generators = gens
        self._gb_cache: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def principal(cls, f: Polynomial) -> Ideal:
        return cls(f.ring, [f])

    @property
    def graded(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb_cache:
            self._gb_cache[order] = buchberger(self.generators, order, ring=self.ring)
        return self._gb_cache[order]

    def __contains__(self, f: Polynomial) -> bool:
        return ideal_member(f, self.groebner())

    def contains_ideal(self, other: Ideal) -> bool:
        return all(g in self for g in other.generators)

    def same_as(self, other: Ideal) -> bool:
        return self.groebner().generators == other.groebner(self.ring.order).generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit_ideal()

    def reduced(self) -> Ideal:
        """The same ideal with its reduced Groebner basis as generators."""
        gb = self.groebner()
        out = Ideal(self.ring, gb.generators)
        out._gb_cache[gb.order] = gb
        return out

    def minimal_generators(self) -> list[Polynomial]:
        """A minimal homogeneous generating set, chosen degree by degree."""
        if not self.graded:
            raise IdealError("minimal generators need a homogeneous ideal")
        p = self.ring.p
        chosen: list[Polynomial] = []
        for d in sorted({g.degree for g in self.generators}):
            monos = self.ring.monomials(d)
            col = {m: k for k, m in enumerate(monos)}
            lower = [
                g.mul_term(1, m)
                for g in chosen
                for m in self.ring.monomials(d - g.degree)
            ]
            cands = [g for g in self.generators if g.degree == d]
            picked = fp_linalg.extending_rows(
                coefficient_matrix(lower, col), coefficient_matrix(cands, col), p
            )
            chosen.extend(cands[k] for k in picked)
        return chosen

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def coefficient_matrix(polys: Sequence[Polynomial], columns: dict[Monomial, int]) -> np.ndarray:
    out = np.zeros((len(polys), len(columns)), dtype=np.int64)
    for i, f in enumerate(polys):
        for m, c in f.as_dict().items():
            out[i, columns[m]] = c
    return out


# ---------- intersection, colon, saturation ----------

def _lift(f: Polynomial, ext: PolyRing) -> Polynomial:
    return Polynomial(ext, f.element.set_ring(ext.sparse()))


def _project(f: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, f.element.set_ring(ring.sparse()))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1−t)·J."""
    if I.ring != J.ring:
        raise RingMismatchError("intersect across rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    ext = ring.with_elimination_variable()
    t = ext.gen(0)
    gens = [t * _lift(f, ext) for f in I.generators]
    gens += [(1 - t) * _lift(g, ext) for g in J.generators]
    gb = buchberger(gens, ext.order, ring=ext)
    kept = [_project(g, ring) for g in gb if all(m[0] == 0 for m in g.monomials())]
    LOGGER.debug("intersect: elimination basis %d, kept %d", len(gb), len(kept))
    return Ideal(ring, kept).reduced()


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J = ∩_j (I ∩ (g_j)) / g_j over the generators g_j of J."""
    if I.ring != J.ring:
        raise RingMismatchError("colon across rings")
    if J.is_zero():
        raise IdealError("quotient by the zero ideal")
    parts = []
    for g in J.generators:
        K = intersect(I, Ideal.principal(g))
        parts.append(Ideal(I.ring, [exact_quotient(h, g) for h in K.generators]))
    return reduce(intersect, parts).reduced()


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^∞, iterating colon by (f) until the reduced basis stops changing."""
    if not f:
        raise ZeroPolynomialError("saturation by the zero polynomial")
    current = I.reduced()
    principal = Ideal.principal(f)
    for _ in range(SATURATION_ROUNDS):
        nxt = colon(current, principal)
        if nxt.same_as(current):
            return current
        current = nxt
    raise IdealError(f"saturation did not stabilise within {SATURATION_ROUNDS} rounds")


# ---------- Hilbert data ----------

def hilbert_function(I: Ideal, d: int, order: MonomialOrder | None = None) -> int:
    """dim_k (R/I)_d, counted as standard monomials of the leading-term ideal."""
    if d < 0:
        return 0
    lms = I.groebner(order).leading_monomials()
    return sum(
        1 for m in I.ring.monomials(d)
        if not any(monomial_divides(lm, m) for lm in lms)
    )


def _minimal_monomials(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    ordered = sorted(set(gens), key=sum)
    out: list[Monomial] = []
    for m in ordered:
        if not any(monomial_divides(n, m) for n in out):
            out.append(m)
    return frozenset(out)


@lru_cache(maxsize=4096)
def _staircase_numerator(gens: frozenset[Monomial]) -> sympy.Poly:
    one = sympy.Poly(1, T, domain="ZZ")
    if not gens:
        return one
    if any(sum(m) == 0 for m in gens):
        return sympy.Poly(0, T, domain="ZZ")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    if all(not (a & b) for k, a in enumerate(supports) for b in supports[k + 1:]):
        out = one
        for m in gens:
            out = out * sympy.Poly(1 - T ** sum(m), T, domain="ZZ")
        return out
    nvars = len(next(iter(gens)))
    counts = [sum(1 for m in gens if m[v]) for v in range(nvars)]
    v = max(range(nvars), key=lambda i: counts[i])
    # N(J) = N(J + (x_v)) + T·N(J : x_v); x_v is regular modulo the part free of x_v
    free = _minimal_monomials(m for m in gens if not m[v])
    shifted = _minimal_monomials(
        tuple(e - 1 if i == v and e else e for i, e in enumerate(m)) for m in gens
    )
    return (sympy.Poly(1 - T, T, domain="ZZ") * _staircase_numerator(free)
            + sympy.Poly(T, T, domain="ZZ") * _staircase_numerator(shifted))


def monomial_numerator(monomials: Iterable[Monomial]) -> sympy.Poly:
    """Hilbert numerator N(T) of R/(monomials), with HS = N(T)/(1−T)^nvars."""
    return _staircase_numerator(_minimal_monomials(monomials))


def hilbert_series_numerator(I: Ideal, order: MonomialOrder | None = None) -> sympy.Poly:
    if not I.graded:
        raise IdealError("Hilbert series of a non-homogeneous ideal")
    lms = I.groebner(order).leading_monomials()
    if not lms:
        return sympy.Poly(1, T, domain="ZZ")
    return monomial_numerator(lms)


def degree_from_numerator(numerator: sympy.Poly, codim: int = 3) -> int:
    """N(T)/(1−T)^codim at T=1; the division must be exact."""
    divisor = sympy.Poly((1 - T) ** codim, T, domain="ZZ")
    quotient, remainder = sympy.div(numerator, divisor)
    if not remainder.is_zero:
        raise IdealError(f"Hilbert numerator {numerator.as_expr()} is not that of a set of points")
    return int(quotient.eval(1))


def degree_of_points(I: Ideal) -> int:
    return degree_from_numerator(hilbert_series_numerator(I))


# ---------- points ----------

@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[int, ...]
    p: int

    @classmethod
    def of(cls, coords: Sequence[int], field: PrimeField) -> ProjectivePoint:
        values = [int(c) % field.p for c in coords]
        lead = next((c for c in values if c), 0)
        if lead == 0:
            raise IdealError("the zero vector is not a projective point")
        inv = field.inv(lead)
        return cls(tuple(c * inv % field.p for c in values), field.p)

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def point_ideal(pt: ProjectivePoint, ring: PolyRing | None = None) -> Ideal:
    """Three linear forms x_j − c_j·x_k, where x_k is the first nonzero coordinate."""
    ring = ring or PolyRing(PrimeField(pt.p))
    k = next(i for i, c in enumerate(pt.coords) if c)
    xk = ring.gen(k)
    forms = [ring.gen(j) - xk.scale(c) for j, c in enumerate(pt.coords) if j != k]
    return Ideal(ring, forms)


def evaluation_matrix(points: Sequence[ProjectivePoint], monos: Sequence[Monomial], p: int) -> np.ndarray:
    """Rows: points; columns: monomials; entries mod p."""
    pts = np.array([pt.coords for pt in points], dtype=np.int64).reshape(len(points), -1)
    out = np.ones((len(points), len(monos)), dtype=np.int64)
    for j, m in enumerate(monos):
        col = np.ones(len(points), dtype=np.int64)
        for v, e in enumerate(m):
            for _ in range(e):
                col = col * pts[:, v] % p
        out[:, j] = col
    return out


def _check_distinct(points: Sequence[ProjectivePoint]) -> None:
    if len(set(points)) != len(points):
        raise IdealError("duplicate points")


def vanishing_forms(points: Sequence[ProjectivePoint], d: int, ring: PolyRing) -> list[Polynomial]:
    """A basis of the degree-d forms vanishing on the points."""
    monos = ring.monomials(d)
    kernel = fp_linalg.nullspace(evaluation_matrix(points, monos, ring.p), ring.p)
    return [
        Polynomial(ring, {m: int(c) for m, c in zip(monos, row) if c})
        for row in kernel
    ]


def vanishing_ideal(points: Sequence[ProjectivePoint], d_max: int, ring: PolyRing | None = None) -> Ideal:
    """Minimal generators of the ideal of the points, degrees 1..d_max."""
    if not points:
        raise IdealError("vanishing ideal of an empty point set")
    ring = ring or PolyRing(PrimeField(points[0].p))
    _check_distinct(points)
    p = ring.p
    generators: list[Polynomial] = []
    previous: list[Polynomial] = []
    for d in range(1, d_max + 1):
        forms = vanishing_forms(points, d, ring)
        if forms:
            columns = {m: k for k, m in enumerate(ring.monomials(d))}
            lower = [f * x for f in previous for x in ring.gens()]
            picked = fp_linalg.extending_rows(
                coefficient_matrix(lower, columns), coefficient_matrix(forms, columns), p
            )
            generators.extend(forms[k] for k in picked)
            LOGGER.debug("vanishing_ideal: degree %d, %d forms, %d new generators",
                         d, len(forms), len(picked))
        previous = forms
    return Ideal(ring, generators)


def ideal_by_intersection(points: Sequence[ProjectivePoint], ring: PolyRing | None = None) -> Ideal:
    """∩ point_ideal(pt); slow, kept as an independent route to the same ideal."""
    _check_distinct(points)
    ring = ring or PolyRing(PrimeField(points[0].p))
    return reduce(intersect, (point_ideal(pt, ring) for pt in points))


# ---------- point-set files ----------

def read_points(path, field: PrimeField) -> list[ProjectivePoint]:
    """One point per line, 4 comma-separated integers; `#` starts a comment."""
    points = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                coords = [int(tok) for tok in line.split(",")]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: expected integers, got {line!r}") from None
            if len(coords) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 coordinates, got {len(coords)}")
            points.append(ProjectivePoint.of(coords, field))
    return points


def write_points(path, points: Sequence[ProjectivePoint], comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for pt in points:
            fh.write(",".join(str(c) for c in pt.coords) + "\n")
