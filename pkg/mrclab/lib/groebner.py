"""Normal forms and reduced Groebner bases (Buchberger with Gebauer-Moeller pruning).

The loop runs on sympy PolyElements in the ring ordered by the requested
monomial order; results come back as ``Polynomial`` values of the caller's ring.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from sympy.polys.rings import PolyElement

from mrclab.lib.errors import RingMismatchError
from mrclab.lib.polyring import Monomial, MonomialOrder, Polynomial, PolyRing

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by ascending leading monomial."""

    ring: PolyRing
    generators: tuple[Polynomial, ...]
    order: MonomialOrder

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.generators)

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)


def _spoly(f: PolyElement, g: PolyElement) -> PolyElement:
    R = f.ring
    K = R.domain
    lcm = R.monomial_lcm(f.LM, g.LM)
    return (f.mul_term((R.monomial_div(lcm, f.LM), K.revert(f.LC)))
            - g.mul_term((R.monomial_div(lcm, g.LM), K.revert(g.LC))))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """S-polynomial of f and g, both taken monic."""
    if f.ring != g.ring:
        raise RingMismatchError("s_polynomial across rings")
    return f.ring.wrap(_spoly(f.over(order), g.over(order)))


def _random_rem(f: PolyElement, G: Sequence[PolyElement], rng: np.random.Generator) -> PolyElement:
    R = f.ring
    K = R.domain
    lts = [g.LT for g in G]
    remainder = R.zero
    f = f.copy()
    while f:
        lm, lc = f.LT
        eligible = [k for k, (m, _) in enumerate(lts) if R.monomial_div(lm, m) is not None]
        if not eligible:
            remainder[lm] = lc
            del f[lm]
            continue
        k = eligible[rng.integers(len(eligible))]
        m, c = lts[k]
        f = f - G[k].mul_term((R.monomial_div(lm, m), K.quo(lc, c)))
    return remainder


def normal_form(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    rng: np.random.Generator | None = None,
) -> Polynomial:
    """Fully reduce f by basis.

    With ``rng`` the reducer for each step is drawn at random among the eligible
    ones; otherwise the first eligible basis element is used.
    """
    if not basis or not f:
        return f
    ring = f.ring
    if any(g.ring != ring for g in basis):
        raise RingMismatchError("normal_form across rings")
    G = [g.over(order) for g in basis if g]
    if not G:
        return f
    if rng is None:
        return ring.wrap(f.over(order).rem(G))
    return ring.wrap(_random_rem(f.over(order), G, rng))


def ideal_member(f: Polynomial, gb: GroebnerBasis) -> bool:
    return not normal_form(f, gb.generators, gb.order)


# ---------- Buchberger ----------

def _update(
    R,
    lms: list[Monomial],
    pairs: set[tuple[int, int]],
    lmf: Monomial,
) -> set[tuple[int, int]]:
    """Pairs after appending an element with leading monomial lmf (Gebauer-Moeller)."""
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    new = len(lms)
    kept = {
        (i, j) for i, j in pairs
        if (div(lcm(lms[i], lms[j]), lmf) is None
            or lcm(lms[i], lms[j]) == lcm(lms[i], lmf)
            or lcm(lms[i], lms[j]) == lcm(lms[j], lmf))
    }
    by_lcm: dict[Monomial, list[int]] = {}
    for i, lm in enumerate(lms):
        by_lcm.setdefault(lcm(lm, lmf), []).append(i)
    minimal: list[Monomial] = []
    for L in sorted(by_lcm, key=R.order):
        if all(div(L, other) is None for other in minimal):
            minimal.append(L)
    for L in minimal:
        # criterion 1: a coprime pair in the class makes the whole class redundant
        if not any(lcm(lms[i], lmf) == mul(lms[i], lmf) for i in by_lcm[L]):
            kept.add((min(by_lcm[L]), new))
    return kept


def _minimalize(G: list[PolyElement]) -> list[PolyElement]:
    R = G[0].ring
    out: list[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(R.monomial_div(f.LM, g.LM) is None for g in out):
            out.append(f)
    return out


def _interreduce(G: list[PolyElement]) -> list[PolyElement]:
    return [g.rem(G[:i] + G[i + 1:]).monic() for i, g in enumerate(G)]


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    ``ring`` is only needed when gens is empty or all zero.
    """
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise RingMismatchError("buchberger needs a ring for an empty generator list")
        ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise RingMismatchError("generators from different rings")
    order = order or ring.order
    if not gens:
        return GroebnerBasis(ring, (), order)

    R = ring.sparse(order)
    G: list[PolyElement] = []
    lmG: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple] = []

    def add(f: PolyElement) -> None:
        nonlocal pairs
        f = f.monic()
        pairs = _update(R, lmG, pairs, f.LM)
        G.append(f)
        lmG.append(f.LM)
        for i, j in pairs:
            if j == len(G) - 1:
                lcm = R.monomial_lcm(lmG[i], lmG[j])
                heapq.heappush(heap, (sum(lcm), R.order(lcm), i, j))

    for g in gens:
        add(g.over(order))

    reductions = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        r = _spoly(G[i], G[j]).rem(G)
        reductions += 1
        if r:
            add(r)
            if r.is_ground:
                break

    reduced = _interreduce(_minimalize(G))
    reduced.sort(key=lambda g: R.order(g.LM))
    LOGGER.debug("buchberger: %d inputs, %d S-reductions, %d basis elements",
                 len(gens), reductions, len(reduced))
    return GroebnerBasis(ring, tuple(ring.wrap(g) for g in reduced), order)


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Every S-polynomial reduces to zero."""
    G = [g.over(order) for g in polys if g]
    return all(
        not _spoly(G[i], G[j]).rem(G)
        for i in range(len(G))
        for j in range(i + 1, len(G))
    )
