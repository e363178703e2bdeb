"""Graded free resolutions over R = k[x0..x3].

Resolutions are computed with Schreyer's construction on a reduced Groebner
basis, then minimized by splitting off unit entries. Twist-only shapes
(``ResolutionShape``) carry the bookkeeping used by the liaison calculus.

Conventions:
    * ``FreeResolution.modules[k]`` is F_k for k = 0..length, with F_0 = R for a
      resolution of R/I. ``maps[k-1]`` is d_k: F_k -> F_{k-1}.
    * A module twist d stands for the summand R(-d).
    * Betti diagrams use the R/I presentation: b_{i,j} counts R(-i-j) in F_i.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import pandas as pd
import sympy

from mrclab.lib.errors import NonMinimalResolutionError, ResolutionError
from mrclab.lib.groebner import GroebnerBasis
from mrclab.lib.ideal_ops import T, Ideal
from mrclab.lib.polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

LOGGER = logging.getLogger(__name__)

MAX_LENGTH = 4

Column = dict[int, Polynomial]


# ============================================================================
# GRADED FREE MODULES AND MATRICES
# ============================================================================

@dataclass(frozen=True)
class GradedFreeModule:
    """⊕ R(-d) over the twists d, kept sorted ascending."""

    twists: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "twists", tuple(sorted(int(d) for d in self.twists)))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> GradedFreeModule:
        twists = []
        for d, k in counts.items():
            if k < 0:
                raise ResolutionError(f"negative multiplicity {k} for R(-{d})")
            twists.extend([d] * k)
        return cls(tuple(twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def counts(self) -> Counter:
        return Counter(self.twists)

    def is_zero(self) -> bool:
        return not self.twists

    def __add__(self, other: GradedFreeModule) -> GradedFreeModule:
        return GradedFreeModule(self.twists + other.twists)

    def remove(self, twist: int, count: int = 1) -> GradedFreeModule:
        have = self.counts()
        if have[twist] < count:
            raise ResolutionError(f"cannot remove R(-{twist})^{count} from {self}")
        have[twist] -= count
        return GradedFreeModule.from_counts(have)

    def dual(self, t: int) -> GradedFreeModule:
        """Hom(·, R(-t)): R(-d) becomes R(-(t-d))."""
        return GradedFreeModule(tuple(t - d for d in self.twists))

    def shift(self, s: int) -> GradedFreeModule:
        return GradedFreeModule(tuple(d + s for d in self.twists))

    def to_pairs(self) -> list[list[int]]:
        return [[d, k] for d, k in sorted(self.counts().items())]

    def __str__(self) -> str:
        if not self.twists:
            return "0"
        parts = []
        for d, k in sorted(self.counts().items()):
            base = "R" if d == 0 else f"R({-d})"
            parts.append(base if k == 1 else f"{base}^{k}")
        return " ⊕ ".join(parts)


@dataclass(frozen=True)
class GradedMatrix:
    """Homogeneous map source -> target, stored as sparse columns row -> entry."""

    source: GradedFreeModule
    target: GradedFreeModule
    columns: tuple[Column, ...]

    def entry(self, i: int, j: int) -> Polynomial | None:
        return self.columns[j].get(i)

    def check_degrees(self) -> bool:
        for j, col in enumerate(self.columns):
            want = self.source.twists[j]
            for i, f in col.items():
                if not f.is_homogeneous() or f.degree != want - self.target.twists[i]:
                    return False
        return True

    def unit_entries(self) -> list[tuple[int, int]]:
        return [(i, j) for j, col in enumerate(self.columns) for i, f in col.items() if f.is_constant()]

    def transpose(self) -> GradedMatrix:
        cols: list[Column] = [{} for _ in self.target.twists]
        for j, col in enumerate(self.columns):
            for i, f in col.items():
                cols[i][j] = f
        return GradedMatrix(self.target, self.source, tuple(cols))

    def __matmul__(self, other: GradedMatrix) -> list[Column]:
        """Columns of self ∘ other, entries dropped when zero."""
        out = []
        for col in other.columns:
            acc: Column = {}
            for k, g in col.items():
                for i, f in self.columns[k].items():
                    acc[i] = acc[i] + f * g if i in acc else f * g
            out.append({i: f for i, f in acc.items() if f})
        return out

    def rows_as_text(self) -> list[list[str]]:
        return [
            [str(self.columns[j].get(i, 0)) for j in range(len(self.columns))]
            for i in range(self.target.rank)
        ]


# ============================================================================
# RESOLUTIONS
# ============================================================================

@dataclass(frozen=True)
class FreeResolution:
    ring: PolyRing
    modules: tuple[GradedFreeModule, ...]
    maps: tuple[GradedMatrix, ...]

    @property
    def length(self) -> int:
        return len(self.maps)

    def check_complex(self) -> bool:
        """d_k ∘ d_{k+1} = 0 for every k."""
        return all(
            not any(col for col in self.maps[k] @ self.maps[k + 1])
            for k in range(len(self.maps) - 1)
        )

    def is_minimal(self) -> bool:
        return not any(d.unit_entries() for d in self.maps)

    def shape(self) -> ResolutionShape:
        return ResolutionShape(self.modules, start=0)

    def to_dict(self, with_matrices: bool = False) -> dict:
        out: dict = {"modules": [m.to_pairs() for m in self.modules]}
        if with_matrices:
            out["maps"] = [d.rows_as_text() for d in self.maps]
        return out


def _assemble(
    ring: PolyRing,
    twists: list[dict[int, int]],
    maps: list[dict[int, Column]],
) -> FreeResolution:
    """Build a FreeResolution, ordering each basis by (twist, provenance id).

    ``twists[k]`` maps basis ids of F_k to twists; ``maps[k-1]`` maps column ids
    of F_k to sparse columns keyed by row ids of F_{k-1}.
    """
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        maps.pop()
    order = [sorted(tw, key=lambda i: (tw[i], i)) for tw in twists]
    position = [{old: new for new, old in enumerate(ids)} for ids in order]
    modules = tuple(GradedFreeModule(tuple(twists[k][i] for i in ids)) for k, ids in enumerate(order))
    matrices = []
    for k in range(1, len(twists)):
        cols = tuple(
            {position[k - 1][r]: f for r, f in maps[k - 1][c].items()}
            for c in order[k]
        )
        matrices.append(GradedMatrix(modules[k], modules[k - 1], cols))
    return FreeResolution(ring, modules, tuple(matrices))


# ---------- Schreyer frames ----------

Vector = dict[tuple[int, Monomial], int]


class _Frame:
    """Schreyer order on a free module.

    Terms m·e_i compare by the leading term of m·(image of e_i) in the parent
    frame, ties going to the smaller index.
    """

    def __init__(self, order: MonomialOrder, parent: _Frame | None = None,
                 leads: Sequence[tuple[int, Monomial]] = (), twists: Sequence[int] = (0,)):
        self.order = order
        self.parent = parent
        self.leads = list(leads)
        self.twists = list(twists)
        self._keys: dict[tuple[int, Monomial], tuple] = {}

    def key(self, comp: int, mono: Monomial) -> tuple:
        k = (comp, mono)
        cached = self._keys.get(k)
        if cached is None:
            if self.parent is None:
                cached = self.order.key(mono)
            else:
                lc, lm = self.leads[comp]
                cached = (self.parent.key(lc, monomial_mul(mono, lm)), -comp)
            self._keys[k] = cached
        return cached

    def degree(self, comp: int, mono: Monomial) -> int:
        return sum(mono) + self.twists[comp]

    def leading(self, vec: Vector) -> tuple[int, Monomial]:
        return max(vec, key=lambda t: self.key(*t))


def _axpy(acc: Vector, vec: Vector, coeff: int, shift: Monomial, p: int) -> None:
    """acc += coeff · x^shift · vec."""
    for (comp, mono), c in vec.items():
        k = (comp, monomial_mul(mono, shift))
        value = (acc.get(k, 0) + coeff * c) % p
        if value:
            acc[k] = value
        else:
            acc.pop(k, None)


class _SchreyerLevel:
    """One Groebner basis of a submodule, ready to produce its syzygies."""

    def __init__(self, elements: list[Vector], frame: _Frame, p: int):
        self.frame = frame
        self.p = p
        self.elements = sorted(elements, key=self._sort_key)
        self.leads: list[tuple[int, Monomial]] = []
        self.inverses: list[int] = []
        self.by_comp: dict[int, list[int]] = {}
        for i, v in enumerate(self.elements):
            comp, mono = frame.leading(v)
            self.leads.append((comp, mono))
            self.inverses.append(pow(v[(comp, mono)], -1, p))
            self.by_comp.setdefault(comp, []).append(i)

    def _sort_key(self, v: Vector) -> tuple:
        # lex-descending leads within a component keep the resolution length ≤ nvars
        comp, mono = self.frame.leading(v)
        return comp, tuple(-e for e in mono)

    def next_frame(self) -> _Frame:
        return _Frame(
            self.frame.order,
            parent=self.frame,
            leads=self.leads,
            twists=[self.frame.degree(c, m) for c, m in self.leads],
        )

    def _divide(self, vec: Vector) -> Vector:
        """Quotients q with vec = Σ q_k·element_k, by top reduction."""
        p = self.p
        rest = dict(vec)
        quotients: Vector = {}
        while rest:
            comp, mono = self.frame.leading(rest)
            coeff = rest[(comp, mono)]
            k = next(
                (k for k in self.by_comp.get(comp, ()) if monomial_divides(self.leads[k][1], mono)),
                None,
            )
            if k is None:
                raise ResolutionError("S-vector does not reduce to zero; input is not a Groebner basis")
            shift = monomial_div(mono, self.leads[k][1])
            factor = coeff * self.inverses[k] % p
            quotients[(k, shift)] = (quotients.get((k, shift), 0) + factor) % p
            _axpy(rest, self.elements[k], p - factor, shift, p)
        return {k: c for k, c in quotients.items() if c}

    def syzygies(self) -> list[Vector]:
        """Schreyer syzygies, one per minimal lcm quotient in each component."""
        p = self.p
        out: list[Vector] = []
        for idxs in self.by_comp.values():
            for pos, i in enumerate(idxs):
                lm_i = self.leads[i][1]
                candidates: dict[Monomial, int] = {}
                for j in idxs[pos + 1:]:
                    u = monomial_div(monomial_lcm(lm_i, self.leads[j][1]), lm_i)
                    candidates.setdefault(u, j)
                for u, j in candidates.items():
                    if any(w != u and monomial_divides(w, u) for w in candidates):
                        continue
                    out.append(self._pair_syzygy(i, j, u, p))
        return out

    def _pair_syzygy(self, i: int, j: int, u: Monomial, p: int) -> Vector:
        lm_i, lm_j = self.leads[i][1], self.leads[j][1]
        v = monomial_div(monomial_mul(u, lm_i), lm_j)
        s: Vector = {}
        _axpy(s, self.elements[i], self.inverses[i], u, p)
        _axpy(s, self.elements[j], p - self.inverses[j], v, p)
        tau: Vector = {(i, u): 1}
        lc_i = pow(self.inverses[i], -1, p)
        extra: Vector = {(j, v): (p - self.inverses[j]) * lc_i % p}
        for k, c in self._divide(s).items():
            extra[k] = (extra.get(k, 0) - c * lc_i) % p
        for k, c in extra.items():
            if c:
                tau[k] = c
        return tau


def _to_column(vec: Vector, ring: PolyRing) -> Column:
    grouped: dict[int, dict[Monomial, int]] = {}
    for (comp, mono), c in vec.items():
        grouped.setdefault(comp, {})[mono] = c
    return {comp: Polynomial(ring, terms) for comp, terms in grouped.items()}


def _column_vector(col: Column) -> Vector:
    return {(comp, mono): c for comp, f in col.items() for mono, c in f.as_dict().items()}


# ---------- operations ----------

def syzygies(gb: GroebnerBasis) -> GradedMatrix:
    """Generators of the syzygy module of gb's elements, in gb's order.

    Args:
        gb: A homogeneous reduced Groebner basis.

    Returns:
        A matrix whose columns generate {a : Σ a_i g_i = 0}; rows follow gb.generators.
    """
    ring, p = gb.ring, gb.ring.p
    gens = list(gb.generators)
    frame = _Frame(gb.order)
    level = _SchreyerLevel([{(0, m): c for m, c in g.as_dict().items()} for g in gens], frame, p)
    # rows of the syzygy columns follow the sorted level; map them back to gb order
    sorted_polys = [_to_column(v, ring)[0] for v in level.elements]
    back = {k: gens.index(f) for k, f in enumerate(sorted_polys)}
    target = GradedFreeModule(tuple(g.degree for g in gens))
    columns = []
    for vec in level.syzygies():
        col = _to_column(vec, ring)
        columns.append({back[k]: f for k, f in col.items()})
    columns.sort(key=lambda col: max(f.degree + target.twists[k] for k, f in col.items()))
    source_twists = [
        next(f.degree + target.twists[k] for k, f in col.items()) for col in columns
    ]
    return GradedMatrix(GradedFreeModule(tuple(source_twists)), target, tuple(columns))


def free_resolution(I: Ideal, order: MonomialOrder | None = None) -> FreeResolution:
    """A (usually non-minimal) graded free resolution of R/I.

    Args:
        I: A homogeneous ideal.
        order: Monomial order for the Groebner basis; defaults to the ring order.

    Returns:
        F_0 = R <- F_1 <- ... with d∘d = 0 and length at most the number of variables.
    """
    if not I.graded:
        raise ResolutionError("free_resolution needs a homogeneous ideal")
    ring, p = I.ring, I.ring.p
    gb = I.groebner(order)
    frame = _Frame(gb.order)
    elements: list[Vector] = [{(0, m): c for m, c in g.as_dict().items()} for g in gb.generators]

    twists: list[dict[int, int]] = [{0: 0}]
    maps: list[dict[int, Column]] = []
    while elements:
        if len(maps) == ring.nvars:
            raise ResolutionError(f"resolution longer than {ring.nvars}")
        level = _SchreyerLevel(elements, frame, p)
        frame = level.next_frame()
        twists.append(dict(enumerate(frame.twists)))
        maps.append({c: _to_column(v, ring) for c, v in enumerate(level.elements)})
        elements = level.syzygies()
        LOGGER.debug("free_resolution: level %d rank %d, %d syzygies",
                     len(maps), len(level.elements), len(elements))
    return _assemble(ring, twists, maps)


def minimize(res: FreeResolution, rng: np.random.Generator | None = None) -> FreeResolution:
    """Split off every unit entry until no nonzero scalar remains.

    For a unit u at (r, c) of d_k: d_k -= (1/u)·col_c ⊗ row_r, then row r and
    column c of d_k, column r of d_{k-1} and row c of d_{k+1} are deleted.
    With ``rng`` the unit to eliminate is picked at random.
    """
    ring = res.ring
    field = ring.field
    twists = [dict(enumerate(m.twists)) for m in res.modules]
    maps = [{c: dict(col) for c, col in enumerate(d.columns)} for d in res.maps]
    cancelled = 0
    while True:
        units = [
            (k, r, c)
            for k, d in enumerate(maps, start=1)
            for c, col in d.items()
            for r, f in col.items()
            if f.is_constant()
        ]
        if not units:
            break
        k, r, c = units[rng.integers(len(units))] if rng is not None else units[0]
        d = maps[k - 1]
        pivot = d[c]
        inv = field.inv(pivot[r].coefficient((0,) * ring.nvars))
        for c2, col in d.items():
            if c2 == c or r not in col:
                continue
            factor = col[r].scale(inv)
            for row, f in pivot.items():
                value = col.get(row, ring.zero()) - factor * f
                if value:
                    col[row] = value
                else:
                    col.pop(row, None)
        del d[c]
        for col in d.values():
            col.pop(r, None)
        if k >= 2:
            del maps[k - 2][r]
        if k < len(maps):
            for col in maps[k].values():
                col.pop(c, None)
        del twists[k][c]
        del twists[k - 1][r]
        cancelled += 1
    LOGGER.debug("minimize: cancelled %d unit pairs", cancelled)
    return _assemble(ring, twists, maps)


def dualize_resolution(res: FreeResolution, t: int) -> FreeResolution:
    """Hom(·, R(-t)) of the complex: F_k -> F_{length-k}^∨(-t), maps transposed."""
    n = res.length
    if n > MAX_LENGTH:
        raise ResolutionError(f"cannot dualize a complex of length {n}")
    twists = [
        {i: t - d for i, d in enumerate(res.modules[n - k].twists)}
        for k in range(n + 1)
    ]
    maps = [
        dict(enumerate(res.maps[n - k].transpose().columns))
        for k in range(1, n + 1)
    ]
    return _assemble(res.ring, twists, maps)


# ============================================================================
# BETTI DIAGRAMS
# ============================================================================

@dataclass(frozen=True)
class BettiDiagram:
    """b_{i,j} = multiplicity of R(-i-j) in F_i of a resolution of R/I."""

    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (i, j), b in self.entries.items():
            if b < 0:
                raise ResolutionError(f"negative Betti number at ({i},{j})")
            if b:
                clean[(int(i), int(j))] = int(b)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    @classmethod
    def from_shape(cls, shape: ResolutionShape) -> BettiDiagram:
        full = shape.quotient_presentation()
        counts: Counter = Counter()
        for i, module in enumerate(full.modules):
            for d in module.twists:
                counts[(i, d - i)] += 1
        return cls(dict(counts))

    def max_row(self) -> int:
        return max((j for _, j in self.entries), default=0)

    def regularity(self) -> int:
        """reg(R/I) + 1: last nontrivial row plus one."""
        return self.max_row() + 1

    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def is_level(self) -> bool:
        last = self.projective_dimension()
        return len({j for i, j in self.entries if i == last}) == 1

    def to_shape(self) -> ResolutionShape:
        """The I-presentation: F_1.. of the ideal, dropping b_{0,0}."""
        top = self.projective_dimension()
        modules = []
        for i in range(top + 1):
            modules.append(GradedFreeModule.from_counts(
                {i + j: b for (ii, j), b in self.entries.items() if ii == i}
            ))
        return ResolutionShape(tuple(modules), start=0).ideal_presentation()

    def to_json(self) -> dict:
        return {
            "presentation": "R/I",
            "entries": [{"i": i, "j": j, "b": b} for (i, j), b in self.entries.items()],
        }

    @classmethod
    def from_json(cls, payload: Mapping | str) -> BettiDiagram:
        if isinstance(payload, str):
            payload = json.loads(payload)
        if payload.get("presentation", "R/I") != "R/I":
            raise ResolutionError(f"unsupported presentation {payload.get('presentation')!r}")
        return cls({(e["i"], e["j"]): e["b"] for e in payload["entries"]})

    def to_frame(self) -> pd.DataFrame:
        """Rows j, columns i, zeros where empty."""
        cols = range(self.projective_dimension() + 1)
        rows = range(min((j for _, j in self.entries), default=0), self.max_row() + 1)
        frame = pd.DataFrame(0, index=pd.Index(rows, name="j"), columns=pd.Index(cols, name="i"))
        for (i, j), b in self.entries.items():
            frame.loc[j, i] = b
        return frame

    def __str__(self) -> str:
        frame = self.to_frame().astype(object)
        frame[frame == 0] = "-"
        return frame.to_string()


def betti(res: FreeResolution) -> BettiDiagram:
    if not res.is_minimal():
        raise NonMinimalResolutionError("betti needs a minimal resolution; call minimize first")
    return BettiDiagram.from_shape(res.shape())


def hilbert_series_from_betti(B: BettiDiagram) -> sympy.Poly:
    """N(T) = Σ (-1)^i b_{i,j} T^{i+j}."""
    expr = sum(((-1) ** i * b * T ** (i + j) for (i, j), b in B.entries.items()), sympy.Integer(0))
    return sympy.Poly(expr, T, domain="ZZ")


# ============================================================================
# TWIST-ONLY SHAPES
# ============================================================================

@dataclass(frozen=True)
class ResolutionShape:
    """Free modules at homological positions start, start+1, ...

    ``start=1`` is the I-presentation of an ideal resolution (F_1 generators);
    ``start=0`` includes F_0 (R/I presentation, or a general complex).
    """

    modules: tuple[GradedFreeModule, ...]
    start: int = 1

    @classmethod
    def of(cls, *counts: Mapping[int, int], start: int = 1) -> ResolutionShape:
        return cls(tuple(GradedFreeModule.from_counts(c) for c in counts), start)

    @property
    def end(self) -> int:
        return self.start + len(self.modules) - 1

    @property
    def length(self) -> int:
        return len(self.modules)

    def at(self, position: int) -> GradedFreeModule:
        k = position - self.start
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return GradedFreeModule()

    def trimmed(self) -> ResolutionShape:
        mods = list(self.modules)
        while mods and mods[-1].is_zero():
            mods.pop()
        return ResolutionShape(tuple(mods), self.start)

    def with_start(self, start: int) -> ResolutionShape:
        return ResolutionShape(self.modules, start)

    def direct_sum(self, other: ResolutionShape) -> ResolutionShape:
        """Positionwise sum (horseshoe lemma on a short exact sequence)."""
        lo, hi = min(self.start, other.start), max(self.end, other.end)
        return ResolutionShape(
            tuple(self.at(k) + other.at(k) for k in range(lo, hi + 1)), lo
        ).trimmed()

    def mapping_cone(self, sub: ResolutionShape) -> ResolutionShape:
        """Shape of the cone for self/sub: position k is self_k ⊕ sub_{k-1}."""
        hi = max(self.end, sub.end + 1)
        return ResolutionShape(
            tuple(self.at(k) + sub.at(k - 1) for k in range(self.start, hi + 1)), self.start
        ).trimmed()

    def cancel(self, position: int, twist: int, count: int = 1) -> ResolutionShape:
        """Split off R(-twist)^count from positions position and position-1."""
        if count == 0:
            return self
        if not (self.start < position <= self.end):
            raise ResolutionError(f"no consecutive pair at position {position}")
        mods = list(self.modules)
        k = position - self.start
        mods[k] = mods[k].remove(twist, count)
        mods[k - 1] = mods[k - 1].remove(twist, count)
        return ResolutionShape(tuple(mods), self.start)

    def shift(self, s: int) -> ResolutionShape:
        return ResolutionShape(tuple(m.shift(s) for m in self.modules), self.start)

    def dualize_twist(self, t: int) -> ResolutionShape:
        """Position i goes to start+end-i with every twist d replaced by t-d."""
        if len(self.modules) > MAX_LENGTH + 1:
            raise ResolutionError(f"cannot dualize a shape with {len(self.modules)} modules")
        return ResolutionShape(tuple(m.dual(t) for m in reversed(self.modules)), self.start)

    def quotient_presentation(self) -> ResolutionShape:
        """Positions from 0, adding F_0 = R in front of an I-presentation."""
        if self.start == 0:
            return self
        if self.start != 1:
            raise ResolutionError(f"no R/I presentation for a shape starting at {self.start}")
        return ResolutionShape((GradedFreeModule((0,)), *self.modules), 0)

    def ideal_presentation(self) -> ResolutionShape:
        """Drop F_0 = R and start at position 1."""
        if self.start == 1:
            return self
        if self.start != 0 or self.at(0) != GradedFreeModule((0,)):
            raise ResolutionError("shape does not start with F_0 = R")
        return ResolutionShape(self.modules[1:], 1)

    def hilbert_numerator(self) -> sympy.Poly:
        """Σ_k (-1)^k Σ_d T^d over the R/I presentation."""
        full = self.quotient_presentation() if self.start == 1 else self
        expr = sympy.Integer(0)
        for k, module in enumerate(full.modules, start=full.start):
            for d, n in module.counts().items():
                expr += (-1) ** k * n * T ** d
        return sympy.Poly(expr, T, domain="ZZ")

    def betti(self) -> BettiDiagram:
        return BettiDiagram.from_shape(self)

    def to_json(self) -> dict:
        return {"start": self.start, "modules": [m.to_pairs() for m in self.modules]}

    @classmethod
    def from_json(cls, payload: Mapping) -> ResolutionShape:
        return cls.of(*({d: k for d, k in pairs} for pairs in payload["modules"]),
                      start=payload.get("start", 1))

    def __str__(self) -> str:
        return " → ".join(["0", *(str(m) for m in reversed(self.modules))])


def dualize_twist(obj: ResolutionShape | FreeResolution, t: int):
    """Hom(·, R(-t)) applied to a resolution or a shape."""
    if isinstance(obj, FreeResolution):
        return dualize_resolution(obj, t)
    return obj.dualize_twist(t)


def koszul_shape(degrees: Iterable[int]) -> ResolutionShape:
    """I-presentation of the Koszul resolution of a complete intersection."""
    degrees = list(degrees)
    positions: list[Counter] = [Counter() for _ in degrees]
    n = len(degrees)
    for mask in range(1, 1 << n):
        chosen = [degrees[i] for i in range(n) if mask >> i & 1]
        positions[len(chosen) - 1][sum(chosen)] += 1
    return ResolutionShape.of(*positions)
