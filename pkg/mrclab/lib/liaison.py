"""Linkage of point sets on a smooth cubic surface X.

Two layers live here. ``ci_residual`` runs a complete-intersection link on
actual ideals. Everything else is twist bookkeeping: ACM curve classes on X,
the arithmetically Gorenstein divisors mH_C - K_C on them, and the four links
that carry Z_m(a) through n(a), o(a+1), p(a+1) to Z_m(a+2), each as mapping cones,
dual-twists and declared cancellations of ResolutionShape values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Sequence

import numpy as np
import sympy

from mrclab.lib import fp_linalg
from mrclab.lib.errors import LiaisonError, PredictionWindowError, ResolutionError
from mrclab.lib.ideal_ops import (
    T,
    Ideal,
    coefficient_matrix,
    colon,
    degree_from_numerator,
    degree_of_points,
    hilbert_series_numerator,
)
from mrclab.lib.mrc import CUBIC_DEGREE, FamilyTag, expected_resolution, family_size, theorem_shape
from mrclab.lib.polyring import Polynomial
from mrclab.lib.resolution import GradedFreeModule, ResolutionShape, koszul_shape

LOGGER = logging.getLogger(__name__)

LINK_INDICES = (1, 2, 3, 4)
CI_RETRIES = 10
CUBIC_SHAPE = ResolutionShape.of({CUBIC_DEGREE: 1})


# ---------- curve classes ----------

class CurveKind(str, Enum):
    LINE = "L+(a-1)H"
    CONIC = "C0+(a-1)H"
    TWISTED_CUBIC = "Γ+(a-1)H"
    HYPERPLANE = "aH"


# I_{C,X} over R for the a = 1 member of each class; the (a-1)H part shifts by a-1
_BASE_ON_X = {
    CurveKind.LINE: ResolutionShape.of({1: 2}, {2: 1, 3: 1}),
    CurveKind.CONIC: ResolutionShape.of({1: 1, 2: 1}, {3: 2}),
    CurveKind.TWISTED_CUBIC: ResolutionShape.of({2: 3}, {3: 3}),
    CurveKind.HYPERPLANE: ResolutionShape.of({1: 1}, {4: 1}),
}


@dataclass(frozen=True)
class CurveClass:
    kind: CurveKind
    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CurveKind(self.kind))
        if self.a < 1:
            raise LiaisonError(f"curve classes need a >= 1, got {self.a}")

    @property
    def degree(self) -> int:
        return curve_invariants(self)[0]

    @property
    def genus(self) -> int:
        return curve_invariants(self)[1]

    def __str__(self) -> str:
        a = self.a
        if self.kind is CurveKind.HYPERPLANE:
            return f"{a}H"
        head = {CurveKind.LINE: "L", CurveKind.CONIC: "C0", CurveKind.TWISTED_CUBIC: "Γ"}[self.kind]
        return head if a == 1 else f"{head}+{a - 1}H"


def curve_invariants(c: CurveClass) -> tuple[int, int, int]:
    """(degree, genus, dimension of the linear system) of an ACM curve on X."""
    a = c.a
    degree, twice_genus = {
        CurveKind.LINE: (3 * a - 2, 3 * a * a - 7 * a + 4),
        CurveKind.CONIC: (3 * a - 1, 3 * a * a - 5 * a + 2),
        CurveKind.TWISTED_CUBIC: (3 * a, 3 * a * a - 3 * a),
        CurveKind.HYPERPLANE: (3 * a, 3 * a * a - 3 * a + 2),
    }[c.kind]
    genus = twice_genus // 2
    return degree, genus, degree + genus - 1


def curve_ideal_shape_on_x(c: CurveClass) -> ResolutionShape:
    """Resolution shape over R of I_{C,X} = I_C / (f)."""
    base = _BASE_ON_X[c.kind]
    return base.shift(c.a - 1)


def curve_ideal_shape(c: CurveClass) -> ResolutionShape:
    """Resolution shape of I_C, the horseshoe of (f) and I_{C,X}."""
    return CUBIC_SHAPE.direct_sum(curve_ideal_shape_on_x(c))


# ---------- divisors and link data ----------

@dataclass(frozen=True)
class DivisorClass:
    """mH_C, optionally minus the canonical class K_C."""

    m: int
    minus_canonical: bool = False

    def degree_on(self, c: CurveClass) -> int:
        d, g, _ = curve_invariants(c)
        return self.m * d - (2 * g - 2 if self.minus_canonical else 0)

    def __str__(self) -> str:
        return f"{self.m}H_C-K_C" if self.minus_canonical else f"{self.m}H_C"


@dataclass(frozen=True)
class LinkSpec:
    index: int
    a: int
    curve: CurveClass
    divisor: DivisorClass
    source: tuple[FamilyTag, int]
    target: tuple[FamilyTag, int]
    n: int
    n_prime: int
    deg_G: int
    socle_twist: int

    def to_json(self) -> dict:
        d, g, dim = curve_invariants(self.curve)
        return {
            "index": self.index,
            "a": self.a,
            "curve": str(self.curve),
            "curve_degree": d,
            "curve_genus": g,
            "linear_system_dim": dim,
            "divisor": str(self.divisor),
            "source": f"{self.source[0].value}({self.source[1]})",
            "target": f"{self.target[0].value}({self.target[1]})",
            "n": self.n,
            "n_prime": self.n_prime,
            "deg_G": self.deg_G,
            "socle_twist": self.socle_twist,
        }


def _link_data(index: int, a: int) -> tuple:
    if index == 1:
        return (CurveClass(CurveKind.HYPERPLANE, a), DivisorClass(a),
                (FamilyTag.M, a), (FamilyTag.N, a), 2 * a + 3)
    if index == 2:
        return (CurveClass(CurveKind.CONIC, a), DivisorClass(2 * a - 2, True),
                (FamilyTag.N, a - 1), (FamilyTag.O, a), 2 * a + 2)
    if index == 3:
        return (CurveClass(CurveKind.TWISTED_CUBIC, a), DivisorClass(2 * a - 1, True),
                (FamilyTag.O, a), (FamilyTag.P, a), 2 * a + 3)
    return (CurveClass(CurveKind.CONIC, a + 1), DivisorClass(2 * a, True),
            (FamilyTag.P, a), (FamilyTag.M, a + 1), 2 * a + 4)


def link_parameters(index: int, a: int) -> LinkSpec:
    """Curve, divisor and sizes of the link with this index at parameter a.

    Raises LiaisonError when n + n' differs from the divisor degree or when
    either size leaves the window g <= n, n' <= d + g - 1.
    """
    if index not in LINK_INDICES:
        raise LiaisonError(f"link index must be one of {LINK_INDICES}, got {index}")
    if a < 2:
        raise LiaisonError(f"links need a >= 2, got {a}")
    curve, divisor, source, target, t = _link_data(index, a)
    n, n_prime = family_size(*source), family_size(*target)
    deg_G = divisor.degree_on(curve)
    if n + n_prime != deg_G:
        raise LiaisonError(f"link {index} at a={a}: {n} + {n_prime} != deg {divisor} = {deg_G}")
    d, g, _ = curve_invariants(curve)
    for size in (n, n_prime):
        if not g <= size <= d + g - 1:
            raise LiaisonError(
                f"link {index} at a={a}: {size} points outside the window [{g}, {d + g - 1}] on {curve}")
    return LinkSpec(index, a, curve, divisor, source, target, n, n_prime, deg_G, t)


# ---------- executable CI link ----------

def koszul_numerator(degrees: Sequence[int]) -> sympy.Poly:
    return reduce(lambda acc, d: acc * sympy.Poly(1 - T ** d, T, domain="ZZ"),
                  degrees, sympy.Poly(1, T, domain="ZZ"))


def is_regular_sequence(forms: Sequence[Polynomial]) -> bool:
    """Homogeneous forms are regular iff their ideal has the Koszul Hilbert numerator."""
    if not forms:
        return True
    ideal = Ideal(forms[0].ring, forms)
    return hilbert_series_numerator(ideal) == koszul_numerator([g.degree for g in forms])


def ci_residual(I_Z: Ideal, G_forms: Sequence[Polynomial]) -> Ideal:
    """(G_forms) : I_Z for three forms of I_Z that form a regular sequence."""
    forms = list(G_forms)
    if len(forms) != 3:
        raise LiaisonError(f"a complete intersection of points needs 3 forms, got {len(forms)}")
    if not all(g and g.is_homogeneous() for g in forms):
        raise LiaisonError("complete-intersection forms must be nonzero and homogeneous")
    for g in forms:
        if g not in I_Z:
            raise LiaisonError(f"form of degree {g.degree} does not lie in I_Z")
    if not is_regular_sequence(forms):
        raise LiaisonError(f"forms of degrees {[g.degree for g in forms]} are not a regular sequence")

    ci = Ideal(I_Z.ring, forms)
    residual = colon(ci, I_Z)
    deg_ci = int(np.prod([g.degree for g in forms]))
    deg_z, deg_res = degree_of_points(I_Z), degree_of_points(residual)
    if deg_z + deg_res != deg_ci:
        raise LiaisonError(f"degree ledger broken: {deg_z} + {deg_res} != {deg_ci}")
    LOGGER.info("ci_residual: CI%s of degree %d links %d points to %d",
                tuple(g.degree for g in forms), deg_ci, deg_z, deg_res)
    return residual


def graded_piece(I: Ideal, d: int) -> list[Polynomial]:
    """A basis of I_d built from the generators of degree <= d."""
    ring = I.ring
    spanning = [
        g.mul_term(1, m)
        for g in I.generators if g.degree <= d
        for m in ring.monomials(d - g.degree)
    ]
    if not spanning:
        return []
    monos = ring.monomials(d)
    echelon, _ = fp_linalg.row_reduce(coefficient_matrix(spanning, {m: k for k, m in enumerate(monos)}), ring.p)
    return [Polynomial(ring, {m: int(c) for m, c in zip(monos, row) if c}) for row in echelon]


def _random_combination(basis: Sequence[Polynomial], rng: np.random.Generator) -> Polynomial:
    ring = basis[0].ring
    out = ring.zero()
    for f, c in zip(basis, rng.integers(0, ring.p, size=len(basis))):
        out = out + f.scale(int(c))
    return out


def random_ci_forms(
    I_Z: Ideal,
    cubic: Polynomial,
    degree: int,
    rng: np.random.Generator,
    retries: int = CI_RETRIES,
) -> list[Polynomial]:
    """(cubic, g, h) with g, h random in (I_Z)_degree, redrawn until regular."""
    basis = graded_piece(I_Z, degree)
    if len(basis) < 2:
        raise LiaisonError(f"I_Z has only {len(basis)} independent forms of degree {degree}")
    for attempt in range(1, retries + 1):
        g, h = _random_combination(basis, rng), _random_combination(basis, rng)
        forms = [cubic, g, h]
        if g and h and is_regular_sequence(forms):
            LOGGER.debug("random_ci_forms: regular sequence on attempt %d", attempt)
            return forms
    raise LiaisonError(f"no regular sequence (3,{degree},{degree}) in I_Z after {retries} draws")


# ---------- shape calculus for the links ----------

def residual_betti_nonminimal(F: ResolutionShape, G: ResolutionShape, t: int) -> ResolutionShape:
    """Resolution shape of the residual I_{Z'} before any cancellation.

    F resolves I_Z (or I_{Z,C}), G resolves the Gorenstein ideal I_G (or I_{G,C})
    and ends in R(-t). The cone of G -> F resolves I_Z/I_G; its dual twisted by
    -t resolves I_{Z'}, so position k holds F_{4-k}^∨(-t) ⊕ G_{3-k}^∨(-t).
    """
    for name, shape in (("F", F), ("G", G)):
        if shape.start != 1 or shape.length != 3:
            raise LiaisonError(f"{name} must be a length-3 ideal resolution, got {shape}")
    if G.at(3) != GradedFreeModule((t,)):
        raise LiaisonError(f"G must end in R(-{t}), got {G.at(3)}")
    cone = F.mapping_cone(G)
    return cone.dualize_twist(t).with_start(0).ideal_presentation()


def ag_divisor_shape(curve: CurveClass, m: int) -> tuple[ResolutionShape, int]:
    """I_{G,C} for G in |mH_C - K_C| on an ACM curve, with its socle twist 4 + m."""
    t = 4 + m
    quotient = curve_ideal_shape(curve).quotient_presentation()
    return quotient.dualize_twist(t).with_start(1), t


@dataclass(frozen=True)
class ShapeFixture:
    name: str
    a: int
    shape: ResolutionShape
    socle_twist: int | None = None
    curve: CurveClass | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "a": self.a,
            "socle_twist": self.socle_twist,
            "curve": str(self.curve) if self.curve else None,
            **self.shape.to_json(),
        }


def _strip_cubic(shape: ResolutionShape) -> ResolutionShape:
    """I_{Z,X} from I_Z = (f) ⊕ I_{Z,X}: drop the cubic generator."""
    mods = list(shape.modules)
    mods[0] = mods[0].remove(CUBIC_DEGREE)
    return ResolutionShape(tuple(mods), shape.start)


def _o_points_in_cubic_curve(a: int) -> ResolutionShape:
    on_x = _strip_cubic(theorem_shape(FamilyTag.O, a))
    curve = curve_ideal_shape_on_x(CurveClass(CurveKind.TWISTED_CUBIC, a))
    return on_x.mapping_cone(curve).cancel(3, a + 2, 3)


def _p_points_in_conic_curve(a: int) -> ResolutionShape:
    on_x = _strip_cubic(theorem_shape(FamilyTag.P, a))
    curve = curve_ideal_shape_on_x(CurveClass(CurveKind.CONIC, a + 1))
    return on_x.mapping_cone(curve).cancel(2, a + 1, 1)


def gorenstein_fixture(name: str, a: int) -> ShapeFixture:
    """Named twist shapes used by the four links.

    resGor, secondlink_G and thirdlink_G are Gorenstein divisors on curves;
    ci is the Koszul complex of (3, a, a); lemacorba and resenC are the
    ideals of the o(a) and p(a) point sets inside their linking curves.
    """
    if a < 2:
        raise LiaisonError(f"fixtures need a >= 2, got {a}")
    if name == "resGor":
        curve = CurveClass(CurveKind.CONIC, a + 1)
        shape, t = ag_divisor_shape(curve, 2 * a)
        return ShapeFixture(name, a, shape, t, curve)
    if name == "secondlink_G":
        curve = CurveClass(CurveKind.CONIC, a)
        shape, t = ag_divisor_shape(curve, 2 * a - 2)
        return ShapeFixture(name, a, shape, t, curve)
    if name == "thirdlink_G":
        curve = CurveClass(CurveKind.TWISTED_CUBIC, a)
        shape, t = ag_divisor_shape(curve, 2 * a - 1)
        return ShapeFixture(name, a, shape, t, curve)
    if name == "ci":
        return ShapeFixture(name, a, koszul_shape([CUBIC_DEGREE, a, a]), 2 * a + 3,
                            CurveClass(CurveKind.HYPERPLANE, a))
    if name == "lemacorba":
        return ShapeFixture(name, a, _o_points_in_cubic_curve(a), None, CurveClass(CurveKind.TWISTED_CUBIC, a))
    if name == "resenC":
        return ShapeFixture(name, a, _p_points_in_conic_curve(a), None, CurveClass(CurveKind.CONIC, a + 1))
    raise LiaisonError(f"unknown fixture {name!r}")


FIXTURE_NAMES = ("resGor", "secondlink_G", "thirdlink_G", "ci", "lemacorba", "resenC")


# ---------- the four links ----------

@dataclass(frozen=True)
class Cancellation:
    """R(-twist)^count split off between positions position and position-1."""

    position: int
    twist: int
    count: int = 1

    def __str__(self) -> str:
        power = f"^{self.count}" if self.count > 1 else ""
        return f"R(-{self.twist}){power} at {self.position - 1}/{self.position}"

    def to_json(self) -> dict:
        return {"position": self.position, "twist": self.twist, "count": self.count}


@dataclass(frozen=True)
class LinkStep:
    spec: LinkSpec
    input_shape: ResolutionShape
    nonminimal: ResolutionShape
    cancellations: tuple[Cancellation, ...]
    output: ResolutionShape
    trace: tuple[tuple[str, ResolutionShape], ...] = field(default=(), compare=False)

    @property
    def expected(self) -> ResolutionShape:
        return expected_resolution(*self.spec.target)

    @property
    def verdict(self) -> bool:
        return self.output == self.expected

    def to_json(self) -> dict:
        return {
            **self.spec.to_json(),
            "shapes": {
                "input": self.input_shape.to_json(),
                "nonminimal": self.nonminimal.to_json(),
                "output": self.output.to_json(),
            },
            "cancellations": [c.to_json() for c in self.cancellations],
            "trace": [{"step": label, **shape.to_json()} for label, shape in self.trace],
            "verdict": self.verdict,
        }


def _points_degree(shape: ResolutionShape) -> int:
    return degree_from_numerator(shape.hilbert_numerator())


def _link_pipeline(spec: LinkSpec, source: ResolutionShape):
    """(F, G, cancellations, trace) for one link, F and G ready for the cone."""
    a = spec.a
    trace: list[tuple[str, ResolutionShape]] = [(f"I_Z for {spec.source[0].value}({spec.source[1]})", source)]
    if spec.index == 1:
        G = koszul_shape([CUBIC_DEGREE, a, a])
        trace.append((f"Koszul CI(3,{a},{a})", G))
        cancels = (Cancellation(3, a + 3, 2), Cancellation(3, 2 * a, 1))
        return source, G, cancels, trace

    on_x = _strip_cubic(source)
    trace.append(("I_{Z,X}: drop the cubic", on_x))
    curve_on_x = curve_ideal_shape_on_x(spec.curve)
    trace.append((f"I_{{C,X}} for C ~ {spec.curve}", curve_on_x))
    cone = on_x.mapping_cone(curve_on_x)
    trace.append(("I_{Z,C}: cone of I_{C,X} -> I_{Z,X}", cone))
    if spec.index == 3:
        cone = cone.cancel(3, a + 2, 3)
        trace.append((f"cancel R(-{a + 2})^3", cone))
    elif spec.index == 4:
        cone = cone.cancel(2, a + 1, 1)
        trace.append((f"cancel R(-{a + 1})", cone))
    G, t = ag_divisor_shape(spec.curve, spec.divisor.m)
    if t != spec.socle_twist:
        raise LiaisonError(f"socle twist {t} disagrees with link data {spec.socle_twist}")
    trace.append((f"I_{{G,C}} for G ~ {spec.divisor}", G))
    cancels = {
        2: (Cancellation(2, a + 1, 1),),
        3: (),
        4: (Cancellation(2, a + 2, 1), Cancellation(3, a + 3, 2)),
    }[spec.index]
    return cone, G, cancels, trace


def apply_link_prop(index: int, a: int, source: ResolutionShape | None = None) -> LinkStep:
    """Run one link symbolically and check its output against the theorem shape.

    ``source`` is the resolution shape of the points being linked; by default
    it is the theorem shape of the link's source family.
    """
    if a < 3:
        raise LiaisonError(f"symbolic links need a >= 3, got {a}")
    spec = link_parameters(index, a)
    if source is None:
        # link 2 at a = 3 starts from n(2), a base case below the theorem's range
        source = theorem_shape(*spec.source)
    F, G, cancels, trace = _link_pipeline(spec, source)
    nonminimal = residual_betti_nonminimal(F, G, spec.socle_twist)
    trace.append((f"dual of the cone, twisted by -{spec.socle_twist}", nonminimal))
    output = nonminimal
    try:
        for c in cancels:
            output = output.cancel(c.position, c.twist, c.count)
    except ResolutionError as err:
        raise LiaisonError(f"link {index} at a={a}: declared cancellation failed: {err}") from err
    output = output.trimmed()
    trace.append(("minimal", output))

    deg_in, deg_out = _points_degree(source), _points_degree(output)
    if deg_in + deg_out != spec.deg_G:
        raise LiaisonError(f"link {index} at a={a}: {deg_in} + {deg_out} != deg G = {spec.deg_G}")
    step = LinkStep(spec, source, nonminimal, tuple(cancels), output, tuple(trace))
    LOGGER.debug("link %d at a=%d: %s -> %s (%d cancellations)",
                 index, a, source, output, len(cancels))
    return step


def chain_links(a: int) -> tuple[tuple[int, int], ...]:
    """(index, a) of the four links in the pass m(a) -> n(a) -> o(a+1) -> p(a+1) -> m(a+2)."""
    return ((1, a), (2, a + 1), (3, a + 1), (4, a + 1))


def link_chain(a_from: int, a_to: int) -> list[LinkStep]:
    """Link m(a_from) through to m(a_to), each link consuming the previous output.

    Every pass moves a by two, so a_to - a_from must be even.
    """
    if not 3 <= a_from <= a_to:
        raise PredictionWindowError(f"chains need 3 <= a_from <= a_to, got {a_from}, {a_to}")
    if (a_to - a_from) % 2:
        raise PredictionWindowError(f"links keep the parity of a: m({a_from}) does not reach m({a_to})")
    shape = expected_resolution(FamilyTag.M, a_from)
    steps: list[LinkStep] = []
    for a in range(a_from, a_to, 2):
        for index, at in chain_links(a):
            step = apply_link_prop(index, at, source=shape)
            if not step.verdict:
                raise LiaisonError(f"link {index} at a={at}: output {step.output} differs from {step.expected}")
            shape = step.output
            steps.append(step)
    if shape != expected_resolution(FamilyTag.M, a_to):
        raise LiaisonError(f"chain ended at {shape}, expected m({a_to})")
    LOGGER.info("link_chain %d -> %d: %d links, all minimal shapes match", a_from, a_to, len(steps))
    return steps


def chain_report(a_from: int, a_to: int, steps: Sequence[LinkStep]) -> dict:
    final = steps[-1].output if steps else expected_resolution(FamilyTag.M, a_from)
    return {
        "a_from": a_from,
        "a_to": a_to,
        "final": final.to_json(),
        "passed": all(s.verdict for s in steps),
        "steps": [s.to_json() for s in steps],
    }
