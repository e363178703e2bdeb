"""Experiments with random points on a smooth cubic surface.

A trial samples z points on X, builds their ideal, computes and minimizes a
free resolution and compares the Betti diagram with the prediction. The first
link experiment additionally links the points through a complete intersection
(f, g, h) and checks the residual.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from tqdm import tqdm

from mrclab.lib.errors import ConfigError, IdealError, MrcLabError, SamplingError
from mrclab.lib.ideal_ops import (
    Ideal,
    ProjectivePoint,
    hilbert_function,
    hilbert_series_numerator,
    read_points,
    vanishing_ideal,
)
from mrclab.lib.liaison import ci_residual, random_ci_forms
from mrclab.lib.mrc import (
    CUBIC_DEGREE,
    MIN_WINDOW,
    FamilyTag,
    MrcVerdict,
    check_mrc,
    expected_resolution,
    family_size,
    p_cubic,
    predicted_diagram,
    select_r,
)
from mrclab.lib.polyring import Polynomial, PolyRing, PrimeField
from mrclab.lib.resolution import BettiDiagram, betti, free_resolution, hilbert_series_from_betti, minimize

LOGGER = logging.getLogger(__name__)

DRAWS_PER_POINT = 1000
SMOOTH_RETRIES = 20
SURFACES = ("fermat", "random")


# ---------- surfaces ----------

@dataclass(frozen=True)
class SurfaceSpec:
    f: Polynomial
    provenance: str
    smoothness_checked: bool = False

    def __post_init__(self) -> None:
        if not (self.f.is_homogeneous() and self.f.degree == CUBIC_DEGREE):
            raise IdealError(f"surface equation must be a cubic form, got {self.f}")

    @property
    def ring(self) -> PolyRing:
        return self.f.ring

    def contains(self, pt: ProjectivePoint) -> bool:
        return self.f.evaluate(pt.coords) == 0

    def to_json(self) -> dict:
        return {"f": str(self.f), "provenance": self.provenance, "smooth": self.smoothness_checked}


def _artinian_bound(J: Ideal) -> int | None:
    """Least D with HF_{R/J}(d) = 0 for all d >= D, or None if R/J is not Artinian."""
    lms = J.groebner().leading_monomials()
    nvars = J.ring.nvars
    powers = [None] * nvars
    for m in lms:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            powers[i] = min(m[i], powers[i] or m[i])
    if any(e is None for e in powers):
        return None
    top = sum(e - 1 for e in powers) + 1
    return next(d for d in range(top + 1) if hilbert_function(J, d) == 0)


def is_smooth(f: Polynomial) -> bool:
    """X = V(f) is smooth iff (f, ∂f/∂x_0, ..., ∂f/∂x_3) has no projective zero."""
    if not (f and f.is_homogeneous() and f.degree == CUBIC_DEGREE):
        raise IdealError(f"is_smooth expects a cubic form, got {f}")
    ring = f.ring
    J = Ideal(ring, [f, *(f.diff(i) for i in range(ring.nvars))])
    bound = _artinian_bound(J)
    LOGGER.debug("is_smooth: Jacobian quotient vanishes from degree %s", bound)
    return bound is not None


def fermat_cubic(p: int) -> SurfaceSpec:
    ring = PolyRing(PrimeField(p))
    f = sum((x ** 3 for x in ring.gens()), ring.zero())
    if not is_smooth(f):
        raise ConfigError(f"the Fermat cubic is singular over F_{p}")
    return SurfaceSpec(f, "fermat", True)


def random_cubic(field: PrimeField, seed: int, retries: int = SMOOTH_RETRIES) -> SurfaceSpec:
    ring = PolyRing(field)
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        f = ring.random_form(CUBIC_DEGREE, rng)
        if f and f.degree == CUBIC_DEGREE and is_smooth(f):
            return SurfaceSpec(f, f"random({seed})", True)
    raise SamplingError(f"no smooth cubic in {retries} draws over F_{field.p}")


def make_surface(kind: str, p: int, seed: int) -> SurfaceSpec:
    if kind == "fermat":
        return fermat_cubic(p)
    if kind == "random":
        return random_cubic(PrimeField(p), seed)
    raise ConfigError(f"unknown surface {kind!r}; choose from {SURFACES}")


# ---------- sampling ----------

def _x0_coefficients(f: Polynomial) -> list[dict[tuple[int, ...], int]]:
    """f = Σ_k c_k(x1, x2, x3) x0^k, as one term map per k."""
    coeffs: list[dict[tuple[int, ...], int]] = [{} for _ in range(CUBIC_DEGREE + 1)]
    for m, c in f.as_dict().items():
        coeffs[m[0]][m[1:]] = c
    return coeffs


def sample_points(s: SurfaceSpec, count: int, seed: int) -> list[ProjectivePoint]:
    """count distinct random F_p-points of X.

    Draw (x1, x2, x3), scan all x0 in F_p for roots of f(x0, x1, x2, x3) and
    take one at random; redraw on no root, on (x1, x2, x3) = 0 or on a repeat.
    """
    if count < 1:
        raise SamplingError(f"need at least one point, got {count}")
    ring = s.ring
    p = ring.p
    rng = np.random.default_rng(seed)
    xs = np.arange(p, dtype=np.int64)
    coeffs = _x0_coefficients(s.f)
    seen: set[ProjectivePoint] = set()
    points: list[ProjectivePoint] = []
    budget = DRAWS_PER_POINT * count
    for _ in range(budget):
        tail = [int(v) for v in rng.integers(0, p, size=3)]
        if not any(tail):
            continue
        c = [
            sum(v * pow(tail[0], m[0], p) * pow(tail[1], m[1], p) * pow(tail[2], m[2], p)
                for m, v in ck.items()) % p
            for ck in coeffs
        ]
        values = (((c[3] * xs + c[2]) % p * xs + c[1]) % p * xs + c[0]) % p
        roots = np.flatnonzero(values == 0)
        if roots.size == 0:
            continue
        x0 = int(roots[rng.integers(roots.size)])
        pt = ProjectivePoint.of([x0, *tail], ring.field)
        if pt in seen:
            continue
        seen.add(pt)
        points.append(pt)
        if len(points) == count:
            return points
    raise SamplingError(f"only {len(points)} of {count} points after {budget} draws over F_{p}")


# ---------- configuration ----------

@dataclass(frozen=True)
class ExperimentConfig:
    prime: int = 32003
    seed: int = 0
    family: FamilyTag | None = None
    a: int | None = None
    z: int | None = None
    trials: int = 1
    surface: str = "fermat"
    output: Path | None = None
    points_file: Path | None = None

    def validate(self) -> ExperimentConfig:
        PrimeField(self.prime)
        if self.prime in (2, 3):
            raise ConfigError(f"characteristic {self.prime} is excluded for cubic fixtures")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        by_family = self.family is not None or self.a is not None
        if by_family == (self.z is not None):
            raise ConfigError("give either --family with --a, or --z")
        if by_family:
            if self.family is None or self.a is None:
                raise ConfigError("--family and --a go together")
            if self.family not in {t.value for t in FamilyTag}:
                raise ConfigError(f"unknown family {self.family!r}")
            if self.a < 3:
                raise ConfigError(f"family runs need a >= 3, got {self.a}")
        else:
            if self.z < 1:
                raise ConfigError(f"z must be >= 1, got {self.z}")
            r, valid = select_r(self.z)
            if not valid:
                raise ConfigError(f"z={self.z} gives r={r}; explicit runs need r >= {MIN_WINDOW}")
        if self.surface not in SURFACES:
            raise ConfigError(f"unknown surface {self.surface!r}; choose from {SURFACES}")
        if self.points_file is not None and self.trials != 1:
            raise ConfigError("a points file replaces sampling for exactly one trial")
        if self.output is not None and Path(self.output).is_dir():
            raise ConfigError(f"output {self.output} is a directory, expected a report file")
        return self

    @property
    def point_count(self) -> int:
        if self.z is not None:
            return self.z
        return family_size(self.family, self.a)

    @property
    def d_max(self) -> int:
        if self.a is not None:
            return self.a + 2
        return select_r(self.z).r + 2

    def trial_seed(self, index: int, attempt: int = 0) -> int:
        state = np.random.SeedSequence([self.seed, index, attempt]).generate_state(1)
        return int(state[0])

    def target(self) -> BettiDiagram:
        """Expected diagram: the theorem at a = 3, the Q-formula otherwise."""
        if self.a is not None and self.a == 3:
            return expected_resolution(self.family, self.a).betti()
        predicted = predicted_diagram(self.point_count).diagram
        if self.a is not None:
            theorem = expected_resolution(self.family, self.a).betti()
            if theorem != predicted:
                raise MrcLabError(f"prediction and theorem disagree for {self.family}({self.a})")
        return predicted

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "seed": self.seed,
            "family": FamilyTag(self.family).value if self.family is not None else None,
            "a": self.a,
            "z": self.point_count,
            "trials": self.trials,
            "surface": self.surface,
            "points_file": str(self.points_file) if self.points_file else None,
            "output": str(self.output) if self.output else None,
        }


# ---------- reports ----------

@dataclass
class TrialReport:
    index: int
    seeds: list[int]
    points: list[ProjectivePoint]
    diagram: BettiDiagram
    target: BettiDiagram
    mrc: MrcVerdict | None
    generality: bool
    hilbert_crosscheck: bool
    passed: bool
    timings: dict[str, float] = field(default_factory=dict)
    link: dict | None = None

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "seeds": self.seeds,
            "resampled": len(self.seeds) > 1,
            "points": [list(pt.coords) for pt in self.points],
            "betti": self.diagram.to_json(),
            "predicted": self.target.to_json(),
            "mrc": self.mrc.to_json() if self.mrc else None,
            "generality": self.generality,
            "hilbert_crosscheck": self.hilbert_crosscheck,
            "passed": self.passed,
        }
        if self.link is not None:
            out["link"] = self.link
        out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


@dataclass
class RunReport:
    kind: str
    config: dict
    surface: SurfaceSpec
    trials: list[TrialReport]

    @property
    def passed(self) -> bool:
        return bool(self.trials) and all(t.passed for t in self.trials)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "surface": self.surface.to_json(),
            "retry_policy": "one resample with a fresh recorded seed",
            "passed": self.passed,
            "trials": [t.to_json() for t in self.trials],
            "timings": {"total": round(sum(sum(t.timings.values()) for t in self.trials), 4)},
        }


# ---------- trials ----------

def generality_signature(I: Ideal, z: int, d_max: int) -> bool:
    """HF_{R/I}(d) = min(P_X(d), z) for d = 0..d_max + 1."""
    return all(hilbert_function(I, d) == min(p_cubic(d), z) for d in range(d_max + 2))


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def lap(self, name: str, start: float) -> None:
        self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start


def minimal_diagram(I: Ideal, timer: _Timer | None = None) -> BettiDiagram:
    start = time.perf_counter()
    res = free_resolution(I)
    if timer:
        timer.lap("resolution", start)
    start = time.perf_counter()
    diagram = betti(minimize(res))
    if timer:
        timer.lap("minimize", start)
    return diagram


def _load_points(cfg: ExperimentConfig, surface: SurfaceSpec) -> list[ProjectivePoint]:
    points = read_points(cfg.points_file, surface.ring.field)
    if len(points) != cfg.point_count:
        raise ConfigError(f"{cfg.points_file} holds {len(points)} points, expected {cfg.point_count}")
    off = [str(pt) for pt in points if not surface.contains(pt)]
    if off:
        raise IdealError(f"points not on the surface: {', '.join(off[:3])}")
    return points


def run_trial(cfg: ExperimentConfig, surface: SurfaceSpec, index: int) -> TrialReport:
    target = cfg.target()
    z = cfg.point_count
    r, valid = select_r(z)
    attempts = 1 if cfg.points_file else 2
    seeds: list[int] = []
    report = None
    for attempt in range(attempts):
        timer = _Timer()
        seed = cfg.trial_seed(index, attempt)
        seeds.append(seed)
        start = time.perf_counter()
        if cfg.points_file:
            points = _load_points(cfg, surface)
        else:
            points = sample_points(surface, z, seed)
        timer.lap("sample", start)

        start = time.perf_counter()
        I = vanishing_ideal(points, cfg.d_max, surface.ring)
        timer.lap("ideal", start)
        diagram = minimal_diagram(I, timer)

        start = time.perf_counter()
        generality = generality_signature(I, z, cfg.d_max)
        crosscheck = hilbert_series_from_betti(diagram) == hilbert_series_numerator(I)
        mrc = check_mrc(diagram, z) if valid else None
        timer.lap("checks", start)

        passed = diagram == target and generality and crosscheck and (mrc is None or mrc.passed)
        report = TrialReport(index, list(seeds), points, diagram, target, mrc,
                             generality, crosscheck, passed, timer.timings)
        LOGGER.info("trial %d attempt %d (seed %d): z=%d r=%d %s", index, attempt, seed, z, r,
                    "pass" if passed else "mismatch")
        if passed:
            break
    return report


def run_experiment(cfg: ExperimentConfig, progress: bool = True) -> RunReport:
    cfg.validate()
    surface = make_surface(cfg.surface, cfg.prime, cfg.seed)
    trials = [
        run_trial(cfg, surface, index)
        for index in tqdm(range(cfg.trials), desc=f"z={cfg.point_count}", disable=not progress)
    ]
    report = RunReport("verify", cfg.to_json(), surface, trials)
    LOGGER.info("run_experiment: %d/%d trials passed", sum(t.passed for t in trials), len(trials))
    return report


def run_first_link_experiment(
    a: int,
    seed: int,
    p: int,
    surface: str = "fermat",
    check_involution: bool = True,
) -> RunReport:
    """Link m(a) random points by a CI (f, g, h) of type (3, a, a) and check the residual."""
    if a not in (3, 4):
        raise ConfigError(f"the first link experiment runs at a = 3 or 4, got {a}")
    cfg = ExperimentConfig(prime=p, seed=seed, family=FamilyTag.M, a=a, surface=surface).validate()
    spec = make_surface(surface, p, seed)
    z, z_res = family_size(FamilyTag.M, a), family_size(FamilyTag.N, a)
    target = expected_resolution(FamilyTag.N, a).betti()
    timer = _Timer()
    trial_seed = cfg.trial_seed(0)
    rng = np.random.default_rng(trial_seed)

    start = time.perf_counter()
    points = sample_points(spec, z, trial_seed)
    I_Z = vanishing_ideal(points, cfg.d_max, spec.ring)
    timer.lap("ideal", start)

    start = time.perf_counter()
    forms = random_ci_forms(I_Z, spec.f, a, rng)
    residual = ci_residual(I_Z, forms)
    timer.lap("link", start)
    diagram = minimal_diagram(residual, timer)

    start = time.perf_counter()
    generality = generality_signature(residual, z_res, a + 2)
    crosscheck = hilbert_series_from_betti(diagram) == hilbert_series_numerator(residual)
    r, valid = select_r(z_res)
    mrc = check_mrc(diagram, z_res) if valid else None
    involution = None
    if check_involution:
        involution = ci_residual(residual, forms).same_as(I_Z)
    timer.lap("checks", start)

    link = {
        "ci_degrees": [g.degree for g in forms],
        "ci_forms": [str(g) for g in forms],
        "n": z,
        "n_prime": z_res,
        "degree_ledger": f"{CUBIC_DEGREE * a * a} = {z} + {z_res}",
        "involution": involution,
    }
    passed = (diagram == target and generality and crosscheck
              and (mrc is None or mrc.passed) and involution is not False)
    trial = TrialReport(0, [trial_seed], points, diagram, target, mrc,
                        generality, crosscheck, passed, timer.timings, link)
    LOGGER.info("first link at a=%d: %d -> %d points, %s", a, z, z_res, "pass" if passed else "fail")
    return RunReport("first_link", cfg.to_json(), spec, [trial])
