"""Predicted Betti tables for general points on a smooth cubic surface X ⊂ P^3.

All functions here are integer bookkeeping: the Hilbert polynomial of X, the
Q_{i,r} differences, the four point-count families m/n/o/p and their theorem
resolutions, and the ghost-term checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from scipy.special import comb

from mrclab.lib.errors import PredictionWindowError
from mrclab.lib.resolution import BettiDiagram, ResolutionShape

MIN_WINDOW = 4  # reg(X) + 1
CUBIC_DEGREE = 3


class FamilyTag(str, Enum):
    M = "m"
    N = "n"
    O = "o"  # noqa: E741
    P = "p"


# ---------- Hilbert polynomial ----------

def p_cubic(t: int) -> int:
    """P_X(t) = 3t(t+1)/2 + 1."""
    return 3 * t * (t + 1) // 2 + 1


def delta_p(t: int) -> int:
    """Backward difference P_X(t) - P_X(t-1)."""
    return p_cubic(t) - p_cubic(t - 1)


def delta2_p(t: int) -> int:
    return delta_p(t) - delta_p(t - 1)


class Window(NamedTuple):
    r: int
    valid: bool


def select_r(z: int) -> Window:
    """The r with P_X(r-1) <= z < P_X(r), and whether r >= 4."""
    if z < 1:
        raise PredictionWindowError(f"need at least one point, got z={z}")
    r = 1
    while p_cubic(r) <= z:
        r += 1
    return Window(r, r >= MIN_WINDOW)


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0:
        return 0
    return int(comb(n, k, exact=True))


def q_value(i: int, r: int, z: int) -> int:
    """Q_{i,r}(z) = C(2,i)ΔP(r) - C(1,i-1)Δ²P(r+1) - C(3,i)(z - P(r-1))."""
    if r < MIN_WINDOW:
        raise PredictionWindowError(f"r={r} is below the prediction window (r >= {MIN_WINDOW})")
    if not 0 <= i <= 3:
        raise PredictionWindowError(f"index i={i} outside 0..3")
    return (_binom(2, i) * delta_p(r)
            - _binom(1, i - 1) * delta2_p(r + 1)
            - _binom(3, i) * (z - p_cubic(r - 1)))


# ---------- predictions ----------

@dataclass(frozen=True)
class Prediction:
    z: int
    r: int
    diagram: BettiDiagram
    source: str
    known_case: bool = False

    def to_json(self) -> dict:
        return {
            "z": self.z,
            "r": self.r,
            "source": self.source,
            "known_case": self.known_case,
            "level": self.diagram.is_level(),
            **self.diagram.to_json(),
        }


def is_known_case(z: int, r: int) -> bool:
    """z = P_X(r-1) or z = P_X(r) - 1, where the conjecture is already settled."""
    return z in (p_cubic(r - 1), p_cubic(r) - 1)


def predicted_diagram(z: int) -> Prediction:
    r, valid = select_r(z)
    if not valid:
        raise PredictionWindowError(f"z={z} gives r={r}; predictions need r >= {MIN_WINDOW}")
    entries = {(0, 0): 1, (1, CUBIC_DEGREE - 1): 1}
    for i in range(4):
        q = q_value(i, r, z)
        if q > 0:
            entries[(i + 1, r - 1)] = q
        elif q < 0:
            entries[(i, r)] = -q
    return Prediction(z, r, BettiDiagram(entries), "q_formula", is_known_case(z, r))


# ---------- families ----------

def family_size(tag: FamilyTag | str, a: int) -> int:
    tag = FamilyTag(tag)
    if a < 1:
        raise PredictionWindowError(f"family size needs a >= 1, got {a}")
    base = 3 * a * (a - 1) // 2
    return base + {
        FamilyTag.M: a,
        FamilyTag.N: 2 * a,
        FamilyTag.O: a + 1,
        FamilyTag.P: 2 * a + 1,
    }[tag]


def expected_resolution(tag: FamilyTag | str, a: int) -> ResolutionShape:
    """I-presentation of the minimal resolution of family_size(tag, a) general points."""
    if a < 3:
        raise PredictionWindowError(f"theorem resolutions need a >= 3, got {a}")
    return theorem_shape(tag, a)


def theorem_shape(tag: FamilyTag | str, a: int) -> ResolutionShape:
    """The theorem's twist pattern at any a >= 2.

    Minimal for a >= 3; at a = 2 it is the base-case resolution for n, o and p,
    while for m it carries one ghost pair R(-3) (5 points have R(-2)^5 <- R(-3)^5 <- R(-5)).
    """
    tag = FamilyTag(tag)
    if a < 2:
        raise PredictionWindowError(f"twist patterns need a >= 2, got {a}")
    cubic = {CUBIC_DEGREE: 1}
    if tag is FamilyTag.M:
        return ResolutionShape.of(
            _plus({a: 2 * a + 1}, cubic), {a + 1: 3 * a}, {a + 3: a - 1})
    if tag is FamilyTag.N:
        return ResolutionShape.of(
            _plus({a: a + 1}, cubic), {a + 2: 3 * a}, {a + 3: 2 * a - 1})
    if tag is FamilyTag.O:
        return ResolutionShape.of(
            _plus({a: 2 * a}, cubic), {a + 1: 3 * a - 3, a + 2: 3}, {a + 3: a})
    return ResolutionShape.of(
        _plus({a: a, a + 1: 3}, cubic), {a + 2: 3 * a + 3}, {a + 3: 2 * a})


def _plus(left: dict[int, int], right: dict[int, int]) -> dict[int, int]:
    out = dict(left)
    for d, k in right.items():
        out[d] = out.get(d, 0) + k
    return out


def family_prediction(tag: FamilyTag | str, a: int) -> Prediction:
    z = family_size(tag, a)
    r, _ = select_r(z)
    return Prediction(z, r, expected_resolution(tag, a).betti(),
                      f"theorem_family({FamilyTag(tag).value},{a})", is_known_case(z, r))


# ---------- checker ----------

@dataclass(frozen=True)
class MrcVerdict:
    passed: bool
    witness: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"passed": self.passed, "witness": self.witness, "reason": self.reason}


def check_mrc(B: BettiDiagram, z: int) -> MrcVerdict:
    """Pass iff no ghost pair in rows r-1/r and every difference equals Q_{i,r}(z)."""
    r, _ = select_r(z)
    for i in range(4):
        upper, lower = B[(i + 1, r - 1)], B[(i, r)]
        if upper and lower:
            return MrcVerdict(False, i, f"ghost pair b_{i + 1},{r - 1}={upper}, b_{i},{r}={lower}")
        q = q_value(i, r, z)
        if upper - lower != q:
            return MrcVerdict(False, i, f"b_{i + 1},{r - 1} - b_{i},{r} = {upper - lower}, expected {q}")
    return MrcVerdict(True)


def satisfies_difference_identity(B: BettiDiagram, z: int) -> bool:
    r, _ = select_r(z)
    return all(B[(i + 1, r - 1)] - B[(i, r)] == q_value(i, r, z) for i in range(4))
