"""Linear algebra over F_p on sympy's DomainMatrix.

Callers pass and receive numpy integer arrays with entries in [0, p); the
elimination itself runs in GF(p).
"""

from __future__ import annotations

from functools import cache

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix


@cache
def _field(p: int):
    return GF(p, symmetric=False)


def to_domain_matrix(matrix, p: int) -> DomainMatrix:
    a = np.asarray(matrix, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    K = _field(p)
    return DomainMatrix([[K(int(v)) for v in row] for row in a], a.shape, K)


def to_array(m: DomainMatrix) -> np.ndarray:
    rows, cols = m.shape
    return np.array([[int(v) for v in row] for row in m.to_list()], dtype=np.int64).reshape(rows, cols)


def row_reduce(matrix, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    m = to_domain_matrix(matrix, p)
    if 0 in m.shape:
        return np.zeros((0, m.shape[1]), dtype=np.int64), []
    echelon, pivots = m.rref()
    return to_array(echelon)[:len(pivots)], list(pivots)


def rank(matrix, p: int) -> int:
    a = np.asarray(matrix)
    if a.size == 0:
        return 0
    return to_domain_matrix(a, p).rank()


def nullspace(matrix, p: int) -> np.ndarray:
    """Basis of {v : matrix @ v = 0} as the rows of the returned array."""
    m = to_domain_matrix(matrix, p)
    rows, cols = m.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    return to_array(m.nullspace(divide_last=True)).reshape(-1, cols)


def extending_rows(span, candidates, p: int) -> list[int]:
    """Indices of candidate rows that each enlarge the running row space."""
    cands = np.asarray(candidates, dtype=np.int64)
    current = np.asarray(span, dtype=np.int64).reshape(-1, cands.shape[1])
    current_rank = rank(current, p)
    chosen: list[int] = []
    for i, row in enumerate(cands):
        trial = np.vstack([current, row[None, :]])
        trial_rank = rank(trial, p)
        if trial_rank > current_rank:
            chosen.append(i)
            current, current_rank = trial, trial_rank
    return chosen
