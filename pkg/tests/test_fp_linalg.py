import numpy as np
import pytest
from sympy.polys.matrices import DomainMatrix

from mrclab.lib import fp_linalg


def test_domain_matrix_over_gf_p():
    m = fp_linalg.to_domain_matrix([[3, -1], [10, 7]], 7)
    assert isinstance(m, DomainMatrix)
    assert m.domain.mod == 7
    assert fp_linalg.to_array(m).tolist() == [[3, 6], [3, 0]]
    with pytest.raises(ValueError):
        fp_linalg.to_domain_matrix([1, 2, 3], 7)


def test_row_reduce():
    echelon, pivots = fp_linalg.row_reduce([[2, 4, 1], [1, 2, 0], [3, 6, 1]], 5)
    assert pivots == [0, 2]
    assert echelon.tolist() == [[1, 2, 0], [0, 0, 1]]
    empty, none = fp_linalg.row_reduce(np.zeros((0, 3), dtype=np.int64), 5)
    assert empty.shape == (0, 3) and none == []


def test_rank_depends_on_the_characteristic():
    a = [[1, 1], [1, 4]]
    assert fp_linalg.rank(a, 3) == 1
    assert fp_linalg.rank(a, 5) == 2
    assert fp_linalg.rank(np.zeros((0, 4)), 5) == 0


def test_nullspace(rng):
    p = 101
    a = rng.integers(0, p, size=(3, 7))
    kernel = fp_linalg.nullspace(a, p)
    assert kernel.shape == (4, 7)
    assert not (a @ kernel.T % p).any()
    assert fp_linalg.rank(kernel, p) == 4
    assert fp_linalg.nullspace(np.eye(3, dtype=np.int64), p).shape == (0, 3)
    assert (fp_linalg.nullspace(np.zeros((0, 2), dtype=np.int64), p) == np.eye(2)).all()


def test_extending_rows():
    candidates = [[1, 0, 0], [2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 3]]
    assert fp_linalg.extending_rows([[1, 0, 0]], candidates, 7) == [2, 4]
    assert fp_linalg.extending_rows(np.zeros((0, 3)), candidates, 7) == [0, 2, 4]
