import json

import numpy as np
import pytest

from qtopo.category import DataError, frobenius_perron_data, parse_nimrep, regular_nimrep
from qtopo.criteria import (
    _joint_spectrum, _spectral_minimum,
    check_module_positivity, check_positivity, criterion_matrix, min_eigenvalue, omega_rank_one,
)
from qtopo.fixtures import RINGS, load_nimrep, load_ring


def test_trivial_ring():
    ring = load_ring("trivial")
    for n in (1, 2, 5):
        assert criterion_matrix(ring, n=n).tolist() == [[1.0]]


def test_vecz2_n2():
    M = criterion_matrix(load_ring("vecz2"), n=2)
    N1 = np.array([[0, 1], [1, 0]])
    assert np.array_equal(M, np.eye(4) + np.kron(N1, N1))
    assert np.allclose(sorted(set(np.round(np.linalg.eigvalsh(M), 9))), [0, 2])


def test_fibonacci_n3():
    M = criterion_matrix(load_ring("fib"), n=3)
    assert M.shape == (8, 8)
    assert np.array_equal(M, M.T)
    assert min_eigenvalue(M) > -1e-9


@pytest.mark.parametrize("name", ["ising", "vecz3"])
def test_small_n_pass(name):
    reports = check_positivity(load_ring(name), 4)
    assert [r.n for r in reports] == [1, 2, 3, 4] and all(r.passed for r in reports)


def test_eigen_backend_sanity():
    assert min_eigenvalue(np.diag([1.0, -1.0])) == -1


def test_size_cap():
    with pytest.raises(DataError, match="cap"):
        criterion_matrix(load_ring("ising"), n=8, cap=4096)


@pytest.mark.parametrize("name", ["vecz2", "vecz3", "fib", "ising", "reps3"])
def test_joint_spectrum_agrees_with_dense(name):
    ring = load_ring(name)
    d = frobenius_perron_data(ring).d
    lam = _joint_spectrum(ring.N)
    assert lam is not None
    for n in range(1, 5):
        dense = min_eigenvalue(criterion_matrix(ring, n=n))
        assert abs(_spectral_minimum(lam, d, n) - dense) < 1e-9


def test_joint_spectrum_used_above_dense_limit():
    reports = check_positivity(load_ring("vecz2"), cap=4096)
    assert reports[-1].matrix_dim == 4096 and reports[-1].method == "joint-spectrum"


def test_report_json():
    rep = check_positivity(load_ring("fib"), 1)[0]
    assert json.loads(json.dumps(rep.to_dict())) == {"n": 1, "matrix_dim": 2, "min_eigenvalue": rep.min_eigenvalue,
                                                     "pass": True, "method": "dense"}


@pytest.mark.parametrize("name", RINGS)
def test_regular_module_matches_ring(name):
    ring = load_ring(name)
    a = check_positivity(ring, 3)
    b = check_module_positivity(ring, regular_nimrep(ring), 3)
    assert [r.passed for r in a] == [r.passed for r in b]


def test_trivial_module_of_z2():
    ring = load_ring("vecz2")
    nim = load_nimrep("vecz2_trivial")
    assert nim.module_rank == 1
    reports = check_module_positivity(ring, nim, 3)
    assert reports[-1].min_eigenvalue == pytest.approx(2) and reports[-1].passed


def test_fibonacci_module_n4():
    assert all(r.passed for r in check_module_positivity(load_ring("fib"), load_nimrep("fib_regular"), 4))


class TestOmegaRankOne:
    def test_fibonacci(self):
        ok, res = omega_rank_one(load_ring("fib"), load_nimrep("fib_regular"))
        assert ok and res < 1e-12

    def test_vecz2(self):
        assert omega_rank_one(load_ring("vecz2"), load_nimrep("vecz2_regular"))[0]

    def test_trivial(self):
        ring = load_ring("trivial")
        assert omega_rank_one(ring, parse_nimrep(json.dumps({"module_rank": 1, "action": [[[1]]]}), ring))[0]

    @pytest.mark.parametrize("name", ["vecz3", "ising", "reps3"])
    def test_regular_modules(self, name):
        assert omega_rank_one(load_ring(name), load_nimrep(f"{name}_regular"))[0]
