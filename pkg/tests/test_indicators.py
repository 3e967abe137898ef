from functools import lru_cache
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from qtopo.category import DataError
from qtopo.fixtures import F_CATEGORIES, load_fsymbols
from qtopo.indicators import (
    TorusCurve, check_equivariance, completion, fs_indicator, genus1_indicator, indicator_reference_oracle,
    omega_sum, omega_sum_from_modular, word_for,
)
from qtopo.surgery import word_matrix
from qtopo.tube import build_tube_algebra, decompose_center


@pytest.fixture(scope="module")
def centers():
    return {n: decompose_center(build_tube_algebra(load_fsymbols(n))) for n in F_CATEGORIES}


class TestCurves:
    def test_empty_curve(self):
        with pytest.raises(ValueError):
            TorusCurve(0, 0)

    def test_gcd(self):
        c = TorusCurve(4, -6)
        assert c.d == 2 and c.primitive == TorusCurve(2, -3)

    def test_parse(self):
        assert TorusCurve.parse("2,-1") == TorusCurve(2, -1)

    def test_transform_is_column_action(self):
        assert TorusCurve(1, 0).transform([[2, 1], [1, 1]]) == TorusCurve(2, 1)

    def test_completion_rejects_non_primitive(self):
        with pytest.raises(ValueError):
            completion(2, 4)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_completion_has_determinant_one(m, r):
    assume(gcd(m, r) == 1)
    g = completion(m, r)
    assert g[0].tolist() == [m, r]
    assert round(np.linalg.det(g.astype(float))) == 1
    if m:
        assert 0 <= g[1, 0] < abs(m)


def test_word_for():
    assert word_for(TorusCurve(1, 0)) == ""


class TestFibonacci:
    def test_induction_at_meridian(self, centers):
        cd = centers["fib"]
        tau, one = np.eye(2)[1], np.eye(2)[0]
        # the fourth center object is tau tau-bar; the second is 1 tau-bar
        assert genus1_indicator(cd, TorusCurve(1, 0), tau, np.eye(4)[3]) == pytest.approx(1)
        assert genus1_indicator(cd, TorusCurve(1, 0), one, np.eye(4)[1]) == pytest.approx(0)

    def test_nu2_tau(self, centers):
        assert fs_indicator(centers["fib"], 2, 1, 1) == pytest.approx(1)


@pytest.mark.parametrize("name", F_CATEGORIES)
def test_nu_1_0_is_delta(centers, name):
    cd = centers[name]
    for V in range(cd.fs.ring.rank):
        assert fs_indicator(cd, 1, 0, V) == pytest.approx(1 if V == 0 else 0)


def test_nu2_of_group_elements(centers):
    assert fs_indicator(centers["vecz2"], 2, 1, 1) == pytest.approx(1)
    # g in Z3 is not self-dual
    assert fs_indicator(centers["vecz3"], 2, 1, 1) == pytest.approx(0)


def test_nu2_ising(centers):
    cd = centers["ising"]
    assert [round(fs_indicator(cd, 2, 1, V).real, 9) for V in range(3)] == [1, 1, 1]


@pytest.mark.parametrize("name", ["fib", "ising", "vecz3_twisted"])
def test_oracle_agrees_on_primitive_curves(centers, name):
    cd = centers[name]
    r = cd.fs.ring.rank
    for m, l in [(1, 0), (0, 1), (1, 1), (2, 1), (-1, 2), (3, -2)]:
        for V in range(r):
            for X in range(cd.rank):
                a = genus1_indicator(cd, TorusCurve(m, l), np.eye(r)[V], np.eye(cd.rank)[X])
                assert abs(a - indicator_reference_oracle(cd, TorusCurve(m, l), V, X)) < 1e-9


def test_linear_in_v_for_primitive_curves(centers):
    cd = centers["ising"]
    z = np.arange(cd.rank) + 1j
    v, w = np.array([1, 2, 0.5]), np.array([0, -1, 3j])
    c = TorusCurve(2, 1)
    lhs = genus1_indicator(cd, c, v + w, z)
    assert abs(lhs - genus1_indicator(cd, c, v, z) - genus1_indicator(cd, c, w, z)) < 1e-12


def test_non_primitive_needs_monomial(centers):
    cd = centers["fib"]
    with pytest.raises(DataError):
        genus1_indicator(cd, TorusCurve(2, 2), np.array([1.0, 1.0]), np.eye(4)[0])


@pytest.mark.parametrize("lam", [2, 1j])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_scaling_law(centers, lam, ell):
    cd = centers["fib"]
    z = np.array([1, 2, 3, 4]) + 0.5j
    curve = TorusCurve(ell, ell)
    tau = np.eye(2)[1]
    assert abs(genus1_indicator(cd, curve, lam * tau, z) - lam ** ell * genus1_indicator(cd, curve, tau, z)) < 1e-9


class TestEquivariance:
    def test_identity(self, centers):
        ok, res = check_equivariance(centers["fib"], np.eye(2, dtype=int), TorusCurve(2, 1), np.eye(2)[1],
                                     np.eye(4)[0])
        assert ok and res == 0

    @pytest.mark.parametrize("name", F_CATEGORIES)
    def test_generators(self, centers, name):
        cd = centers[name]
        r = cd.fs.ring.rank
        z = np.linspace(1, 2, cd.rank) + 0.25j
        for f in ([[0, -1], [1, 0]], [[1, 1], [0, 1]], [[1, 0], [1, 1]]):
            for curve in (TorusCurve(1, 0), TorusCurve(1, 2), TorusCurve(2, 0)):
                ok, res = check_equivariance(cd, f, curve, np.eye(r)[r - 1], z)
                assert ok, (f, curve, res)


@given(st.text(alphabet="STt", max_size=6), st.integers(-2, 2), st.integers(-2, 2))
@settings(max_examples=30, deadline=None)
def test_equivariance_property(word, m, l):
    assume((m, l) != (0, 0))
    cd = _ising_center()
    ok, res = check_equivariance(cd, word_matrix(word), TorusCurve(m, l), np.eye(3)[2], np.arange(9) + 1.0)
    assert ok, res


@lru_cache(maxsize=None)
def _ising_center():
    return decompose_center(build_tube_algebra(load_fsymbols("ising")))


@pytest.mark.parametrize("name", F_CATEGORIES)
def test_omega_sum_is_center_data(centers, name):
    cd = centers[name]
    for curve in (TorusCurve(1, 0), TorusCurve(2, 1), TorusCurve(3, 2)):
        for X in range(cd.rank):
            assert abs(omega_sum(cd, curve, X) - omega_sum_from_modular(cd.modular, curve, X)) < 1e-9


def test_omega_sum_from_modular_rejects_multicurves(centers):
    with pytest.raises(ValueError):
        omega_sum_from_modular(centers["fib"].modular, TorusCurve(2, 2), 0)
