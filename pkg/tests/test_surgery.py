import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtopo.category import InvariantError, dumps
from qtopo.fixtures import load_modular, load_plumbing
from qtopo.models import fibonacci_data, semion_data, toric_code_data
from qtopo.surgery import (
    PlumbingTree, parse_plumbing, plumbing_to_dict, rt_invariant, signature, sl2z_factor, torus_rep_apply,
    torus_rep_matrix, verlinde_dimension, word_matrix,
)


class TestPlumbing:
    def test_empty_tree(self):
        tree = PlumbingTree((), ())
        assert tree.signature == (0, 0, 0)

    def test_zero_framing(self):
        assert PlumbingTree((0,), ()).signature == (0, 0, 1)

    @pytest.mark.parametrize("p", [1, 2, 5])
    def test_lens(self, p):
        assert PlumbingTree.lens(p).signature == (1, 0, 0)

    def test_poincare_fixture(self):
        tree = load_plumbing("poincare")
        assert tree.n_vertices == 8 and tree.signature == (0, 8, 0)
        assert abs(round(np.linalg.det(tree.linking_matrix))) == 1

    def test_cycle_rejected(self):
        with pytest.raises(InvariantError) as err:
            PlumbingTree((1, 1, 1), ((0, 1), (1, 2), (2, 0)))
        assert err.value.invariant == "acyclicity"

    def test_round_trip(self):
        tree = load_plumbing("poincare")
        assert parse_plumbing(dumps(plumbing_to_dict(tree))) == tree

    def test_unknown_field(self):
        with pytest.raises(Exception, match="framing"):
            parse_plumbing(json.dumps({"vertices": [1], "edges": [], "framing": 1}))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_signature_matches_eigenvalues(framings):
    edges = tuple((i, i + 1) for i in range(len(framings) - 1))
    B = PlumbingTree(tuple(framings), edges).linking_matrix
    ev = np.linalg.eigvalsh(B.astype(float))
    expected = (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum()))
    assert signature(B.tolist()) == expected


class TestRT:
    def test_s3(self):
        assert rt_invariant(toric_code_data(), PlumbingTree((), ())) == pytest.approx(0.5)

    @pytest.mark.parametrize("md", [toric_code_data(), fibonacci_data(), semion_data()])
    def test_s2xs1(self, md):
        assert rt_invariant(md, PlumbingTree((0,), ())) == pytest.approx(1)

    def test_rp3_toric_code(self):
        assert rt_invariant(toric_code_data(), PlumbingTree.lens(2)) == pytest.approx(1)

    def test_l31_toric_code(self):
        assert rt_invariant(toric_code_data(), PlumbingTree.lens(3)) == pytest.approx(0.5)

    def test_fibonacci_s3(self):
        md = fibonacci_data()
        assert rt_invariant(md, PlumbingTree((), ())) == pytest.approx(1 / md.D)

    def test_blowup_invariance(self):
        # blowing down a +1 unknot lowers the framing of its neighbour by one
        md = fibonacci_data()
        a = rt_invariant(md, PlumbingTree((1,), ()))
        b = rt_invariant(md, PlumbingTree((2, 1), ((0, 1),)))
        assert abs(a - b) < 1e-12

    def test_poincare_sphere_two_plumbings(self):
        # the E8 plumbing and the star with framings 1; 2, 3, 5 present the same oriented manifold
        md = load_modular("fib")
        e8 = rt_invariant(md, load_plumbing("poincare"))
        star = PlumbingTree((1, 2, 3, 5), ((0, 1), (0, 2), (0, 3)))
        assert abs(e8 - rt_invariant(md, star)) < 1e-12
        mirror = PlumbingTree((-1, -2, -3, -5), ((0, 1), (0, 2), (0, 3)))
        assert abs(e8 - np.conj(rt_invariant(md, mirror))) < 1e-12
        assert abs(e8 - 1 / md.D) > 0.1


class TestVerlinde:
    @pytest.mark.parametrize("md", [toric_code_data(), fibonacci_data(), semion_data()])
    def test_sphere(self, md):
        assert verlinde_dimension(md, 0) == 1

    def test_toric_code(self):
        md = toric_code_data()
        assert [verlinde_dimension(md, g) for g in (1, 2)] == [4, 16]

    def test_zfib(self):
        assert verlinde_dimension(load_modular("zfib"), 2) == 25


class TestSL2Z:
    def test_identity(self):
        assert sl2z_factor(np.eye(2, dtype=int)).word == ""

    def test_s(self):
        assert sl2z_factor([[0, -1], [1, 0]]).word == "S"

    def test_example(self):
        w = sl2z_factor([[2, 1], [1, 1]])
        assert np.array_equal(word_matrix(w.word), [[2, 1], [1, 1]])

    def test_minus_one(self):
        assert np.array_equal(word_matrix(sl2z_factor(-np.eye(2, dtype=int)).word), -np.eye(2))

    def test_rejects_determinant(self):
        with pytest.raises(ValueError):
            sl2z_factor([[2, 0], [0, 1]])

    def test_word_length_grows_with_entries(self):
        # a word of bounded length cannot reach arbitrarily large entries
        assert len(sl2z_factor([[1, 50], [0, 1]]).word) == 50


@given(st.text(alphabet="STt", max_size=12))
def test_factor_reassembles(word):
    target = word_matrix(word)
    assert np.array_equal(word_matrix(sl2z_factor(target).word), target)


class TestTorusRep:
    def test_identity(self):
        v = np.arange(4) + 1j
        assert np.allclose(torus_rep_apply(toric_code_data(), np.eye(2, dtype=int), v), v)

    def test_s_squared_is_charge_conjugation(self):
        md = toric_code_data()
        C = np.eye(4)[md.charge_conjugation()]
        assert np.allclose(torus_rep_matrix(md, [[-1, 0], [0, -1]]), C)

    def test_st_cubed(self):
        md = toric_code_data()
        st3 = np.linalg.matrix_power(word_matrix("ST"), 3)
        assert np.allclose(torus_rep_matrix(md, st3), md.S @ md.S)

    def test_anomalous_data_rejected(self):
        with pytest.raises(InvariantError) as err:
            torus_rep_matrix(semion_data(), [[0, -1], [1, 0]])
        assert err.value.invariant == "anomaly"

    def test_homomorphism(self):
        md = load_modular("zfib")
        f, g = word_matrix("STtS"), word_matrix("TTS")
        assert np.allclose(torus_rep_matrix(md, f @ g), torus_rep_matrix(md, f) @ torus_rep_matrix(md, g))
