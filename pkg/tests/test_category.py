import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtopo.category import (
    InvariantError, ModularData, ParseError, dumps, frobenius_perron_data, modular_to_dict, parse_fsymbols,
    parse_fusion_ring, parse_modular_data, parse_nimrep, regular_nimrep, ring_to_dict, verify_pentagon,
)
from qtopo.fixtures import load_fsymbols, load_ring
from qtopo.models import fibonacci, ising, rep_s3_ring, toric_code_data, trivial, vec_zn

PHI = (1 + 5 ** 0.5) / 2


def ring_doc(labels, dual, fusion):
    return json.dumps({"rank": len(labels), "labels": labels, "dual": dual, "fusion": fusion})


class TestFusionRing:
    def test_trivial(self):
        ring = parse_fusion_ring(ring_doc(["1"], [0], [[0, 0, 0, 1]]))
        assert ring.rank == 1 and ring.N[0, 0, 0] == 1

    def test_fibonacci(self):
        ring = load_ring("fib")
        assert np.array_equal(ring.N[1], [[0, 1], [1, 1]])

    def test_duality_violation(self):
        # tau tau = 2 + 2 tau would need N[tau][tau][1] = 2
        doc = ring_doc(["1", "tau"], [0, 1], [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 2], [1, 1, 1, 2]])
        with pytest.raises(InvariantError) as err:
            parse_fusion_ring(doc)
        assert err.value.invariant == "duality"

    def test_associativity_location(self):
        doc = ring_doc(["1", "x", "y"], [0, 1, 2],
                       [[0, 0, 0, 1], [0, 1, 1, 1], [0, 2, 2, 1], [1, 0, 1, 1], [2, 0, 2, 1],
                        [1, 1, 0, 1], [2, 2, 0, 1], [1, 1, 2, 1]])
        with pytest.raises(InvariantError) as err:
            parse_fusion_ring(doc)
        assert err.value.invariant in ("associativity", "Frobenius reciprocity")

    def test_unknown_field(self):
        doc = json.loads(ring_doc(["1"], [0], [[0, 0, 0, 1]]))
        doc["colour"] = "red"
        with pytest.raises(ParseError, match="colour"):
            parse_fusion_ring(json.dumps(doc))

    def test_bad_json(self):
        with pytest.raises(ParseError):
            parse_fusion_ring("{not json")

    def test_label_lookup(self):
        ring = load_ring("ising")
        assert ring.index("sigma") == 2 and ring.index(1) == 1
        with pytest.raises(KeyError):
            ring.index("tau")

    @pytest.mark.parametrize("name", ["trivial", "vecz2", "vecz3", "fib", "ising", "reps3"])
    def test_round_trip(self, name):
        ring = load_ring(name)
        assert parse_fusion_ring(dumps(ring_to_dict(ring))) == ring


@given(st.integers(min_value=1, max_value=7))
def test_group_rings_validate(n):
    ring = vec_zn(n).ring
    ring.validate()
    dims = frobenius_perron_data(ring)
    assert np.allclose(dims.d, 1) and abs(dims.mu - n) < 1e-9


class TestDimensions:
    def test_trivial(self):
        dims = frobenius_perron_data(trivial().ring)
        assert dims.d.tolist() == [1.0] and dims.mu == 1

    def test_fibonacci(self):
        dims = frobenius_perron_data(fibonacci().ring)
        assert dims.d[1] == pytest.approx(1.6180339887, abs=1e-10)
        assert dims.mu == pytest.approx(3.6180339887, abs=1e-10)

    def test_ising(self):
        dims = frobenius_perron_data(ising().ring)
        assert dims.d == pytest.approx([1, 1, 1.4142135624], abs=1e-10)
        assert dims.mu == pytest.approx(4)

    def test_rep_s3(self):
        dims = frobenius_perron_data(rep_s3_ring())
        assert dims.d == pytest.approx([1, 1, 2]) and dims.mu == pytest.approx(6)


class TestFSymbols:
    def test_fibonacci_matrix(self):
        fs = load_fsymbols("fib")
        es, fs_, M = fs.matrix(1, 1, 1, 1)
        assert es == fs_ == [0, 1]
        want = [[1 / PHI, 1 / PHI ** 0.5], [1 / PHI ** 0.5, -1 / PHI]]
        assert np.allclose(M, want, atol=1e-12)

    def test_vecz2_all_ones(self):
        fs = load_fsymbols("vecz2")
        assert all(v == 1 for _, v in fs.items())

    def test_perturbed_parses_but_fails_pentagon(self):
        fs = load_fsymbols("fib")
        bad = fs.perturbed((1, 1, 1, 1, 0, 0), 1e-3)
        text = dumps(ring_to_dict(fs.ring, bad))
        again = parse_fsymbols(text, fs.ring)
        rep = verify_pentagon(again)
        assert not rep.passed and rep.residual > 1e-4
        assert rep.worst is not None

    def test_out_of_domain_entry(self):
        fs = load_fsymbols("vecz2")
        doc = ring_to_dict(fs.ring, fs)
        doc["fsymbols"].append([1, 1, 1, 0, 1, 1, 1.0, 0.0])  # 1*1 = 0, not 1
        with pytest.raises(InvariantError):
            parse_fsymbols(json.dumps(doc), fs.ring)

    def test_missing_entry(self):
        fs = load_fsymbols("fib")
        doc = ring_to_dict(fs.ring, fs)
        doc["fsymbols"].pop()
        with pytest.raises((ParseError, InvariantError)):
            parse_fsymbols(json.dumps(doc), fs.ring)

    @pytest.mark.parametrize("name", ["trivial", "vecz2", "vecz3", "vecz3_twisted", "fib", "ising"])
    def test_bundled_unitary(self, name):
        assert load_fsymbols(name).is_unitary()


class TestPentagon:
    def test_vecz2_zero_residual(self):
        rep = verify_pentagon(vec_zn(2))
        assert rep.passed and rep.residual == 0

    def test_twisted_z3(self):
        rep = verify_pentagon(vec_zn(3, 1))
        assert rep.passed and rep.residual < 1e-12

    def test_perturbed_worst_located(self):
        fs = fibonacci()
        key = (1, 1, 1, 1, 1, 1)
        rep = verify_pentagon(fs.perturbed(key, 1e-3))
        assert not rep.passed
        assert rep.instances > 0 and len(rep.worst) == 9


class TestModularData:
    def test_toric_code(self):
        md = toric_code_data()
        assert md.D == pytest.approx(2)
        assert md.p_plus == pytest.approx(2) and md.p_minus == pytest.approx(2)

    def test_rank_one(self):
        md = ModularData.from_matrices([[1]], [1])
        assert md.D == 1

    def test_scaled_row_rejected(self):
        S = np.array(toric_code_data().S)
        S[1] *= 2
        with pytest.raises(InvariantError) as err:
            ModularData.from_matrices(S, toric_code_data().T)
        assert err.value.invariant == "unitarity of S"

    def test_round_trip(self):
        md = toric_code_data()
        again = parse_modular_data(dumps(modular_to_dict(md)))
        assert np.allclose(again.S, md.S) and np.allclose(again.T, md.T)

    def test_verlinde_tensor_integral(self):
        md = toric_code_data()
        assert md.fusion is not None and md.fusion.min() >= 0


class TestNimRep:
    def test_fibonacci_regular(self):
        nim = regular_nimrep(load_ring("fib"))
        assert np.allclose(nim.dM, [1, PHI])

    def test_trivial_module_of_z2(self):
        nim = parse_nimrep(json.dumps({"module_rank": 1, "action": [[[1]], [[1]]]}), load_ring("vecz2"))
        assert nim.module_rank == 1 and nim.dM == pytest.approx([2 ** 0.5])

    def test_fibonacci_swap_rejected(self):
        with pytest.raises(InvariantError) as err:
            parse_nimrep(json.dumps({"module_rank": 2, "action": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}),
                         load_ring("fib"))
        assert err.value.invariant == "representation property"


def test_dumps_is_deterministic():
    doc = {"b": [[1, 2], [3, 4]], "a": 1.5}
    assert dumps(doc) == dumps(dict(reversed(list(doc.items()))))
    assert json.loads(dumps(doc)) == doc
