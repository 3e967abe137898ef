import json
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from qtopo.category import InvariantError, ParseError, dumps
from qtopo.fixtures import fixture_text, list_fixtures, load_triangulation
from qtopo.triangulation import (
    first_homology, lens_space, parse_triangulation, s2xs1, torus3, triangulation_to_dict,
)

EXPECTED_H1 = {
    "s3": (0, ()), "s3_1tet": (0, ()), "s3_2tet": (0, ()), "rp3": (0, (2,)), "l31": (0, (3,)),
    "l41": (0, (4,)), "l51": (0, (5,)), "s2xs1": (1, ()), "t3": (3, ()),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_H1))
def test_fixture_homology(name):
    tri = load_triangulation(name)
    assert first_homology(tri) == EXPECTED_H1[name]
    assert tri.euler_characteristic == 0


def test_every_fixture_has_expected_homology():
    assert set(list_fixtures("triangulations")) == set(EXPECTED_H1)


def test_s3_shape():
    tri = load_triangulation("s3")
    assert tri.n_tet == 2 and tri.name == "S3"


def test_t3_shape():
    tri = torus3()
    assert (tri.n_tet, tri.n_vertices, tri.n_edges) == (6, 1, 7)


def test_s2xs1_shape():
    tri = s2xs1()
    assert tri.n_tet == 12 and first_homology(tri) == (1, ())


@given(st.integers(2, 9), st.integers(1, 8))
@settings(max_examples=40)
def test_lens_homology(p, q):
    assume(gcd(p, q) == 1)
    assert first_homology(lens_space(p, q % p)) == (0, (p,))


@given(st.integers(1, 6))
def test_q_zero_is_a_sphere(p):
    assert first_homology(lens_space(p, 0)) == (0, ())


def _doc(name):
    return json.loads(fixture_text("triangulations", name))


def test_parity_flip_is_non_orientable():
    doc = _doc("s3")
    # face 2 of tetrahedron 0 is glued to face 3 of tetrahedron 1; use an even map instead
    doc["tets"][0][2][2] = [1, 0, 3, 2]
    doc["tets"][1][3][2] = [1, 0, 3, 2]
    with pytest.raises(InvariantError) as err:
        parse_triangulation(json.dumps(doc))
    assert err.value.invariant == "orientability"


def test_non_involutive_gluing():
    doc = _doc("s3")
    doc["tets"][1][3] = [0, 2, [0, 1, 2, 3]]
    with pytest.raises(InvariantError):
        parse_triangulation(json.dumps(doc))


def test_bad_record():
    doc = _doc("s3")
    doc["tets"][0][0] = [5, 0, [0, 1, 2, 3]]
    with pytest.raises(ParseError):
        parse_triangulation(json.dumps(doc))


def test_unknown_field():
    doc = _doc("s3")
    doc["orientation"] = 1
    with pytest.raises(ParseError, match="orientation"):
        parse_triangulation(json.dumps(doc))


@pytest.mark.parametrize("name", ["s3", "t3", "s2xs1"])
def test_round_trip(name):
    tri = load_triangulation(name)
    again = parse_triangulation(dumps(triangulation_to_dict(tri)))
    assert again.gluings == tri.gluings
