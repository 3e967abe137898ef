import json

import pytest

from qtopo.category import DataError, dumps
from qtopo.fixtures import KINDS, fixture_path, fixture_text, list_fixtures


@pytest.mark.parametrize("kind", KINDS)
def test_every_fixture_is_canonical_json(kind):
    for name in list_fixtures(kind):
        text = fixture_text(kind, name)
        assert dumps(json.loads(text)) == text, name


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_path("categories", "nope")
    with pytest.raises(KeyError):
        fixture_path("recipes", "fib")


@pytest.mark.parametrize("kind, loader", [
    ("categories", "load_fsymbols"), ("modular", "load_modular"), ("triangulations", "load_triangulation"),
    ("nimreps", "load_nimrep"), ("surfaces", "load_surface"), ("plumbings", "load_plumbing"),
])
def test_every_fixture_loads(kind, loader):
    from qtopo import fixtures
    names = list_fixtures(kind)
    if kind == "categories":
        names = [n for n in names if n != "reps3"]
    assert names
    for name in names:
        getattr(fixtures, loader)(name)


def test_reps3_has_no_fsymbols():
    from qtopo.fixtures import load_fsymbols, load_ring
    assert load_ring("reps3").rank == 3
    with pytest.raises(DataError):
        load_fsymbols("reps3")
