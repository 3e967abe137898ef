"""Bundled fixtures, resolved by name.

Kinds: ``categories``, ``modular``, ``triangulations``, ``nimreps``,
``surfaces``, ``plumbings`` (plus ``invalid`` for deliberately broken
documents).  NIM-rep names start with the name of their category.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .category import (
    FSymbolSet, FusionRing, ModularData, NimRep, parse_fsymbols, parse_fusion_ring, parse_modular_data,
    parse_nimrep,
)

__all__ = [
    "KINDS", "fixture_path", "fixture_text", "list_fixtures", "load_ring", "load_fsymbols",
    "load_modular", "load_triangulation", "load_nimrep", "load_surface", "load_plumbing",
    "F_CATEGORIES", "RINGS",
]

KINDS = ("categories", "modular", "triangulations", "nimreps", "surfaces", "plumbings", "invalid")

# categories with F-symbols, and all bundled rings
F_CATEGORIES = ("trivial", "vecz2", "vecz3", "vecz3_twisted", "fib", "ising")
RINGS = F_CATEGORIES + ("reps3",)


def _root() -> Path:
    return Path(str(resources.files("qtopo") / "data"))


def fixture_path(kind: str, name: str) -> Path:
    if kind not in KINDS:
        raise KeyError(f"unknown fixture kind {kind!r}")
    path = _root() / kind / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no {kind} fixture named {name!r}; available: {list_fixtures(kind)}")
    return path


def fixture_text(kind: str, name: str) -> str:
    return fixture_path(kind, name).read_text(encoding="utf-8")


def list_fixtures(kind: str) -> list[str]:
    return sorted(p.stem for p in (_root() / kind).glob("*.json"))


def load_ring(name: str) -> FusionRing:
    return parse_fusion_ring(fixture_text("categories", name))


def load_fsymbols(name: str) -> FSymbolSet:
    text = fixture_text("categories", name)
    return parse_fsymbols(text, parse_fusion_ring(text))


def load_modular(name: str) -> ModularData:
    return parse_modular_data(fixture_text("modular", name))


def load_triangulation(name: str):
    from .triangulation import parse_triangulation
    return parse_triangulation(fixture_text("triangulations", name), name)


def load_nimrep(name: str) -> NimRep:
    ring = load_ring(name.split("_")[0])
    return parse_nimrep(fixture_text("nimreps", name), ring)


def load_surface(name: str):
    from .state_spaces import parse_surface
    return parse_surface(fixture_text("surfaces", name))


def load_plumbing(name: str):
    from .surgery import parse_plumbing
    return parse_plumbing(fixture_text("plumbings", name))
