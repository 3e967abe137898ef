"""Regenerate the bundled JSON fixtures from the closed-form constructors.

Run from the repository root:  python scripts/generate_fixtures.py
Every file is validated by re-parsing it before it is written.
"""
from __future__ import annotations

from pathlib import Path

from qtopo import models
from qtopo.category import (
    dumps, modular_to_dict, nimrep_to_dict, parse_fsymbols, parse_fusion_ring, parse_modular_data,
    regular_nimrep, ring_to_dict,
)
from qtopo.state_spaces import (
    annulus, parse_surface, surface_to_dict, three_holed_sphere, three_holed_sphere_quad,
)
from qtopo.surgery import PlumbingTree, parse_plumbing, plumbing_to_dict
from qtopo.triangulation import lens_space, parse_triangulation, s2xs1, torus3, triangulation_to_dict
from qtopo.tube import center_from_square

DATA = Path(__file__).resolve().parents[1] / "src" / "qtopo" / "data"


def write(kind: str, name: str, doc: dict, check) -> None:
    text = dumps(doc)
    check(text)
    path = DATA / kind / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def check_category(text):
    ring = parse_fusion_ring(text)
    if '"fsymbols"' in text:
        parse_fsymbols(text, ring)


def main() -> None:
    categories = {
        "trivial": models.trivial(),
        "vecz2": models.vec_zn(2),
        "vecz3": models.vec_zn(3),
        "vecz3_twisted": models.vec_zn(3, 1),
        "fib": models.fibonacci(),
        "ising": models.ising(),
    }
    for name, fs in categories.items():
        write("categories", name, ring_to_dict(fs.ring, fs), check_category)
    write("categories", "reps3", ring_to_dict(models.rep_s3_ring()), check_category)

    # x x = 1 and y y = 1 but x y = 0: unit and duality hold, associativity fails at (x, x, y, y)
    broken = {"rank": 3, "labels": ["1", "x", "y"], "dual": [0, 1, 2],
              "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [0, 2, 2, 1], [1, 0, 1, 1], [2, 0, 2, 1],
                         [1, 1, 0, 1], [2, 2, 0, 1]]}
    (DATA / "invalid").mkdir(parents=True, exist_ok=True)
    (DATA / "invalid" / "broken_ring.json").write_text(dumps(broken), encoding="utf-8")

    modular = {
        "trivial": models.trivial_data(),
        "toric_code": models.toric_code_data(),
        "semion": models.semion_data(),
        "fib": models.fibonacci_data(),
        "ising": models.ising_data(),
        "zfib": center_from_square(models.fibonacci_data()),
    }
    for name, md in modular.items():
        write("modular", name, modular_to_dict(md), parse_modular_data)

    tris = {
        "s3": lens_space(2, 0), "s3_1tet": lens_space(1, 0), "s3_2tet": lens_space(2, 0), "rp3": lens_space(2, 1),
        "l31": lens_space(3, 1), "l41": lens_space(4, 1), "l51": lens_space(5, 1),
        "s2xs1": s2xs1(), "t3": torus3(),
    }
    titles = {"s3": "S3", "s3_1tet": "S3", "s3_2tet": "S3", "rp3": "RP3", "s2xs1": "S2xS1", "t3": "T3"}
    for name, tri in tris.items():
        doc = triangulation_to_dict(tri)
        doc["name"] = titles.get(name, tri.name)
        write("triangulations", name, doc, parse_triangulation)

    for name in ("vecz2", "vecz3", "fib", "ising"):
        ring = categories[name].ring
        write("nimreps", f"{name}_regular", nimrep_to_dict(regular_nimrep(ring)), lambda t: None)
    write("nimreps", "vecz2_trivial", {"module_rank": 1, "action": [[[1]], [[1]]]}, lambda t: None)
    write("nimreps", "reps3_regular", nimrep_to_dict(regular_nimrep(models.rep_s3_ring())), lambda t: None)

    surfaces = {
        "three_holed_sphere": three_holed_sphere(),
        "three_holed_sphere_quad": three_holed_sphere_quad(),
        "three_holed_sphere_tau": three_holed_sphere(("tau", "tau", "tau")),
        "annulus": annulus(),
    }
    for name, surf in surfaces.items():
        write("surfaces", name, surface_to_dict(surf), parse_surface)

    plumbings = {"s3": PlumbingTree((), ()), "s2xs1": PlumbingTree((0,), ())}
    for p in range(1, 6):
        plumbings[f"lens{p}"] = PlumbingTree.lens(p)
    plumbings["poincare"] = PlumbingTree((-2,) * 8, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)))
    for name, tree in plumbings.items():
        write("plumbings", name, plumbing_to_dict(tree), parse_plumbing)


if __name__ == "__main__":
    main()
