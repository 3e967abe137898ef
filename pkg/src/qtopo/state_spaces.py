"""Dimensions of TQFT state spaces from polygon and pants decompositions.

A decorated surface is described by truncated polygons.  Going around each
polygon's boundary, slots alternate between black arcs (pieces of the
boundary of the B-colored region, possibly carrying marked points) and
green edges (cuts that are glued in pairs).  Coloring the green edges by
simple objects, the state space is

    sum_colorings prod_polygons dim Hom(1, X(polygon)),

where ``X(polygon)`` is the tensor product of the marked points and green
edge colors read in boundary order.  The two sides of a green edge traverse
it in opposite directions, so the second occurrence carries the dual color.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .category import FusionRing, InvariantError, ModularData, ParseError, _load
from .surgery import verlinde_dimension

__all__ = [
    "DecoratedSurface", "parse_surface", "surface_to_dict", "hom_dim", "dim_state_space",
    "green_colorings", "pants_graph", "dim_closed_surface", "three_holed_sphere",
    "three_holed_sphere_quad", "annulus",
]


@dataclass(frozen=True)
class DecoratedSurface:
    """``polygons[i]`` is a cyclic list of slots.

    A slot is ``("green", edge_id)`` or ``("black", ((label, sign), ...))``
    with ``sign`` in ``{+1, -1}``; ``-1`` means the marked point reads as the
    dual object.  ``pairings`` maps each green id to its gluing orientation.
    """

    polygons: tuple
    pairings: tuple

    def __post_init__(self):
        counts: dict = {}
        for poly in self.polygons:
            for kind, val in poly:
                if kind == "green":
                    counts[val] = counts.get(val, 0) + 1
                elif kind != "black":
                    raise ParseError(f"unknown slot kind {kind!r}")
        bad = [g for g, c in counts.items() if c != 2]
        if bad:
            raise InvariantError("green pairing", f"green edge {bad[0]!r} appears {counts[bad[0]]} times, expected 2",
                                 location=bad[0])
        paired = dict(self.pairings)
        if len(paired) != len(self.pairings):
            raise InvariantError("green pairing", "a green edge is paired more than once")
        if set(paired) != set(counts):
            missing = sorted(set(counts) ^ set(paired), key=str)
            raise InvariantError("green pairing", f"unmatched green edge {missing[0]!r}", location=missing[0])
        for g, how in paired.items():
            if how == "preserving":
                raise InvariantError("orientation", f"green edge {g!r} glued orientation-preserving: "
                                     "the quotient is not orientable")
            if how != "reversing":
                raise ParseError(f"unknown pairing orientation {how!r}")

    @property
    def green_edges(self) -> list:
        seen = []
        for poly in self.polygons:
            for kind, val in poly:
                if kind == "green" and val not in seen:
                    seen.append(val)
        return seen

    def euler_characteristic(self) -> int:
        """Of the glued surface with boundary: ``sum (1 - 0) per polygon - green edges``."""
        return len(self.polygons) - len(self.green_edges)

    def boundary_circles(self) -> int:
        """Number of boundary circles formed by the black arcs."""
        # black arcs are joined at green-edge endpoints: arc before edge g in one polygon
        # continues as the arc after g in the partner polygon (orientation reversing).
        arcs = []
        where = {}
        for p, poly in enumerate(self.polygons):
            for s, (kind, val) in enumerate(poly):
                if kind == "green":
                    where.setdefault(val, []).append((p, s))
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        for p, poly in enumerate(self.polygons):
            n = len(poly)
            for s, (kind, _) in enumerate(poly):
                if kind == "black":
                    arcs.append((p, s))
                    find((p, s))
        for g, ((p1, s1), (p2, s2)) in where.items():
            n1, n2 = len(self.polygons[p1]), len(self.polygons[p2])
            # endpoint between slot s-1 and s of p1 meets endpoint between s2 and s2+1 of p2
            union((p1, (s1 - 1) % n1), (p2, (s2 + 1) % n2))
            union((p1, (s1 + 1) % n1), (p2, (s2 - 1) % n2))
        return len({find(a) for a in arcs})

    def genus(self) -> int:
        chi = self.euler_characteristic()
        return (2 - chi - self.boundary_circles()) // 2


def _slot(raw):
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ParseError(f"bad slot {raw!r}")
    (kind, val), = raw.items()
    if kind == "green":
        return ("green", val if isinstance(val, str) else int(val))
    if kind == "black":
        pts = []
        for item in val:
            label, sign = item
            if sign not in ("+", "-"):
                raise ParseError(f"bad marked point sign {sign!r}")
            pts.append((label, 1 if sign == "+" else -1))
        return ("black", tuple(pts))
    raise ParseError(f"unknown slot kind {kind!r}")


def parse_surface(text) -> DecoratedSurface:
    doc = _load(text, {"polygons", "pairings", "name"}, {"polygons", "pairings"})
    try:
        polys = tuple(tuple(_slot(s) for s in poly) for poly in doc["polygons"])
        pairs = []
        for rec in doc["pairings"]:
            if set(rec) - {"edge", "orientation"}:
                raise ParseError(f"unknown pairing fields {sorted(set(rec) - {'edge', 'orientation'})}")
            edge = rec["edge"]
            pairs.append((edge if isinstance(edge, str) else int(edge), rec.get("orientation", "reversing")))
    except (TypeError, ValueError, KeyError) as err:
        raise ParseError(f"syntax error: {err}") from None
    return DecoratedSurface(polys, tuple(pairs))


def surface_to_dict(surf: DecoratedSurface) -> dict:
    polys = []
    for poly in surf.polygons:
        slots = []
        for kind, val in poly:
            if kind == "green":
                slots.append({"green": val})
            else:
                slots.append({"black": [[lab, "+" if s > 0 else "-"] for lab, s in val]})
        polys.append(slots)
    return {"polygons": polys, "pairings": [{"edge": g, "orientation": o} for g, o in surf.pairings]}


def hom_dim(ring: FusionRing, objects: list[int]) -> int:
    """``dim Hom(1, X_1 ... X_k)`` by multiplying fusion matrices."""
    v = np.zeros(ring.rank, dtype=np.int64)
    v[0] = 1
    for x in objects:
        v = v @ ring.N[:, x, :]
    return int(v[0])


def _resolve(ring: FusionRing, label) -> int:
    return ring.index(label)


def green_colorings(ring: FusionRing, surf: DecoratedSurface):
    """Yield ``(coloring, [objects per polygon])`` for every green coloring."""
    greens = surf.green_edges
    marks = []
    for poly in surf.polygons:
        marks.append([(kind, val if kind == "green" else
                       [ring.dual[_resolve(ring, lab)] if s < 0 else _resolve(ring, lab) for lab, s in val])
                      for kind, val in poly])
    for colors in itertools.product(range(ring.rank), repeat=len(greens)):
        col = dict(zip(greens, colors))
        seen = set()
        per_poly = []
        for poly in marks:
            objs = []
            for kind, val in poly:
                if kind == "green":
                    c = col[val]
                    objs.append(ring.dual[c] if val in seen else c)
                    seen.add(val)
                else:
                    objs.extend(val)
            per_poly.append(objs)
        yield col, per_poly


def dim_state_space(ring: FusionRing, surf: DecoratedSurface) -> int:
    """Size of the polygon basis: ``sum_c prod_i dim Hom(1, X(Delta_i^c))``."""
    total = 0
    for _, per_poly in green_colorings(ring, surf):
        w = 1
        for objs in per_poly:
            w *= hom_dim(ring, objs)
            if not w:
                break
        total += w
    return total


# --------------------------------------------------------------------------
# closed surfaces

def pants_graph(genus: int) -> tuple[int, list[tuple[int, int]]]:
    """Trivalent graph whose thickening has boundary of the given genus (``g >= 2``).

    Vertices ``0 .. 2g-3`` in a chain with a loop at each end; the inner
    vertices are joined in consecutive pairs by a second edge.  It has
    ``3g - 3`` edges (the cutting circles) and first Betti number ``g``.
    """
    if genus < 2:
        raise ValueError("pants decompositions need genus >= 2")
    n = 2 * genus - 2
    edges = [(0, 0), (n - 1, n - 1)] + [(i, i + 1) for i in range(n - 1)]
    edges += [(i, i + 1) for i in range(1, n - 2, 2)]
    return n, edges


def dim_closed_surface(md: ModularData, genus: int, check: bool = True) -> int:
    """Number of center-colored pants-decomposition basis vectors.

    Each cutting circle is oriented from its first to its second vertex; a
    pair of pants contributes ``dim Hom(Y_i Y_j Y_k, 1)`` with incoming
    circles read as duals.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    if genus == 0:
        value = 1
    elif genus == 1:
        value = md.rank
    else:
        Nz = md.fusion if md.fusion is not None else np.round(md.verlinde_tensor().real).astype(np.int64)
        dual = md.charge_conjugation()
        n, edges = pants_graph(genus)
        # hom[i, j, k] = dim Hom(Y_i Y_j Y_k, 1) = N_{ij}^{k*}
        hom = Nz[:, :, dual]
        value = 0
        for colors in itertools.product(range(md.rank), repeat=len(edges)):
            legs = [[] for _ in range(n)]
            for (u, v), c in zip(edges, colors):
                legs[u].append(c)
                legs[v].append(dual[c])
            w = 1
            for lg in legs:
                w *= int(hom[lg[0], lg[1], lg[2]])
                if not w:
                    break
            value += w
    if check:
        ver = verlinde_dimension(md, genus)
        if ver != value:
            raise InvariantError("Verlinde consistency", f"pants count {value} != Verlinde {ver} at genus {genus}")
    return value


# --------------------------------------------------------------------------
# standard surfaces

def _arc(mark):
    if mark is None:
        return ("black", ())
    lab, sign = mark if isinstance(mark, tuple) else (mark, 1)
    return ("black", ((lab, sign),))


def three_holed_sphere(marks=(None, None, None)) -> DecoratedSurface:
    """Two truncated triangles glued along three green edges.

    Hole ``k`` is bounded by the ``k``-th black arc of each triangle; a
    marked point ``marks[k]`` (label, or ``(label, sign)``) sits on the arc
    of the first triangle.
    """
    p1 = (_arc(marks[0]), ("green", "x"), _arc(marks[1]), ("green", "y"), _arc(marks[2]), ("green", "z"))
    # the second triangle traverses the green edges in the opposite order
    p2 = (("black", ()), ("green", "z"), ("black", ()), ("green", "y"), ("black", ()), ("green", "x"))
    pairs = (("x", "reversing"), ("y", "reversing"), ("z", "reversing"))
    return DecoratedSurface((p1, p2), pairs)


def three_holed_sphere_quad(marks=(None, None, None)) -> DecoratedSurface:
    """The same 3-holed sphere from a single truncated square.

    Slots run ``A, u, B, u, C, v, D, v``: folding each pair of adjacent
    green edges closes arcs ``B`` and ``D`` into holes of their own, while
    ``A`` and ``C`` join into the third hole.  ``marks`` sit on ``B``, ``D``
    and ``A`` respectively.
    """
    poly = (_arc(marks[2]), ("green", "u"), _arc(marks[0]), ("green", "u"),
            ("black", ()), ("green", "v"), _arc(marks[1]), ("green", "v"))
    return DecoratedSurface((poly,), (("u", "reversing"), ("v", "reversing")))


def annulus() -> DecoratedSurface:
    """A truncated 2-gon with its two green edges glued to each other."""
    return DecoratedSurface(((("black", ()), ("green", "a"), ("black", ()), ("green", "a")),),
                            (("a", "reversing"),))
