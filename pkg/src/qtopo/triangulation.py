"""Closed oriented 3-manifolds presented by face gluings of tetrahedra.

``gluings[t][i] = (u, j, perm)`` glues face ``i`` of tetrahedron ``t`` (the
face opposite vertex ``i``) to face ``j`` of tetrahedron ``u``; ``perm``
sends local vertex ``k`` of ``t`` to local vertex ``perm[k]`` of ``u`` and
satisfies ``perm[i] = j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .category import InvariantError, ParseError, _load

__all__ = [
    "Triangulation", "parse_triangulation", "triangulation_to_dict", "first_homology",
    "lens_space", "torus3", "s2xs1", "TET_EDGES",
]

# local edges in the order (a, b, c, d, e, f) of [F^{abc}_d]_{ef}
TET_EDGES = ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3))
_EDGE_INDEX = {e: i for i, e in enumerate(TET_EDGES)}


def _perm_sign(p) -> int:
    sign = 1
    for i, j in itertools.combinations(range(len(p)), 2):
        if p[i] > p[j]:
            sign = -sign
    return sign


class _ParityUnionFind:
    """Union-find tracking a Z/2 parity of each element relative to its root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        par = 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            par ^= self.parity[x]
            x = self.parent[x]
        # path compression with parities relative to the root
        acc = par
        for y in path:
            p_old = self.parity[y]
            self.parent[y] = x
            self.parity[y] = acc
            acc ^= p_old
        return x, par

    def union(self, a: int, b: int, rel: int) -> bool:
        """Impose ``parity(a) xor parity(b) = rel``; return False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == rel
        self.parent[ra] = rb
        self.parity[ra] = pa ^ pb ^ rel
        return True


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Validated gluing table with derived edge, vertex and orientation data.

    ``edge_of[t][k]`` is the edge orbit of local edge ``TET_EDGES[k]`` and
    ``edge_flip[t][k]`` is 1 when the local direction (low to high vertex)
    disagrees with the orbit's reference direction.
    """

    gluings: tuple
    name: str = ""
    edge_of: np.ndarray = field(init=False, repr=False)
    edge_flip: np.ndarray = field(init=False, repr=False)
    vertex_of: np.ndarray = field(init=False, repr=False)
    orientation: np.ndarray = field(init=False, repr=False)
    n_edges: int = field(init=False)
    n_vertices: int = field(init=False)

    def __post_init__(self):
        glue = tuple(tuple((int(u), int(j), tuple(int(x) for x in p)) for u, j, p in faces)
                     for faces in self.gluings)
        object.__setattr__(self, "gluings", glue)
        n = len(glue)
        if n == 0:
            raise ParseError("a triangulation needs at least one tetrahedron")
        for t, faces in enumerate(glue):
            if len(faces) != 4:
                raise ParseError(f"tetrahedron {t} has {len(faces)} gluing records")
            for i, (u, j, p) in enumerate(faces):
                if not (0 <= u < n and 0 <= j < 4) or sorted(p) != [0, 1, 2, 3]:
                    raise ParseError(f"bad gluing record on face {i} of tetrahedron {t}")
                if p[i] != j:
                    raise InvariantError("gluing", f"perm of face ({t},{i}) does not send {i} to {j}", (t, i))
                if (u, j) == (t, i):
                    raise InvariantError("unglued face", f"face ({t},{i}) is glued to itself", (t, i))
                back = glue[u][j]
                inv = tuple(p.index(k) for k in range(4))
                if back[0] != t or back[1] != i or tuple(back[2]) != inv:
                    raise InvariantError("involutive gluing", f"face ({t},{i}) and ({u},{j}) disagree", (t, i))
        self._orient()
        self._edges()
        self._vertices()
        chi = self.n_vertices - self.n_edges + 2 * n - n
        if chi != 0:
            raise InvariantError("Euler characteristic", f"v - e + f - t = {chi}, expected 0")

    @property
    def n_tet(self) -> int:
        return len(self.gluings)

    def _orient(self):
        n = self.n_tet
        sign = [0] * n
        sign[0] = 1
        queue = [0]
        while queue:
            t = queue.pop()
            for i, (u, j, p) in enumerate(self.gluings[t]):
                # odd gluing map between equally oriented tetrahedra reverses the induced face orientation
                want = sign[t] if _perm_sign(p) < 0 else -sign[t]
                if sign[u] == 0:
                    sign[u] = want
                    queue.append(u)
                elif sign[u] != want:
                    raise InvariantError("orientability", f"inconsistent orientation across face ({t},{i})", (t, i))
        if 0 in sign:
            raise InvariantError("connectivity", "gluing graph is disconnected")
        object.__setattr__(self, "orientation", np.array(sign, dtype=np.int64))

    def _edges(self):
        n = self.n_tet
        uf = _ParityUnionFind(6 * n)
        for t, faces in enumerate(self.gluings):
            for i, (u, j, p) in enumerate(faces):
                for k, (a, b) in enumerate(TET_EDGES):
                    if i in (a, b):
                        continue
                    pa, pb = p[a], p[b]
                    k2 = _EDGE_INDEX[(min(pa, pb), max(pa, pb))]
                    if not uf.union(6 * t + k, 6 * u + k2, int(pa > pb)):
                        raise InvariantError("edge identification", f"edge {(a, b)} of tetrahedron {t} "
                                             "is identified with itself reversed", (t, k))
        roots = {}
        edge_of = np.zeros((n, 6), dtype=np.int64)
        flip = np.zeros((n, 6), dtype=np.int64)
        for x in range(6 * n):
            root, par = uf.find(x)
            edge_of[x // 6, x % 6] = roots.setdefault(root, len(roots))
            flip[x // 6, x % 6] = par
        object.__setattr__(self, "edge_of", edge_of)
        object.__setattr__(self, "edge_flip", flip)
        object.__setattr__(self, "n_edges", len(roots))

    def _vertices(self):
        n = self.n_tet
        parent = list(range(4 * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, faces in enumerate(self.gluings):
            for i, (u, j, p) in enumerate(faces):
                for k in range(4):
                    if k != i:
                        parent[find(4 * t + k)] = find(4 * u + p[k])
        roots = {}
        vertex_of = np.array([[roots.setdefault(find(4 * t + k), len(roots)) for k in range(4)]
                              for t in range(n)], dtype=np.int64)
        object.__setattr__(self, "vertex_of", vertex_of)
        object.__setattr__(self, "n_vertices", len(roots))

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_tet

    def edge_degrees(self) -> np.ndarray:
        return np.bincount(self.edge_of.reshape(-1), minlength=self.n_edges)

    def face_orbits(self) -> list[tuple[int, int]]:
        """One representative ``(tet, face)`` per glued pair of faces."""
        seen, reps = set(), []
        for t, faces in enumerate(self.gluings):
            for i, (u, j, _) in enumerate(faces):
                if (t, i) not in seen:
                    seen.add((t, i))
                    seen.add((u, j))
                    reps.append((t, i))
        return reps


def parse_triangulation(text, name: str = "") -> Triangulation:
    doc = _load(text, {"tets", "name"}, {"tets"})
    try:
        glue = [[(int(rec[0]), int(rec[1]), [int(x) for x in rec[2]]) for rec in tet] for tet in doc["tets"]]
    except (TypeError, ValueError, IndexError) as err:
        raise ParseError(f"syntax error: {err}") from None
    return Triangulation(tuple(glue), doc.get("name", name))


def triangulation_to_dict(tri: Triangulation) -> dict:
    out = {"tets": [[[u, j, list(p)] for u, j, p in faces] for faces in tri.gluings]}
    if tri.name:
        out["name"] = tri.name
    return out


def first_homology(tri: Triangulation) -> tuple[int, tuple[int, ...]]:
    """``(betti, torsion)`` with ``H_1 = Z^betti + sum Z/torsion_i`` (each ``torsion_i > 1``).

    Cellular chains: faces map to their three edges with orientation signs,
    edges map to ``head - tail``.  Torsion comes from the Smith normal form
    of the face boundary map.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import invariant_factors

    faces = tri.face_orbits()
    d2 = np.zeros((tri.n_edges, len(faces)), dtype=np.int64)
    for col, (t, i) in enumerate(faces):
        verts = [k for k in range(4) if k != i]
        # boundary of the face (v0 < v1 < v2) is [v1 v2] - [v0 v2] + [v0 v1]
        for (a, b), coeff in (((verts[1], verts[2]), 1), ((verts[0], verts[2]), -1), ((verts[0], verts[1]), 1)):
            k = _EDGE_INDEX[(a, b)]
            sgn = -1 if tri.edge_flip[t, k] else 1
            d2[tri.edge_of[t, k], col] += coeff * sgn
    d1 = np.zeros((tri.n_vertices, tri.n_edges), dtype=np.int64)
    done = set()
    for t in range(tri.n_tet):
        for k, (a, b) in enumerate(TET_EDGES):
            e = tri.edge_of[t, k]
            if e in done:
                continue
            done.add(e)
            tail, head = (b, a) if tri.edge_flip[t, k] else (a, b)
            d1[tri.vertex_of[t, head], e] += 1
            d1[tri.vertex_of[t, tail], e] -= 1
    if np.any(d1 @ d2):
        raise InvariantError("chain complex", "boundary of boundary is nonzero")
    rank1 = int(np.linalg.matrix_rank(d1)) if d1.size else 0
    if d2.size:
        factors = [abs(int(x)) for x in invariant_factors(Matrix(d2.tolist()))]
    else:
        factors = []
    nonzero = [f for f in factors if f != 0]
    betti = tri.n_edges - rank1 - len(nonzero)
    torsion = tuple(sorted(f for f in nonzero if f > 1))
    return betti, torsion


# --------------------------------------------------------------------------
# builders

def lens_space(p: int, q: int = 1) -> Triangulation:
    """``p`` tetrahedra around the axis of a suspended ``p``-gon.

    Tetrahedron ``i`` has vertices (north, south, ``v_i``, ``v_{i+1}``); its
    upper face is glued to the lower face of tetrahedron ``i + q`` after a
    rotation by ``q`` steps, which gives ``L(p, q)``.  ``q = 0`` gives the
    3-sphere for any ``p``.
    """
    if p < 1:
        raise ValueError("p must be positive")
    glue = [[None] * 4 for _ in range(p)]
    for i in range(p):
        glue[i][2] = ((i + 1) % p, 3, (0, 1, 3, 2))
        glue[(i + 1) % p][3] = (i, 2, (0, 1, 3, 2))
        glue[i][1] = ((i + q) % p, 0, (1, 0, 2, 3))
        glue[(i + q) % p][0] = (i, 1, (1, 0, 2, 3))
    return Triangulation(tuple(tuple(g) for g in glue), f"L({p},{q})")


def _glue_cells(cells: list[list[tuple]], reduce) -> tuple:
    """Glue tetrahedra whose faces coincide after translation.

    ``cells[t]`` lists the four vertex points of tetrahedron ``t`` and
    ``reduce(face)`` maps the three points of a face to their translates in
    a fundamental domain, so that identified faces reduce to equal point
    lists (in some order).
    """
    table: dict = {}
    for t, pts in enumerate(cells):
        for i in range(4):
            face = reduce([pts[k] for k in range(4) if k != i])
            table.setdefault(frozenset(face), []).append((t, i, face))
    glue = [[None] * 4 for _ in cells]
    for members in table.values():
        if len(members) != 2:
            raise InvariantError("gluing", f"a face has {len(members)} incident tetrahedra")
        (t, i, ft), (u, j, fu) = members
        lt = [k for k in range(4) if k != i]
        lu = [k for k in range(4) if k != j]
        perm = [0] * 4
        perm[i] = j
        for k, pt in zip(lt, ft):
            perm[k] = lu[fu.index(pt)]
        glue[t][i] = (u, j, tuple(perm))
        glue[u][j] = (t, i, tuple(perm.index(x) for x in range(4)))
    return tuple(tuple(g) for g in glue)


def torus3() -> Triangulation:
    """Kuhn triangulation of the unit cube with opposite faces identified.

    One tetrahedron per ordering of the three axes, with vertices the
    monotone lattice path from ``(0,0,0)`` to ``(1,1,1)``.
    """
    cells = []
    for order in itertools.permutations(range(3)):
        pt = [0, 0, 0]
        pts = [tuple(pt)]
        for axis in order:
            pt[axis] += 1
            pts.append(tuple(pt))
        cells.append(pts)

    def reduce(face):
        shift = [min(p[a] for p in face) for a in range(3)]
        return [tuple(p[a] - shift[a] for a in range(3)) for p in face]

    return Triangulation(_glue_cells(cells, reduce), "T3")


def s2xs1() -> Triangulation:
    """``S^2 x S^1`` from prisms over the boundary of a tetrahedron.

    Each triangle ``{0,1,2,3} - {i}`` of the 2-sphere is crossed with a
    periodic interval and split into three tetrahedra by the staircase rule
    (vertex ``v`` at height 0 precedes vertex ``v`` at height 1).
    """
    cells = []
    for drop in range(4):
        tri = [k for k in range(4) if k != drop]
        for s in range(3):
            cells.append([(v, 0) for v in tri[: s + 1]] + [(v, 1) for v in tri[s:]])

    def reduce(face):
        lo = min(h for _, h in face)
        return [(v, h - lo) for v, h in face]

    return Triangulation(_glue_cells(cells, reduce), "S2xS1")
