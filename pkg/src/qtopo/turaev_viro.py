"""Turaev-Viro / Barrett-Westbury state sums.

    TV(M) = mu^(-v) sum_colorings prod_edges d_e prod_tets G(t)^(+-1)

where ``G = F / sqrt(d_e d_f)`` is the symmetrized 6j symbol read off with
the tetrahedron's local vertex order and the ``-1`` exponent means complex
conjugation on negatively oriented tetrahedra.  A local edge whose
direction disagrees with its orbit's reference direction carries the dual
label.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .category import DataError, FSymbolSet, frobenius_perron_data
from .triangulation import TET_EDGES, Triangulation, first_homology

__all__ = ["tv_invariant", "vec_g_oracle", "StateSumPlan", "DEFAULT_NODE_CAP"]

DEFAULT_NODE_CAP = 10 ** 8

# local faces as triples of local edge indices (face opposite vertex i)
_FACE_EDGES = []
for _i in range(4):
    _verts = [k for k in range(4) if k != _i]
    _FACE_EDGES.append(tuple(TET_EDGES.index((a, b)) for a, b in
                             ((_verts[0], _verts[1]), (_verts[1], _verts[2]), (_verts[0], _verts[2]))))


class StateSumPlan:
    """Edge visiting order and the tetrahedra / faces completed at each step."""

    def __init__(self, tri: Triangulation):
        deg = tri.edge_degrees()
        self.order = sorted(range(tri.n_edges), key=lambda e: (-deg[e], e))
        position = {e: k for k, e in enumerate(self.order)}
        self.tets_at = [[] for _ in self.order]
        for t in range(tri.n_tet):
            last = max(position[e] for e in tri.edge_of[t])
            self.tets_at[last].append(t)
        # face checks: (edges x, y, z) in the face's own direction with flips
        self.faces_at = [[] for _ in self.order]
        seen = set()
        for t in range(tri.n_tet):
            for fi, ks in enumerate(_FACE_EDGES):
                key = tuple(sorted((int(tri.edge_of[t, k]), int(tri.edge_flip[t, k])) for k in ks))
                if key in seen:
                    continue
                seen.add(key)
                last = max(position[tri.edge_of[t, k]] for k in ks)
                self.faces_at[last].append((t, ks))


def _weights(fs: FSymbolSet):
    dims = frobenius_perron_data(fs.ring)
    d = dims.d
    F = fs.array
    sq = np.sqrt(d)
    G = F / (sq[None, None, None, None, :, None] * sq[None, None, None, None, None, :])
    return dims, G, np.conj(G)


def tv_invariant(fs: FSymbolSet, tri: Triangulation, node_cap: int = DEFAULT_NODE_CAP,
                 workers: int = 1) -> complex:
    """State sum over admissible edge colorings, by backtracking.

    The enumeration is split into shards by the color of the first edge in
    the visiting order; shards are summed in color order, so the serial
    (``workers=1``) and threaded results are bitwise identical.
    """
    ring = fs.ring
    if not ring.multiplicity_free:
        raise DataError("state sums require multiplicity-free fusion")
    dims, G, Gc = _weights(fs)
    d, mu = dims.d, dims.mu
    N, dual, r = ring.N, ring.dual, ring.rank
    plan = StateSumPlan(tri)
    order = plan.order
    n_e = len(order)
    orient = tri.orientation
    edge_of, flip = tri.edge_of, tri.edge_flip

    def local_labels(color, t):
        return [dual[color[edge_of[t, k]]] if flip[t, k] else color[edge_of[t, k]] for k in range(6)]

    def face_ok(color, t, ks):
        lab = [dual[color[edge_of[t, k]]] if flip[t, k] else color[edge_of[t, k]] for k in ks]
        # edges (v0 v1), (v1 v2), (v0 v2): the third is in the product of the first two
        return N[lab[0], lab[1], lab[2]] != 0

    def shard(first_color):
        color = [0] * n_e
        nodes = [0]

        def rec(pos, weight):
            nodes[0] += 1
            if nodes[0] > node_cap:
                raise DataError(f"coloring-space cap exceeded ({node_cap} nodes)")
            e = order[pos]
            total = 0j
            choices = [first_color] if pos == 0 else range(r)
            for c in choices:
                color[e] = c
                if any(not face_ok(color, t, ks) for t, ks in plan.faces_at[pos]):
                    continue
                w = weight * d[c]
                for t in plan.tets_at[pos]:
                    lab = local_labels(color, t)
                    w *= (G if orient[t] > 0 else Gc)[tuple(lab)]
                if w == 0:
                    continue
                total += w if pos == n_e - 1 else rec(pos + 1, w)
            return total

        return rec(0, 1.0 + 0j), nodes[0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard, range(r)))
    else:
        parts = [shard(c) for c in range(r)]
    if sum(p[1] for p in parts) > node_cap:
        raise DataError(f"coloring-space cap exceeded ({node_cap} nodes)")
    total = 0j
    for value, _ in parts:
        total += value
    return complex(total * mu ** (-tri.n_vertices))


def vec_g_oracle(order: int, tri: Triangulation) -> Fraction:
    """``|Hom(H_1(M), Z_n)| / n`` from the invariant factors of ``H_1``."""
    betti, torsion = first_homology(tri)
    homs = order ** betti * prod(gcd(t, order) for t in torsion)
    return Fraction(homs, order)
