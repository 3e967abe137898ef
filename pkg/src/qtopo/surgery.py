"""Reshetikhin-Turaev invariants of plumbed 3-manifolds and the torus representation.

A plumbing tree is a surgery diagram made of framed unknots, one per
vertex, with two unknots forming a Hopf link whenever their vertices are
adjacent.  On trees the colored link invariant factorizes over vertices and
edges, which is all :func:`rt_invariant` needs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._config import get_tol, nearest_int
from .category import DataError, InvariantError, ModularData, ParseError, _load

__all__ = [
    "PlumbingTree", "SL2ZWord", "parse_plumbing", "plumbing_to_dict", "signature",
    "rt_invariant", "verlinde_dimension", "sl2z_factor", "word_matrix", "torus_rep_matrix",
    "torus_rep_apply", "GENERATORS", "DEFAULT_COLORING_CAP",
]

DEFAULT_COLORING_CAP = 10 ** 7

GENERATORS = {
    "S": np.array([[0, -1], [1, 0]], dtype=object),
    "T": np.array([[1, 1], [0, 1]], dtype=object),
    "t": np.array([[1, -1], [0, 1]], dtype=object),
}


def signature(B) -> tuple[int, int, int]:
    """``(b_plus, b_minus, b_zero)`` of an integer symmetric matrix.

    Exact congruence diagonalization over the rationals: pivot on a nonzero
    diagonal entry when there is one, otherwise add a row/column with a
    nonzero off-diagonal entry to create one.
    """
    A = [[Fraction(int(x)) for x in row] for row in B]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j makes A[i][i] = 2 A[i][j] + A[j][j] = 2 A[i][j]
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / p
            if f:
                for k in active:
                    A[i][k] -= f * A[piv][k]
        for i in active:
            A[i][piv] = A[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class PlumbingTree:
    """Framed tree (or forest): ``framings[v]`` and undirected ``edges``."""

    framings: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(m) for m in self.framings))
        object.__setattr__(self, "edges", tuple(tuple(sorted((int(u), int(v)))) for u, v in self.edges))
        n = len(self.framings)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"bad edge {(u, v)}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InvariantError("acyclicity", f"cycle detected through edge {(u, v)}", location=(u, v))
            parent[ru] = rv

    @property
    def n_vertices(self) -> int:
        return len(self.framings)

    @property
    def linking_matrix(self) -> np.ndarray:
        n = self.n_vertices
        B = np.diag(np.array(self.framings, dtype=np.int64)) if n else np.zeros((0, 0), dtype=np.int64)
        for u, v in self.edges:
            B[u, v] = B[v, u] = 1
        return B

    @property
    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def signature(self) -> tuple[int, int, int]:
        return signature(self.linking_matrix.tolist())

    @classmethod
    def lens(cls, p: int) -> "PlumbingTree":
        """Single unknot with framing ``p``: the lens space ``L(p, 1)``."""
        return cls((p,), ())


def parse_plumbing(text) -> PlumbingTree:
    doc = _load(text, {"vertices", "edges"}, {"vertices", "edges"})
    try:
        return PlumbingTree(tuple(int(m) for m in doc["vertices"]),
                            tuple((int(e[0]), int(e[1])) for e in doc["edges"]))
    except (TypeError, ValueError, IndexError) as err:
        raise ParseError(f"syntax error: {err}") from None


def plumbing_to_dict(tree: PlumbingTree) -> dict:
    return {"vertices": list(tree.framings), "edges": [list(e) for e in tree.edges]}


def rt_invariant(md: ModularData, tree: PlumbingTree, cap: int = DEFAULT_COLORING_CAP) -> complex:
    """Surgery invariant of the plumbed manifold, normalized so ``RT(S^3) = 1/D``.

    ``D^(-|V|-1) (p+/D)^(-b+) (p-/D)^(-b-) sum_c prod_v d_c theta_c^m d_c^(1-deg) prod_edges S_uv/S_00``.
    """
    r, n = md.rank, tree.n_vertices
    if r ** n > cap:
        raise DataError(f"coloring cap exceeded: {r}^{n} > {cap}")
    D = md.D
    dims = md.dims
    ratio = md.S / md.S[0, 0]
    bp, bm, _ = tree.signature
    deg = tree.degrees
    total = 0j
    for colors in itertools.product(range(r), repeat=n):
        w = 1 + 0j
        for v, c in enumerate(colors):
            w *= dims[c] ** (2 - deg[v]) * md.T[c] ** tree.framings[v]
        for u, v in tree.edges:
            w *= ratio[colors[u], colors[v]]
        total += w
    return complex(D ** (-n - 1) * (md.p_plus / D) ** (-bp) * (md.p_minus / D) ** (-bm) * total)


def verlinde_dimension(md: ModularData, genus: int, tol: float | None = None) -> int:
    """``sum_i (D / d_i)^(2g - 2)``, which must be an integer."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    val = float(np.sum((md.D / md.dims) ** (2 * genus - 2)))
    try:
        return nearest_int(val, (tol or get_tol()) * max(1.0, abs(val)) * 1e3)
    except ValueError:
        raise InvariantError("Verlinde integrality", f"genus-{genus} dimension {val} is not an integer") from None


# --------------------------------------------------------------------------
# SL(2, Z)

@dataclass(frozen=True)
class SL2ZWord:
    """A word over ``S``, ``T`` and ``t = T^-1`` whose product is ``target``."""

    target: tuple[tuple[int, int], tuple[int, int]]
    word: str

    def matrix(self) -> np.ndarray:
        return word_matrix(self.word)


def word_matrix(word: str) -> np.ndarray:
    m = np.eye(2, dtype=object)
    for ch in word:
        m = m.dot(GENERATORS[ch])
    return m.astype(np.int64)


def _as_int_matrix(f) -> tuple[int, int, int, int]:
    arr = np.asarray(f)
    if arr.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    a, b, c, d = (int(x) for x in arr.reshape(-1))
    if a * d - b * c != 1:
        raise ValueError(f"determinant {a * d - b * c} != 1")
    return a, b, c, d


def sl2z_factor(target) -> SL2ZWord:
    """Factor a determinant-one integer matrix into ``S``, ``T``, ``T^-1``.

    Euclidean reduction on the first column: peel ``T^q`` with ``q`` the
    floor quotient, then swap the rows with ``S``.  The remaining upper
    triangular matrix is ``+-T^b``; ``-1`` is written ``S S``.
    """
    a, b, c, d = _as_int_matrix(target)
    word = []
    while c != 0:
        q = a // c
        a, b = a - q * c, b - q * d
        word.append(("T" if q > 0 else "t") * abs(q))
        a, b, c, d = c, d, -a, -b
        word.append("S")
    if a == 1:
        word.append(("T" if b > 0 else "t") * abs(b))
    else:
        word.append("SS" + ("t" if b > 0 else "T") * abs(b))
    out = SL2ZWord(((int(target[0][0]), int(target[0][1])), (int(target[1][0]), int(target[1][1]))), "".join(word))
    if not np.array_equal(out.matrix(), np.array(out.target)):
        raise InvariantError("factorization", f"word {out.word} does not reproduce {out.target}")
    return out


def torus_rep_matrix(md: ModularData, f, strict: bool = True, tol: float | None = None) -> np.ndarray:
    """``rho(f)``: the product of ``S`` and ``diag(T)^+-1`` along the word of ``f``."""
    tol = get_tol() if tol is None else tol
    if strict and abs(md.anomaly - 1) > 1e3 * tol:
        raise InvariantError("anomaly", f"p+/D = {md.anomaly} != 1; the torus representation is only projective")
    word = sl2z_factor(f).word
    gens = {"S": md.S, "T": np.diag(md.T), "t": np.diag(md.T.conj())}
    m = np.eye(md.rank, dtype=complex)
    for ch in word:
        m = m @ gens[ch]
    return m


def torus_rep_apply(md: ModularData, f, vec, strict: bool = True) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (md.rank,):
        raise ValueError(f"vector length {vec.shape} does not match rank {md.rank}")
    return torus_rep_matrix(md, f, strict) @ vec
