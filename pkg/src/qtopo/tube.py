"""Tube algebra of a multiplicity-free fusion category and its Drinfeld center.

A tube ``(a, s, b; c)`` is the annular diagram with inner boundary label
``a``, outer boundary label ``b`` and a strand ``s`` wrapping once around
the annulus; it is the morphism ``v^{bs}_c w^{sa}_c`` in ``Hom(s a, b s)``
that splits ``s a`` into ``c`` and fuses ``c`` into ``b s``.  The internal
channel ``c`` is part of the basis label because fusion spaces are at most
one dimensional.

The center is recovered as the category of modules of this semisimple
algebra: minimal central idempotents are simple objects of ``Z(C)``.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field

import numpy as np

from ._config import get_tol
from .category import (
    DataError, DimensionData, FSymbolSet, InvariantError, ModularData, frobenius_perron_data,
)

__all__ = [
    "TubeAlgebra", "CenterData", "build_tube_algebra", "decompose_center",
    "center_from_square", "match_modular_data", "canonical_order",
]

DEFAULT_SEED = 20240229
MAX_RETRIES = 8


@dataclass(frozen=True, eq=False)
class TubeAlgebra:
    """Finite-dimensional algebra spanned by admissible tubes.

    ``structure[i, j, k]`` is the coefficient of basis tube ``k`` in
    ``basis[i] * basis[j]`` where the product means "``basis[j]`` first,
    then ``basis[i]`` stacked outside it".
    """

    fs: FSymbolSet
    basis: tuple[tuple[int, int, int, int], ...]
    structure: np.ndarray
    index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: dict) -> np.ndarray:
        """Vector for a linear combination given as ``{(a, s, b, c): coefficient}``."""
        x = np.zeros(self.dim, dtype=complex)
        for key, val in coeffs.items():
            x[self.index[tuple(key)]] += val
        return x

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix ``L`` of ``y -> x y``."""
        return np.einsum("i,ijk->kj", x, self.structure)

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix ``R`` of ``y -> y x``."""
        return np.einsum("j,ijk->ki", x, self.structure)

    @property
    def unit(self) -> np.ndarray:
        r = self.fs.ring.rank
        return self.element({(a, 0, a, a): 1.0 for a in range(r)})

    def projector(self, a: int) -> np.ndarray:
        """Trivial tube ``(a, 0, a; a)``: identity on boundary label ``a``."""
        return self.element({(a, 0, a, a): 1.0})

    def spiral(self) -> np.ndarray:
        """``sum_{a,c} (a, a, a; c)``: the Dehn twist of the annulus, a central element."""
        r, N = self.fs.ring.rank, self.fs.ring.N
        return self.element({(a, a, a, c): 1.0 for a in range(r) for c in range(r) if N[a, a, c]})

    def associativity_residual(self, seed: int = 0, samples: int = 3) -> float:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(samples):
            x, y, z = rng.normal(size=(3, self.dim)) + 1j * rng.normal(size=(3, self.dim))
            lhs = self.multiply(self.multiply(x, y), z)
            rhs = self.multiply(x, self.multiply(y, z))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst


def build_tube_algebra(fs: FSymbolSet, tol: float | None = None) -> TubeAlgebra:
    """Tube algebra with structure constants contracted from the F-symbols.

    Stacking ``(b, t, c2; e)`` outside ``(a, s, b; c)`` and recoupling the
    two wrapping strands into one strand ``u`` gives

        sum_{u, z} F^{tsa}_{z; u c} conj(F^{tbs}_{z; e c}) F^{c2 t s}_{z; e u} (a, u, c2; z).
    """
    tol = get_tol() if tol is None else tol
    ring = fs.ring
    if not ring.multiplicity_free:
        raise InvariantError("multiplicity-free", "tube algebra requires all N <= 1")
    r, N, F = ring.rank, ring.N, fs.array
    basis = tuple((a, s, b, c) for a, s, b, c in itertools.product(range(r), repeat=4)
                  if N[s, a, c] and N[b, s, c])
    index = {t: i for i, t in enumerate(basis)}
    n = len(basis)
    C = np.zeros((n, n, n), dtype=complex)
    for j, (a, s, b, c) in enumerate(basis):
        for i, (b2, t, c2, e) in enumerate(basis):
            if b2 != b:
                continue
            for u, z in itertools.product(range(r), repeat=2):
                k = index.get((a, u, c2, z))
                if k is None:
                    continue
                C[i, j, k] += F[t, s, a, z, u, c] * np.conj(F[t, b, s, z, e, c]) * F[c2, t, s, z, e, u]
    tube = TubeAlgebra(fs, basis, C, index)
    res = tube.associativity_residual()
    if res > tol * max(1.0, float(np.abs(C).max())) * 10:
        raise InvariantError("associativity", f"tube algebra residual {res:.3e}; F conventions are inconsistent")
    unit = tube.unit
    x = np.random.default_rng(1).normal(size=n)
    if np.abs(tube.multiply(unit, x) - x).max() > tol or np.abs(tube.multiply(x, unit) - x).max() > tol:
        raise InvariantError("unit", "sum of trivial tubes is not a two-sided unit")
    return tube


# --------------------------------------------------------------------------
# center

@dataclass(frozen=True, eq=False)
class CenterData:
    """Simple objects of ``Z(C)`` with their modular data and induction matrix.

    ``induction[V, X]`` is the multiplicity of ``X`` in the induced object
    ``I(V)``.  Index 0 is the vacuum.  ``modular`` is ``None`` only when the
    computed S matrix failed validation; S-dependent requests then raise.
    """

    tube: TubeAlgebra
    dims_c: DimensionData
    labels: tuple[str, ...]
    dims: np.ndarray
    twists: np.ndarray
    induction: np.ndarray
    idempotents: np.ndarray
    block_sizes: np.ndarray
    seed: int
    modular_error: str | None = None
    md: ModularData | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def fs(self) -> FSymbolSet:
        return self.tube.fs

    @property
    def mu(self) -> float:
        return self.dims_c.mu

    @property
    def modular(self) -> ModularData:
        if self.md is None:
            raise DataError(f"center S matrix unavailable: {self.modular_error}")
        return self.md

    def character(self, x: np.ndarray, X: int) -> complex:
        """Trace of tube element ``x`` on the simple module of block ``X``."""
        L = self.tube.left_matrix(x)
        Le = self.tube.left_matrix(self.idempotents[X])
        return complex(np.trace(L @ Le) / self.block_sizes[X])

    def characters(self, x: np.ndarray) -> np.ndarray:
        return np.array([self.character(x, X) for X in range(self.rank)])

    def central_value(self, x: np.ndarray, X: int) -> complex:
        """Eigenvalue of a central element on block ``X``."""
        return self.character(x, X) / self.block_sizes[X]


def _nullspace(A: np.ndarray, tol: float) -> np.ndarray:
    _, sv, vh = np.linalg.svd(A)
    rank = int(np.sum(sv > tol * max(1.0, sv.max() if sv.size else 1.0)))
    return vh[rank:].conj()


def _central_idempotents(tube: TubeAlgebra, seed: int, tol: float) -> np.ndarray:
    n = tube.dim
    eye = np.eye(n)
    blocks = [tube.left_matrix(eye[i]) - tube.right_matrix(eye[i]) for i in range(n)]
    Z = _nullspace(np.concatenate(blocks), 1e-9)
    k = Z.shape[0]
    for attempt in range(MAX_RETRIES):
        rng = np.random.default_rng(seed + attempt)
        c = rng.normal(size=k) @ Z
        # multiplication by c restricted to the center, in the basis Z
        Mc = np.linalg.lstsq(Z.T, np.array([tube.multiply(c, z) for z in Z]).T, rcond=None)[0]
        w, V = np.linalg.eig(Mc)
        gaps = np.abs(w[:, None] - w[None, :]) + np.eye(k) * 1e9
        if k > 1 and gaps.min() < 1e-6:
            continue
        E = []
        for col in V.T:
            el = col @ Z
            sq = tube.multiply(el, el)
            lam = np.vdot(el, sq) / np.vdot(el, el)
            E.append(el / lam)
        E = np.array(E)
        if np.abs(E.sum(axis=0) - tube.unit).max() < 1e3 * tol:
            return E, seed + attempt
    raise InvariantError("block detection", f"no separating central element after {MAX_RETRIES} seeds")


def _twist_key(theta: complex) -> float:
    ang = cmath.phase(theta)
    return round(ang, 6) if abs(ang + cmath.pi) > 1e-7 else round(cmath.pi, 6)


def canonical_order(dims, twists, vacuum: int, extra=None) -> list[int]:
    """Vacuum first, then ascending (dimension, twist argument, extra key)."""
    rest = [X for X in range(len(dims)) if X != vacuum]
    rest.sort(key=lambda X: (round(float(dims[X]), 6), _twist_key(twists[X]),
                             extra(X) if extra else ()))
    return [vacuum] + rest


def decompose_center(tube: TubeAlgebra, fs: FSymbolSet | None = None, seed: int = DEFAULT_SEED,
                     tol: float | None = None) -> CenterData:
    """Split the tube algebra into simple blocks and read off the center's data.

    For a block ``X`` with idempotent ``e_X`` the simple module has dimension
    ``n_X = sqrt(Tr L(e_X))``.  Induction multiplicities are the characters of
    the trivial tubes ``(a, 0, a; a)``, the twist is the eigenvalue of the
    annular Dehn twist, and S comes from the doubled pairing
    ``S[X, Y] = conj(mu^-1 sum_{a,s,z} d_a d_s / d_z chi_X(a,s,a;z) chi_Y(s,a,s;z))``.
    """
    tol = get_tol() if tol is None else tol
    fs = tube.fs if fs is None else fs
    ring = fs.ring
    r, N = ring.rank, ring.N
    dimdata = frobenius_perron_data(ring)
    d, mu = dimdata.d, dimdata.mu
    E, used_seed = _central_idempotents(tube, seed, tol)
    k = len(E)
    sizes = np.array([np.sqrt(max(np.trace(tube.left_matrix(e)).real, 0.0)) for e in E])

    def chi(x, X):
        return np.trace(tube.left_matrix(x) @ tube.left_matrix(E[X])) / sizes[X]

    B = np.array([[chi(tube.projector(a), X) for X in range(k)] for a in range(r)])
    if np.abs(B - np.round(B.real)).max() > 1e-6 or (np.round(B.real) < 0).any():
        raise InvariantError("induction", "induction multiplicities are not nonnegative integers")
    B = np.round(B.real).astype(np.int64)
    dims_z = B.T @ d
    spiral = tube.spiral()
    comm = max(np.abs(tube.multiply(spiral, b) - tube.multiply(b, spiral)).max() for b in np.eye(tube.dim))
    if comm > 1e3 * tol:
        raise InvariantError("centrality", "the annular Dehn twist is not central")
    theta = np.array([chi(spiral, X) / chi(tube.unit, X) for X in range(k)])

    vacua = [X for X in range(k) if B[0, X] == 1 and abs(dims_z[X] - 1) < 1e-6
             and all(abs(chi(tube.element({(0, s, 0, s): 1.0}), X) - d[s]) < 1e-6 for s in range(r))]
    if len(vacua) != 1:
        raise InvariantError("vacuum", f"found {len(vacua)} vacuum candidates")

    pair_a = {}  # (a, s, z) -> chi vector on (a, s, a; z)
    for a, s, z in itertools.product(range(r), repeat=3):
        if N[s, a, z] and N[a, s, z]:
            pair_a[(a, s, z)] = np.array([chi(tube.element({(a, s, a, z): 1.0}), X) for X in range(k)])
    S = np.zeros((k, k), dtype=complex)
    for (a, s, z), chi_x in pair_a.items():
        S += d[a] * d[s] / d[z] * np.outer(chi_x, pair_a[(s, a, z)])
    S = np.conj(S / mu)

    def support(X):
        return tuple(int(x) for x in B[:, X])

    def fingerprint(X):
        return tuple(round(float(v), 6) for v in np.concatenate([S[X].real, S[X].imag]))

    order = canonical_order(dims_z, theta, vacua[0], lambda X: (tuple(-x for x in support(X)), fingerprint(X)))
    E, sizes, B, dims_z, theta = E[order], sizes[order], B[:, order], dims_z[order], theta[order]
    S = S[np.ix_(order, order)]
    labels = tuple(f"Z{X}" for X in range(k))

    err, md = None, None
    try:
        md = ModularData.from_matrices(S, theta, labels, tol=max(tol, 1e-8))
    except DataError as exc:
        err = str(exc)
    cd = CenterData(tube, dimdata, labels, dims_z, theta, B, E, sizes, used_seed, err, md)
    _check_center(cd, tol)
    return cd


def _check_center(cd: CenterData, tol: float) -> None:
    d, mu = cd.dims_c.d, cd.mu
    count = cd.induction @ cd.dims
    if np.abs(count - mu * d).max() > 1e-6:
        raise InvariantError("induction dimension count", f"sum_X d_X B[V][X] = {count}, expected {mu * d}")
    if abs(float(np.sum(cd.dims ** 2)) - mu * mu) > 1e-6 * mu * mu:
        raise InvariantError("global dimension", "mu_Z != mu_C^2")
    if cd.md is not None:
        md = cd.modular
        if abs(md.anomaly - 1) > 1e-6:
            raise InvariantError("anomaly", f"p+/D = {md.anomaly}")


def center_from_square(md: ModularData) -> ModularData:
    """Data of ``C x C^rev``: ``S (x) conj(S)`` and ``T (x) conj(T)``."""
    S = np.kron(md.S, md.S.conj())
    T = np.kron(md.T, md.T.conj())
    labels = [f"{a}|{b}*" for a in md.labels for b in md.labels]
    raw = ModularData(S, T, labels)
    dims = raw.dims
    order = canonical_order(dims, T, 0, lambda X: tuple(round(float(v), 6) for v in np.concatenate([S[X].real, S[X].imag])))
    S, T = S[np.ix_(order, order)], T[order]
    return ModularData.from_matrices(S, T, [labels[i] for i in order])


def match_modular_data(a: ModularData, b: ModularData, tol: float = 1e-6) -> list[int] | None:
    """Permutation ``p`` with ``b.S[p][:, p] = a.S`` and ``b.T[p] = a.T``, or ``None``.

    Labels are matched by backtracking over candidates with equal dimension
    and twist, pruning on every already-assigned S entry.
    """
    n = a.rank
    if b.rank != n:
        return None
    cands = [[j for j in range(n) if abs(a.T[i] - b.T[j]) < tol and abs(a.S[0, i] - b.S[0, j]) < tol]
             for i in range(n)]
    perm: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            if all(abs(a.S[i, q] - b.S[j, perm[q]]) < tol for q in range(i)) and abs(a.S[i, i] - b.S[j, j]) < tol:
                used[j] = True
                perm.append(j)
                if extend(i + 1):
                    return True
                perm.pop()
                used[j] = False
        return False

    return list(perm) if extend(0) else None
