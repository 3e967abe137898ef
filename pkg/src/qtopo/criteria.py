"""Positivity criteria for unitary categorification and K0-level Omega identities.

For a unitarily categorifiable fusion ring and every ``n >= 1`` the matrix

    M_n = sum_j d_j^(2 - n) N_j^{(x) n}

is positive semidefinite, and likewise with the fusion matrices of a
unitary module category in place of ``N_j``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._config import get_tol
from .category import DataError, FusionRing, NimRep, frobenius_perron_data

__all__ = [
    "CriterionReport", "criterion_matrix", "min_eigenvalue", "check_positivity",
    "check_module_positivity", "omega_rank_one", "DEFAULT_SIZE_CAP",
]

DEFAULT_SIZE_CAP = 4096
DENSE_LIMIT = 729


@dataclass(frozen=True)
class CriterionReport:
    n: int
    matrix_dim: int
    min_eigenvalue: float
    passed: bool
    method: str = "dense"

    def to_dict(self) -> dict:
        return {"n": self.n, "matrix_dim": self.matrix_dim, "min_eigenvalue": self.min_eigenvalue,
                "pass": self.passed, "method": self.method}


def _kron_power(M: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.kron, [M] * n)


def _weighted_matrices(mats: np.ndarray, d: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((mats.shape[1] ** n,) * 2)
    for j in range(len(d)):
        out += d[j] ** (2 - n) * _kron_power(mats[j].astype(float), n)
    # exact symmetry: the summands pair up under duality, average bitwise
    return (out + out.T) / 2


def criterion_matrix(ring: FusionRing, dims=None, n: int = 1, cap: int = DEFAULT_SIZE_CAP,
                     action: np.ndarray | None = None) -> np.ndarray:
    """``M_n = sum_j d_j^(2-n) N_j^{(x) n}`` (or with module matrices ``action``)."""
    if n < 1:
        raise ValueError("n must be positive")
    dims = frobenius_perron_data(ring) if dims is None else dims
    mats = ring.N if action is None else np.asarray(action)
    size = mats.shape[1] ** n
    if size > cap:
        raise DataError(f"size cap exceeded: {mats.shape[1]}^{n} = {size} > {cap}")
    return _weighted_matrices(mats, dims.d, n)


def min_eigenvalue(M: np.ndarray) -> float:
    """Smallest eigenvalue of a real symmetric matrix (full eigendecomposition)."""
    return float(np.linalg.eigvalsh(np.asarray(M, dtype=float))[0])


def _joint_spectrum(mats: np.ndarray, seed: int = 0):
    """Joint eigenvalues ``lam[j, x]`` of commuting normal matrices, or None.

    A generic combination of the matrices has simple spectrum when they
    generate a maximal commutative algebra; its eigenvectors then
    diagonalize every ``N_j``.
    """
    mats = np.asarray(mats, dtype=float)
    if any(np.abs(a @ b - b @ a).max() > 0 for a in mats for b in mats):
        return None
    rng = np.random.default_rng(seed)
    A = np.einsum("j,jab->ab", rng.normal(size=len(mats)) + 1j * rng.normal(size=len(mats)), mats)
    w, V = np.linalg.eig(A)
    if len(w) > 1 and np.min(np.abs(w[:, None] - w[None, :]) + np.eye(len(w)) * 1e9) < 1e-8:
        return None
    Vinv = np.linalg.inv(V)
    lam = np.array([np.diag(Vinv @ m @ V) for m in mats])
    for m, l in zip(mats, lam):
        if np.abs(m @ V - V * l).max() > 1e-8:
            return None
    return lam


def _spectral_minimum(lam: np.ndarray, d: np.ndarray, n: int) -> float:
    """Minimum over multi-indices ``x`` of ``sum_j d_j^(2-n) prod_t lam[j, x_t]``."""
    total = 0
    for j in range(len(d)):
        total = total + d[j] ** (2 - n) * reduce(np.kron, [lam[j]] * n)
    return float(np.min(total.real))


def _reports(mats: np.ndarray, d: np.ndarray, n_max: int, cap: int, tol: float, workers: int = 1):
    k = mats.shape[1]
    ns = [n for n in range(1, n_max + 1) if k ** n <= cap]
    lam = _joint_spectrum(mats)

    def one(n):
        size = k ** n
        if lam is None or size <= DENSE_LIMIT:
            val, method = min_eigenvalue(_weighted_matrices(mats, d, n)), "dense"
        else:
            val, method = _spectral_minimum(lam, d, n), "joint-spectrum"
        return CriterionReport(n, size, val, val >= -tol, method)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, ns))
    return [one(n) for n in ns]


def check_positivity(ring: FusionRing, n_max: int | None = None, cap: int = DEFAULT_SIZE_CAP,
                     tol: float | None = None) -> list[CriterionReport]:
    """Reports for ``n = 1 .. n_max`` (default: every ``n`` with ``rank^n <= cap``).

    Small matrices are diagonalized densely.  Larger ones use the joint
    spectrum of the (commuting, normal) fusion matrices: the eigenvalues of
    ``M_n`` are ``sum_j d_j^(2-n) prod_t lambda_j(x_t)``.
    """
    tol = get_tol() if tol is None else tol
    if n_max is None:
        n_max = 64
    return _reports(ring.N, frobenius_perron_data(ring).d, n_max, cap, tol)


def check_module_positivity(ring: FusionRing, nim: NimRep, n_max: int | None = None,
                            cap: int = DEFAULT_SIZE_CAP, tol: float | None = None) -> list[CriterionReport]:
    """As :func:`check_positivity` with the module matrices ``Ntilde_j``."""
    tol = get_tol() if tol is None else tol
    if n_max is None:
        n_max = 64
    return _reports(nim.action, frobenius_perron_data(ring).d, n_max, cap, tol)


def omega_rank_one(ring: FusionRing, nim: NimRep, tol: float | None = None) -> tuple[bool, float]:
    """Check ``sum_i d_i Ntilde_i = dM dM^T``; returns ``(holds, max deviation)``."""
    tol = get_tol() if tol is None else tol
    d = frobenius_perron_data(ring).d
    lhs = np.einsum("i,iab->ab", d, nim.action.astype(float))
    res = float(np.abs(lhs - np.outer(nim.dM, nim.dM)).max())
    return res < tol, res
