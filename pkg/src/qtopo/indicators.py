"""Genus-1 topological indicators and their SL(2, Z)-equivariance.

For a coprime curve ``(m, r)`` on the torus the indicator is read off from
the torus representation of the center,

    I_v((m, r), z) = (B^T v)^T rho(g) z,

where ``B`` is the induction matrix and ``g`` is any determinant-one
matrix with first row ``(m, r)``.  The value does not depend on how ``g``
is completed because ``(B^T v)^T S`` is supported on objects with trivial
twist.  At ``(1, 0)`` this is ``B[V, X]``, the multiplicity of ``X`` in the
induced object ``I(V)``.

:func:`indicator_reference_oracle` computes the same numbers without the
modular data: it builds the colored torus state as an element of the tube
algebra from fusion trees and pairs it with the block of ``X``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._config import get_tol
from .category import DataError
from .fusion_trees import concatenate_trees, left_trees
from .surgery import sl2z_factor, torus_rep_apply
from .tube import CenterData

__all__ = [
    "TorusCurve", "completion", "genus1_indicator", "fs_indicator", "check_equivariance",
    "indicator_reference_oracle", "curve_state", "omega_sum", "omega_sum_from_modular",
    "transpose_action", "word_for",
]


@dataclass(frozen=True)
class TorusCurve:
    """The ``(m, r)`` (multi)curve; ``d = gcd(m, r)`` parallel components."""

    m: int
    r: int

    def __post_init__(self):
        if self.m == 0 and self.r == 0:
            raise ValueError("curve (0, 0) is empty")

    @property
    def d(self) -> int:
        return math.gcd(self.m, self.r)

    @property
    def primitive(self) -> "TorusCurve":
        return TorusCurve(self.m // self.d, self.r // self.d)

    def transform(self, f) -> "TorusCurve":
        """Image under the integer matrix ``f`` acting on the column ``(m, r)``."""
        f = np.asarray(f, dtype=np.int64)
        m, r = f @ np.array([self.m, self.r], dtype=np.int64)
        return TorusCurve(int(m), int(r))

    @classmethod
    def parse(cls, text: str) -> "TorusCurve":
        m, r = (int(x) for x in text.split(","))
        return cls(m, r)


def completion(m: int, r: int) -> np.ndarray:
    """Canonical ``[[m, r], [x, y]]`` of determinant one (``m, r`` coprime).

    ``x`` is the smallest nonnegative solution when ``m != 0``.
    """
    if math.gcd(m, r) != 1:
        raise ValueError(f"({m}, {r}) is not primitive")
    if m == 0:
        return np.array([[0, r], [-r, 0]], dtype=np.int64)
    # extended Euclid for m*y + (-r)*x = 1
    old_r, rem = m, -r
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rem:
        q = old_r // rem
        old_r, rem = rem, old_r - q * rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    y, x = old_s, old_t
    # shifting (x, y) by k (m, r) keeps the determinant; pick x in [0, |m|)
    k = (x % abs(m) - x) // m
    x, y = x + k * m, y + k * r
    g = np.array([[m, r], [x, y]], dtype=np.int64)
    return g


def _vec(v, n: int, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (n,):
        raise ValueError(f"{what} has length {v.shape}, expected {n}")
    return v


def _monomial(v: np.ndarray, tol: float) -> tuple[int, complex] | None:
    nz = [i for i, x in enumerate(v) if abs(x) > tol]
    if len(nz) > 1:
        raise DataError("non-coprime curves need v to be a multiple of a single simple object")
    return (nz[0], complex(v[nz[0]])) if nz else None


def genus1_indicator(cd: CenterData, curve: TorusCurve, v, z, tol: float | None = None) -> complex:
    """``I_v((m, r), z)``, linear in ``z`` (and in ``v`` for coprime curves)."""
    tol = get_tol() if tol is None else tol
    v = _vec(v, cd.fs.ring.rank, "v")
    z = _vec(z, cd.rank, "z")
    if curve.d == 1:
        g = completion(curve.m, curve.r)
        return complex((cd.induction.T @ v) @ torus_rep_apply(cd.modular, g, z))
    mono = _monomial(v, tol)
    if mono is None:
        return 0j
    V, lam = mono
    vals = np.array([indicator_reference_oracle(cd, curve, V, X) for X in range(cd.rank)])
    return complex(lam ** curve.d * (vals @ z))


def fs_indicator(cd: CenterData, n: int, k: int, V: int, z=None) -> complex:
    """Generalized Frobenius-Schur indicator ``nu_{n,k}(V)`` against ``z`` (default: vacuum)."""
    if z is None:
        z = np.eye(cd.rank)[0]
    return genus1_indicator(cd, TorusCurve(n, k), np.eye(cd.fs.ring.rank)[V], z)


def transpose_action(f) -> np.ndarray:
    """Matrix acting on center vectors that compensates ``f`` acting on curves."""
    return np.asarray(f, dtype=np.int64).T


def check_equivariance(cd: CenterData, f, curve: TorusCurve, v, z, tol: float = 1e-6) -> tuple[bool, float]:
    """Compare ``I_v(f(curve), z)`` with ``I_v(curve, rho(f^T) z)``."""
    lhs = genus1_indicator(cd, curve.transform(f), v, z)
    z2 = torus_rep_apply(cd.modular, transpose_action(f), np.asarray(z, dtype=complex))
    rhs = genus1_indicator(cd, curve, v, z2)
    res = abs(lhs - rhs)
    return bool(res < tol), float(res)


# --------------------------------------------------------------------------
# tube-algebra oracle

def curve_state(cd: CenterData, curve: TorusCurve, V: int) -> np.ndarray:
    """Tube-algebra element of the torus whose ``(m, r)`` curve is colored ``V``.

    ``m`` strands of ``V`` run through the annulus and ``l`` strands wrap
    around it; the ``l`` wrapping strands pass over the ``m`` radial ones.
    Each crossing region is resolved by expanding both the incoming and the
    outgoing fusion tree in the left-associated basis and taking their
    overlap.  Negative winding is reduced with powers of the inverse Dehn
    twist.
    """
    fs, tube = cd.fs, cd.tube
    ring = fs.ring
    N = ring.N
    m, l = curve.m, curve.r
    if m < 0 or (m == 0 and l < 0):
        m, l, V = -m, -l, ring.dual[V]
    twists = 0
    if m > 0 and l < 0:
        twists = (-l + m - 1) // m
        l += twists * m
    psi = np.zeros(tube.dim, dtype=complex)
    if m == 0:
        for sig in left_trees(ring, [V] * l):
            psi[tube.index[(0, sig[-1], 0, sig[-1])]] += 1
    else:
        sigs = left_trees(ring, [V] * l) if l > 0 else [()]
        taus = left_trees(ring, [V] * m)
        for sig in sigs:
            s = sig[-1] if sig else 0
            for tau in taus:
                a = tau[-1]
                for c in range(ring.rank):
                    if not (N[s, a, c] and N[a, s, c]):
                        continue
                    if sig:
                        t_in = concatenate_trees(fs, sig, tau, [V] * m, c)
                        t_out = concatenate_trees(fs, tau, sig, [V] * l, c)
                    else:
                        t_in = {tau: 1.0} if a == c else {}
                        t_out = t_in
                    overlap = sum(np.conj(t_out.get(key, 0)) * val for key, val in t_in.items())
                    psi[tube.index[(a, s, a, c)]] += overlap
    if twists:
        inv = np.linalg.solve(tube.left_matrix(tube.spiral()), tube.unit)
        for _ in range(twists):
            psi = tube.multiply(inv, psi)
    return psi


def indicator_reference_oracle(cd: CenterData, curve: TorusCurve, V: int, X: int) -> complex:
    """Indicator of simple ``V`` against center simple ``X`` via the tube algebra."""
    return cd.character(curve_state(cd, curve, V), X)


# --------------------------------------------------------------------------
# Omega sums

def omega_sum(cd: CenterData, curve: TorusCurve, X: int) -> complex:
    """``sum_Y nu_{m,r}^X(Y) d_Y`` over the simple objects of the input category."""
    d = cd.dims_c.d
    ez = np.eye(cd.rank)[X]
    return complex(sum(d[Y] * genus1_indicator(cd, curve, np.eye(len(d))[Y], ez) for Y in range(len(d))))


def omega_sum_from_modular(md, curve: TorusCurve, X: int) -> complex:
    """The same sum computed from center data alone.

    ``sum_Y d_Y B[Y]`` is the vector of center dimensions, so the sum only
    depends on ``Z(C)``; this is what makes it a Morita invariant.
    """
    if curve.d != 1:
        raise ValueError("defined through the torus representation for primitive curves only")
    g = completion(curve.m, curve.r)
    return complex(md.dims @ torus_rep_apply(md, g, np.eye(md.rank)[X]))


def word_for(curve: TorusCurve) -> str:
    return sl2z_factor(completion(curve.m, curve.r)).word
