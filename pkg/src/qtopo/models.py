"""Closed-form constructors for the standard small fusion categories.

These produce the same objects as the bundled JSON fixtures and are used to
regenerate them.  All F-symbols are in the unitary gauge with unit-triangle
entries equal to 1.
"""
from __future__ import annotations

import cmath
import itertools

import numpy as np

from .category import FSymbolSet, FusionRing, ModularData, admissible_sextuples

__all__ = [
    "trivial", "vec_zn", "fibonacci", "ising", "rep_s3_ring",
    "toric_code_data", "semion_data", "fibonacci_data", "ising_data", "trivial_data",
]

PHI = (1 + 5 ** 0.5) / 2


def _ring(labels, dual, rules) -> FusionRing:
    r = len(labels)
    N = np.zeros((r, r, r), dtype=np.int64)
    for i, j, k in rules:
        N[i, j, k] = 1
    ring = FusionRing(tuple(labels), tuple(dual), N)
    ring.validate()
    return ring


def _ones(ring: FusionRing) -> np.ndarray:
    F = np.zeros((ring.rank,) * 6, dtype=complex)
    for t in admissible_sextuples(ring):
        F[t] = 1.0
    return F


def trivial() -> FSymbolSet:
    ring = _ring(["1"], [0], [(0, 0, 0)])
    return FSymbolSet(ring, _ones(ring))


def vec_zn(n: int, p: int = 0) -> FSymbolSet:
    """``Vec_{Z_n}`` with the 3-cocycle ``exp(2 pi i p a (b + c - [b + c]) / n^2)``."""
    labels = ["1"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    rules = [(a, b, (a + b) % n) for a in range(n) for b in range(n)]
    ring = _ring(labels, [(-a) % n for a in range(n)], rules)
    F = np.zeros((n,) * 6, dtype=complex)
    for a, b, c in itertools.product(range(n), repeat=3):
        carry = b + c - (b + c) % n
        F[a, b, c, (a + b + c) % n, (a + b) % n, (b + c) % n] = cmath.exp(2j * cmath.pi * p * a * carry / n ** 2)
    return FSymbolSet(ring, F)


def fibonacci() -> FSymbolSet:
    ring = _ring(["1", "tau"], [0, 1], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)])
    F = _ones(ring)
    M = np.array([[1 / PHI, PHI ** -0.5], [PHI ** -0.5, -1 / PHI]])
    F[1, 1, 1, 1] = M
    return FSymbolSet(ring, F)


def ising() -> FSymbolSet:
    """Labels ``1, psi, sigma``."""
    one, psi, sig = 0, 1, 2
    rules = [(0, x, x) for x in range(3)] + [(x, 0, x) for x in range(1, 3)]
    rules += [(psi, psi, one), (psi, sig, sig), (sig, psi, sig), (sig, sig, one), (sig, sig, psi)]
    ring = _ring(["1", "psi", "sigma"], [0, 1, 2], rules)
    F = _ones(ring)
    h = 2 ** -0.5
    F[sig, sig, sig, sig][np.ix_([one, psi], [one, psi])] = [[h, h], [h, -h]]
    F[psi, sig, psi, sig, sig, sig] = -1
    F[sig, psi, sig, psi, sig, sig] = -1
    return FSymbolSet(ring, F)


def rep_s3_ring() -> FusionRing:
    """Representation ring of S3: ``1, sgn, rho`` with ``rho rho = 1 + sgn + rho``."""
    one, sgn, rho = 0, 1, 2
    rules = [(0, x, x) for x in range(3)] + [(x, 0, x) for x in range(1, 3)]
    rules += [(sgn, sgn, one), (sgn, rho, rho), (rho, sgn, rho), (rho, rho, one), (rho, rho, sgn), (rho, rho, rho)]
    return _ring(["1", "sgn", "rho"], [0, 1, 2], rules)


# --------------------------------------------------------------------------
# modular data

def trivial_data() -> ModularData:
    return ModularData.from_matrices([[1.0]], [1.0], ["1"])


def toric_code_data() -> ModularData:
    S = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
    return ModularData.from_matrices(S, [1, 1, 1, -1], ["1", "e", "m", "f"])


def semion_data() -> ModularData:
    S = 2 ** -0.5 * np.array([[1, 1], [1, -1]])
    return ModularData.from_matrices(S, [1, 1j], ["1", "s"])


def fibonacci_data() -> ModularData:
    S = np.array([[1, PHI], [PHI, -1]]) / (2 + PHI) ** 0.5
    return ModularData.from_matrices(S, [1, cmath.exp(4j * cmath.pi / 5)], ["1", "tau"])


def ising_data() -> ModularData:
    """Labels ``1, psi, sigma`` matching :func:`ising`."""
    r2 = 2 ** 0.5
    S = 0.5 * np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]])
    return ModularData.from_matrices(S, [1, -1, cmath.exp(1j * cmath.pi / 8)], ["1", "psi", "sigma"])
