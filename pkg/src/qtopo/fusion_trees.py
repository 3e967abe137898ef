"""Left-associated fusion trees and recoupling into them.

A left-associated tree over leaves ``x_1, ..., x_n`` is recorded by its
sequence of intermediate labels ``(x_1, y_2, ..., y_n)`` where
``y_k`` lies in ``y_{k-1} x_k``.  With multiplicity-free fusion these trees
form an orthonormal basis of ``Hom(y_n, x_1 ... x_n)``.
"""
from __future__ import annotations

import numpy as np

from .category import FSymbolSet

__all__ = ["left_trees", "concatenate_trees"]


def left_trees(ring, leaves: list[int]) -> list[tuple[int, ...]]:
    """All left-associated trees over ``leaves`` (any root)."""
    if not leaves:
        return []
    out = [(leaves[0],)]
    for x in leaves[1:]:
        out = [t + (y,) for t in out for y in range(ring.rank) if ring.N[t[-1], x, y]]
    return out


def concatenate_trees(fs: FSymbolSet, left: tuple[int, ...], right: tuple[int, ...],
                      right_leaves: list[int], root: int) -> dict[tuple[int, ...], complex]:
    """Expand the tree ``(left) (right) -> root`` in the left-associated basis.

    ``left`` has root ``left[-1]`` and ``right`` is a left-associated tree
    over ``right_leaves``.  The last leaf of ``right`` is peeled off with
    ``conj(F^{s a' q}_{root; e a})`` and the rest is expanded recursively.
    Returns ``{tree over left leaves + right_leaves: coefficient}``.
    """
    N, F = fs.ring.N, fs.array
    s = left[-1]
    if not right:
        return {left: 1.0} if s == root else {}
    if len(right) == 1:
        return {left + (root,): 1.0} if N[s, right_leaves[0], root] else {}
    a, a1, q = right[-1], right[-2], right_leaves[-1]
    out: dict[tuple[int, ...], complex] = {}
    for e in range(fs.ring.rank):
        coef = np.conj(F[s, a1, q, root, e, a])
        if coef == 0:
            continue
        for key, val in concatenate_trees(fs, left, right[:-1], right_leaves[:-1], e).items():
            out[key + (root,)] = out.get(key + (root,), 0) + coef * val
    return out
