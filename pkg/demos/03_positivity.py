"""
Positivity criteria for fusion rings
====================================

M_n = sum_j d_j^(2 - n) N_j^(x n) must be positive semidefinite for a
unitarily categorifiable ring.  We scan the bundled rings, and then a ring
with the same fusion matrices but the "wrong" dimension vector.
"""
import numpy as np

from qtopo.category import DimensionData
from qtopo.criteria import check_positivity, criterion_matrix, min_eigenvalue
from qtopo.fixtures import RINGS, load_ring

for name in RINGS:
    reports = check_positivity(load_ring(name))
    worst = min(r.min_eigenvalue for r in reports)
    print(f"{name:14s} n <= {reports[-1].n:2d}  min eigenvalue {worst: .2e}  pass: {all(r.passed for r in reports)}")

# the Galois conjugate dimension of tau, 1 - phi, is a character of the ring but not a positive one
ring = load_ring("fib")
galois = DimensionData(np.array([1.0, (1 - 5 ** 0.5) / 2]), 1 + ((1 - 5 ** 0.5) / 2) ** 2)
for n in (1, 2, 3):
    print(f"Galois-conjugate dims, n = {n}: min eigenvalue {min_eigenvalue(criterion_matrix(ring, galois, n)): .4f}")
