"""
Genus-1 indicators
==================

Frobenius-Schur indicators nu_2 against the vacuum, a few generalized
indicators, and a check that the torus-representation formula matches the
tube-algebra computation.
"""
import numpy as np

from qtopo.fixtures import load_fsymbols
from qtopo.indicators import TorusCurve, fs_indicator, genus1_indicator, indicator_reference_oracle
from qtopo.tube import build_tube_algebra, decompose_center

for name in ("vecz2", "vecz3", "fib", "ising"):
    cd = decompose_center(build_tube_algebra(load_fsymbols(name)))
    labels = cd.fs.ring.labels
    nu2 = {labels[V]: round(fs_indicator(cd, 2, 1, V).real, 6) for V in range(len(labels))}
    print(f"{name:6s} nu_2 = {nu2}")

cd = decompose_center(build_tube_algebra(load_fsymbols("ising")))
sigma = cd.fs.ring.index("sigma")
vac = np.eye(cd.rank)[0]
for m, r in [(1, 0), (2, 1), (3, 1), (4, 1), (8, 1), (2, 2)]:
    c = TorusCurve(m, r)
    val = genus1_indicator(cd, c, np.eye(3)[sigma], vac)
    ref = indicator_reference_oracle(cd, c, sigma, 0)
    print(f"Ising sigma, curve ({m},{r}): {val:.6f}   tube oracle {ref:.6f}")
