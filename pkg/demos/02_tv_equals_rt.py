"""
Turaev-Viro of C against Reshetikhin-Turaev of Z(C)
===================================================

The state sum over a triangulation of L(p, 1) and the surgery invariant of
the framed unknot, computed with the center found from the tube algebra,
agree for every p.
"""
from qtopo.fixtures import load_fsymbols
from qtopo.surgery import PlumbingTree, rt_invariant
from qtopo.triangulation import first_homology, lens_space
from qtopo.tube import build_tube_algebra, decompose_center
from qtopo.turaev_viro import tv_invariant

for name in ("vecz2", "vecz3_twisted", "fib", "ising"):
    fs = load_fsymbols(name)
    md = decompose_center(build_tube_algebra(fs)).modular
    print(f"-- {name}")
    for p in range(1, 6):
        tri = lens_space(p, 1)
        tv = tv_invariant(fs, tri)
        rt = rt_invariant(md, PlumbingTree.lens(p))
        print(f"L({p},1)  H1 torsion {first_homology(tri)[1]}  TV = {tv:.6f}  RT = {rt:.6f}  |diff| = {abs(tv - rt):.1e}")
