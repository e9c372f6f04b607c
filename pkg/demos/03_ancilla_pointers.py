"""
Correlated pointers and nondegenerate blocks
============================================

Each particle gets a pointer qubit that copies its R value, and the Hadamard
acts on the correlated block span{|++>, |-->}.  The reduced block operators
then have a nondegenerate spectrum on every slice, so the Schmidt-type
preferred observable is well defined, and the joint distribution still fails.
"""

from nogo import run_ancilla

rep = run_ancilla()

for s, blocks in rep.spectra["blocks"].items():
    for block, vals in blocks.items():
        nonzero = [round(v, 6) for v in vals if v > 1e-10]
        print(f"{s:>6} {block}: {nonzero}")

# eigenvalues (1 +- sqrt(5)/3) / 2 on every slice
print("min gap between nonzero eigenvalues:", rep.spectra["min_gap"])
print("leak outside the correlated subspace:", rep.spectra["subspace_leak"])
print("joint distribution:", rep.verdict.status)
