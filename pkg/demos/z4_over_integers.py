"""
Z4 as an abelian group: Goldie Rickart but not Rickart
======================================================

Every finite abelian group is singular as a Z-module, so the Goldie torsion
submodule is the whole group and every preimage of it is trivially a summand.
Kernels are a different story.
"""

import numpy as np

from grickart import classify, end_ring, goldie_torsion, parse_spec

m = parse_spec("module zabelian 4")

###############################################################################
# Z(M) and Z2(M) both fill the module

prof = goldie_torsion(m)
print("Z(M) =", prof.z.elements.tolist(), " Z2(M) =", prof.z2.elements.tolist())

###############################################################################
# End(M) has four maps, one per image of the generator

tables = np.asarray(end_ring(m).tables)
print(tables)

###############################################################################
# Doubling has kernel {0, 2}, which has no complement, so M is not Rickart

report = classify(m, instance=m.spec)
print(report.verdicts["goldie_rickart"], report.verdicts["rickart"])
print(report.witnesses["rickart"])
