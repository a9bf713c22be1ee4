"""
Splitting off the Goldie torsion part
=====================================

A module is Goldie Rickart exactly when Z2(M) is a direct summand whose
complement is a nonsingular Rickart module.  Walk through a few modules over
Z2 x Z4 and look at both sides.
"""

from grickart import classifier as C
from grickart import parse_spec, restrict
from grickart.module import Submodule, all_submodules
from grickart.torsion import goldie_torsion

specs = [
    "module regular (ring product (ring zmod 2) (ring zmod 4))",
    "module sum (module regular (ring product (ring zmod 2) (ring zmod 4))) "
    "(module quotient (module regular (ring product (ring zmod 2) (ring zmod 4))) gens 2)",
]

###############################################################################
# For each module, find a complement of Z2(M) and test it

for text in specs:
    m = parse_spec(text)
    z2 = goldie_torsion(m).z2
    comp = all_submodules(m).complement_mask(z2.mask)
    line = f"|M|={m.order:3d}  |Z2|={z2.order:3d}  "
    if comp is None:
        print(line + "Z2 is not a summand")
        continue
    n = restrict(m, Submodule(m, comp))
    print(line + f"|N|={n.order}  N rickart={C.is_rickart(n)}  N nonsingular={C.is_nonsingular(n)}"
          f"  M goldie rickart={C.is_goldie_rickart(m)}")
