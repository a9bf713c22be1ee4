"""
Looking for small counterexamples
=================================

Searches scan the catalogs in a fixed order and stop at the first hit.  An
empty result only says nothing was found among the instances generated.
"""

from grickart import harness as H

z = [H.family_by_name("Z")]

###############################################################################
# Goldie Rickart but not Rickart: Z4 turns up first among the abelian groups

print(H.search_counterexample("goldie_rickart&!rickart", z))

###############################################################################
# The other direction, over every default catalog

print(H.search_counterexample("rickart&!goldie_rickart"))

###############################################################################
# A finite ring that is Goldie Rickart on one side only

print(H.search_counterexample("right_goldie_rickart&!left_goldie_rickart", []))
