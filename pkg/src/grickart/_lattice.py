"""Closure of a family of additive subgroups under sums, shared by ideals and submodules."""
import numpy as np

from ._bits import indices_of, mask_of
from .errors import SizeError


def subgroup_sum(add, a, b):
    if a & b == b:
        return a
    if a & b == a:
        return b
    ia, ib = indices_of(a), indices_of(b)
    return mask_of(add[np.ix_(ia, ib)], add.shape[0])


def sum_closure(add, generators, limit):
    """Every sum of members of ``generators`` (masks), including the zero subgroup.

    Breadth-first: each found subgroup is extended by every generator it does
    not already contain.  Result is sorted by (size, mask).
    """
    gens = sorted(set(generators) - {1}, key=lambda m: (m.bit_count(), m))
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                if g & s == g:
                    continue
                t = subgroup_sum(add, s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    if len(seen) > limit:
                        raise SizeError(f"lattice exceeds {limit} members")
        frontier = nxt
    return sorted(seen, key=lambda m: (m.bit_count(), m))
