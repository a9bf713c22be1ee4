"""Singular and Goldie torsion submodules, the t_M operator, and t-closed submodules."""
from dataclasses import dataclass

import numpy as np

from ._bits import indices_of, mask_of, masks_of_rows
from ._lattice import subgroup_sum
from .hom import HomMap, preimage_mask, preimage_masks
from .module import Submodule, all_submodules, quotient_module, restrict
from .ring import RightIdeal, ZZ, is_essential_mask


@dataclass(frozen=True)
class TorsionProfile:
    module: object
    z: Submodule
    z2: Submodule


def annihilator(m, x):
    """{r in R : x.r = 0}; over the integers, the ideal nZ with n the order of x."""
    if m.over_integers:
        return RightIdeal(ZZ, generator=int(m.additive_orders[x]))
    return RightIdeal(m.base, mask_of(np.flatnonzero(m.act[x] == 0), m.base.order))


def _singular_mask(m):
    if m.over_integers:
        return m.full_mask
    r = m.base
    anns = masks_of_rows(m.act == 0)
    return mask_of([x for x, a in enumerate(anns) if is_essential_mask(r, a)], m.order)


def singular_submodule(m):
    return Submodule(m, _singular_mask(m))


def goldie_torsion(m):
    """Z(M) and Z2(M), the preimage of Z(M/Z(M)) under the projection."""
    prof = m._cache.get("torsion")
    if prof is not None:
        return prof
    z = _singular_mask(m)
    q = quotient_module(m, Submodule(m, z))
    zq = _singular_mask(q)
    z2 = preimage_mask(q.projection, zq, q.order)
    if z & z2 != z:
        raise RuntimeError("Z(M) not contained in Z2(M)")
    top = quotient_module(m, Submodule(m, z2))
    if _singular_mask(top) != 1:
        raise RuntimeError("M/Z2(M) is not nonsingular")
    prof = TorsionProfile(m, Submodule(m, z), Submodule(m, z2))
    m._cache["torsion"] = prof
    return prof


def z2_mask(m):
    return goldie_torsion(m).z2.mask


def preimage_z2(f):
    """f^{-1}(Z2(N)) for f: M -> N; always contains Z2(M)."""
    out = preimage_mask(f.table, z2_mask(f.target), f.target.order)
    if z2_mask(f.source) & out != z2_mask(f.source):
        raise RuntimeError("Z2(M) not contained in f^{-1}(Z2(N))")
    return Submodule(f.source, out)


def preimage_z2_masks(tables, source, target):
    """Preimage of Z2(target) under every row of ``tables``."""
    return preimage_masks(tables, z2_mask(target), target.order)


def _table(f):
    return f.table if isinstance(f, HomMap) else np.asarray(f)


def t_operator(m, fs):
    """Elements sent into Z2(M) by every endomorphism in ``fs``."""
    out = m.full_mask
    z2 = z2_mask(m)
    for f in fs:
        out &= preimage_mask(_table(f), z2, m.order)
    return Submodule(m, out)


def _cyclic_flags(m):
    flags = m._cache.get("cyclic_flags")
    if flags is None:
        flags = np.zeros((m.order, m.order), dtype=bool)
        flags[np.arange(m.order)[:, None], m.scalar_table] = True
        m._cache["cyclic_flags"] = flags
    return flags


def _flags(mask, size):
    out = np.zeros(size, dtype=bool)
    out[indices_of(mask)] = True
    return out


def _t_essential_in(m, n_mask, k_mask, z2):
    """N t-essential in K, with Z2(K) = Z2(M) n K.

    Enough to test cyclic L = yR: N n yR must escape Z2 whenever y does.
    """
    cyc = _cyclic_flags(m)
    ys = indices_of(k_mask & ~z2)
    if len(ys) == 0:
        return True
    cols = indices_of(n_mask & ~z2)
    if len(cols) == 0:
        return False
    return bool(cyc[np.ix_(ys, cols)].any(axis=1).all())


def _essential_in(m, n_mask, k_mask):
    cyc = _cyclic_flags(m)
    ys = indices_of(k_mask & ~1)
    if len(ys) == 0:
        return True
    cols = indices_of(n_mask & ~1)
    if len(cols) == 0:
        return False
    return bool(cyc[np.ix_(ys, cols)].any(axis=1).all())


def is_t_essential(m, n):
    """For every submodule L: N n L <= Z2(M) implies L <= Z2(M)."""
    return _t_essential_in(m, n.mask, m.full_mask, z2_mask(m))


def is_t_essential_naive(m, n):
    """Same predicate scanning the whole lattice (oracle)."""
    z2 = z2_mask(m)
    for lm in all_submodules(m).masks:
        if (n.mask & lm) & ~z2 == 0 and lm & ~z2:
            return False
    return True


def _unextendable(m, test):
    """Submodules N with no proper extension K for which test(N, K) holds.

    Both essential and t-essential extensions are inherited by intermediate
    submodules, so only the extensions N + xR need testing.
    """
    lat = all_submodules(m)
    cyc = m.cyclic_masks
    out = []
    for n in lat.masks:
        closed = True
        seen = set()
        for x in range(m.order):
            c = cyc[x]
            if c & n == c or c in seen:
                continue
            seen.add(c)
            if test(n, subgroup_sum(m.add, n, c)):
                closed = False
                break
        if closed:
            out.append(n)
    return out


def t_closed_submodules(m):
    """Submodules with no proper t-essential extension in M."""
    cached = m._cache.get("t_closed")
    if cached is None:
        z2 = z2_mask(m)
        cached = _unextendable(m, lambda n, k: _t_essential_in(m, n, k, z2))
        m._cache["t_closed"] = cached
    return [Submodule(m, c) for c in cached]


def closed_submodules(m):
    """Submodules with no proper essential extension in M."""
    cached = m._cache.get("closed")
    if cached is None:
        cached = _unextendable(m, lambda n, k: _essential_in(m, n, k))
        m._cache["closed"] = cached
    return [Submodule(m, c) for c in cached]


def intrinsic_z2(m, k):
    """Z2 of a submodule computed from its own tables, as a mask of M."""
    sub = restrict(m, k)
    return mask_of(sub.embedding[indices_of(z2_mask(sub))], m.order)
