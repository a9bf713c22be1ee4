"""Homomorphism enumeration, endomorphism rings, and injectivity/projectivity tests.

Homomorphisms M -> N are enumerated one generator at a time along the chain
0 = M_0 < M_1 < ... < M_g = M, M_i = M_{i-1} + g_i R.  A candidate image y of
g_i extends a hom f on M_{i-1} iff y.r = f(g_i.r) for every r in a generating
set of the conductor {r : g_i.r in M_{i-1}}; all candidates y are tested at
once as numpy vectors.
"""
from functools import cached_property

import numpy as np

from ._bits import indices_of, mask_of, masks_of_rows
from ._lattice import subgroup_sum
from .errors import SizeError, UnsupportedError
from .module import (
    Submodule,
    all_submodules,
    direct_sum,
    minimal_generating_set,
    quotient_module,
    regular_module,
    restrict,
    same_base,
    submodule_generated,
)
from .ring import IntegerRing, RingTable, right_ideals

HOM_SEARCH_BOUND = 2 ** 16
_CHUNK = 1 << 22


class HomMap:
    """An R-linear map stored as a full element table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source, target, table):
        self.source = source
        self.target = target
        self.table = np.asarray(table)

    def __call__(self, x):
        return int(self.table[x])

    def __eq__(self, other):
        return (
            isinstance(other, HomMap)
            and other.source is self.source
            and other.target is self.target
            and np.array_equal(other.table, self.table)
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.table.tobytes()))

    def __repr__(self):
        return f"HomMap({self.table.tolist()})"


def _plan(m):
    """Per-generator data for hom enumeration out of ``m`` (cached)."""
    plan = m._cache.get("hom_plan")
    if plan is not None:
        return plan
    gens = minimal_generating_set(m)
    steps = []
    span = 1
    ints = m.over_integers
    for g in gens:
        prev = indices_of(span)
        gcol = np.asarray(m.scalar_table[g], dtype=np.int64)
        if ints:
            d = 1
            while not (span >> m.scale(g, d)) & 1:
                d += 1
            conductor = [d]
        else:
            r = m.base
            inside = np.array([(span >> int(x)) & 1 for x in gcol], dtype=bool)
            conductor = _ideal_generators(r, np.flatnonzero(inside))
        cond_images = [m.scale(g, c) if ints else int(m.act[g, c]) for c in conductor]
        positions = m.add[prev[:, None], gcol[None, :]]
        steps.append((g, prev, gcol, conductor, cond_images, positions))
        span = subgroup_sum(m.add, span, m.cyclic_masks[g])
    plan = (gens, steps)
    m._cache["hom_plan"] = plan
    return plan


def _ideal_generators(r, members):
    target = mask_of(members, r.order)
    span, gens = 1, []
    for x in sorted(members.tolist(), key=lambda x: (-r.principal_masks[x].bit_count(), x)):
        if span == target:
            break
        if not (span >> x) & 1:
            gens.append(x)
            span = subgroup_sum(r.add, span, r.principal_masks[x])
    return gens


def _scaled(n, ys, scalar, source_ints):
    """y.scalar in N for an array of y; integer scalars when the base is Z."""
    if source_ints:
        return n.multiples[ys, scalar % n.exponent]
    return n.act[ys, scalar]


def hom_tables(m, n, candidates=None, bound=HOM_SEARCH_BOUND):
    """All R-linear maps m -> n as rows of an int array, zero map first.

    ``candidates`` optionally restricts the image of each generator of
    ``minimal_generating_set(m)``.
    """
    if not same_base(m.base, n.base):
        raise ValueError("modules over different rings")
    key = (id(n), bound)
    cache = m._cache.setdefault("homs", {})
    if candidates is None and key in cache:
        return cache[key][1]
    gens, steps = _plan(m)
    ints = m.over_integers
    if candidates is None:
        cands = [np.arange(n.order)] * len(gens)
    else:
        cands = [np.asarray(c, dtype=np.int64) for c in candidates]
    space = 1
    for c in cands:
        space *= len(c)
    if space > bound:
        raise SizeError(f"hom search space {space} exceeds bound {bound}")
    tables = np.full((1, m.order), -1, dtype=np.int64)
    tables[0, 0] = 0
    for (g, prev, gcol, conductor, cond_images, positions), ys in zip(steps, cands):
        if len(ys) == 0:
            tables = tables[:0]
            break
        ok = np.ones((len(tables), len(ys)), dtype=bool)
        for c, gc in zip(conductor, cond_images):
            ok &= _scaled(n, ys, c, ints)[None, :] == tables[:, gc][:, None]
        pi, yi = np.nonzero(ok)
        y = ys[yi]
        if ints:
            ycols = n.multiples[y[:, None], np.arange(len(gcol))[None, :] % n.exponent]
        else:
            ycols = n.act[y]
        new = tables[pi]
        per = len(prev) * len(gcol)
        step = max(1, _CHUNK // max(per, 1))
        flat = positions.ravel()
        for s in range(0, len(new), step):
            f_prev = new[s:s + step][:, prev]
            vals = n.add[f_prev[:, :, None], ycols[s:s + step][:, None, :]]
            new[s:s + step][:, flat] = vals.reshape(len(f_prev), -1)
        tables = new
    tables = np.ascontiguousarray(tables, dtype=np.int32)
    tables.flags.writeable = False
    if candidates is None:
        cache[key] = (n, tables)
    return tables


def hom_set(m, n, bound=HOM_SEARCH_BOUND):
    return [HomMap(m, n, t) for t in hom_tables(m, n, bound=bound)]


def hom_tables_bruteforce(m, n):
    """Every set map that is additive and R-linear; tiny modules only."""
    from itertools import product

    out = []
    for images in product(range(n.order), repeat=m.order - 1):
        f = np.array((0,) + images)
        if not np.array_equal(f[m.add], n.add[f[:, None], f[None, :]]):
            continue
        if m.over_integers or np.array_equal(f[m.act], n.act[f]):
            out.append(f)
    return np.array(out, dtype=np.int32).reshape(len(out), m.order) if out else np.zeros((0, m.order), dtype=np.int32)


class EndRing:
    """End_R(M): the maps, plus a ring table under pointwise sum and composition."""

    def __init__(self, module, tables):
        self.module = module
        self.tables = tables
        self.order = len(tables)
        gens, _ = _plan(module)
        self._gens = np.array(gens, dtype=np.int64)
        self._codes = self._encode(tables)
        self._sorter = np.argsort(self._codes, kind="stable")
        self._sorted_codes = self._codes[self._sorter]

    def _encode(self, tables):
        if len(self._gens) == 0:
            return np.zeros(len(tables), dtype=np.int64)
        w = self.module.order ** np.arange(len(self._gens), dtype=np.int64)
        return (np.asarray(tables)[:, self._gens].astype(np.int64) * w).sum(axis=1)

    def index_of(self, tables):
        """Index of each row of ``tables`` (maps given as full tables)."""
        codes = self._encode(np.atleast_2d(tables))
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._sorter[pos]

    @cached_property
    def identity(self):
        return int(self.index_of(np.arange(self.module.order))[0])

    def maps(self):
        return [HomMap(self.module, self.module, t) for t in self.tables]

    def eval(self, f, x):
        return int(self.tables[f, x])

    def compose(self, f, g):
        """Index of f o g."""
        return int(self.index_of(self.tables[f][self.tables[g]])[0])

    @cached_property
    def idempotent_indices(self):
        t = np.asarray(self.tables)
        sq = np.take_along_axis(t, t, axis=1)
        return np.flatnonzero((sq == t).all(axis=1))

    @cached_property
    def ring(self):
        t = np.asarray(self.tables, dtype=np.int64)
        n = self.order
        gens = self._gens
        mod = self.module
        add = np.zeros((n, n), dtype=np.int64)
        mul = np.zeros((n, n), dtype=np.int64)
        w = mod.order ** np.arange(len(gens), dtype=np.int64)
        rows = max(1, _CHUNK // max(n * max(len(gens), 1), 1))
        for s in range(0, n, rows):
            blk = t[s:s + rows]
            if len(gens):
                sums = mod.add[blk[:, None, gens], t[None, :, gens]]
                comps = blk[:, t[:, gens]]  # f(g(gen)) for f in block, g in all
                sc = (sums * w).sum(-1)
                cc = (comps * w).sum(-1)
            else:
                sc = cc = np.zeros((len(blk), n), dtype=np.int64)
            add[s:s + rows] = self._sorter[np.searchsorted(self._sorted_codes, sc)]
            mul[s:s + rows] = self._sorter[np.searchsorted(self._sorted_codes, cc)]
        return RingTable(add, mul, self.identity, name=f"End({mod.name})", validate=n <= 64)

    def is_abelian(self):
        t = np.asarray(self.tables)
        for e in self.idempotent_indices:
            te = t[e]
            left = te[t]  # e o f
            right = np.take_along_axis(t, np.broadcast_to(te, t.shape), axis=1)  # f o e
            if not np.array_equal(left, right):
                return False
        return True

    def is_von_neumann_regular(self):
        from .ring import is_von_neumann_regular

        return is_von_neumann_regular(self.ring)


def end_ring(m, bound=HOM_SEARCH_BOUND):
    cached = m._cache.get("end")
    if cached is None or cached[0] != bound:
        cached = (bound, EndRing(m, hom_tables(m, m, bound=bound)))
        m._cache["end"] = cached
    return cached[1]


def _flags(mask, size):
    flags = np.zeros(size, dtype=bool)
    flags[indices_of(mask)] = True
    return flags


def kernel_mask(table):
    return mask_of(np.flatnonzero(np.asarray(table) == 0))


def image_mask(table, size):
    return mask_of(np.asarray(table), size)


def preimage_mask(table, target_mask, target_order):
    return mask_of(np.flatnonzero(_flags(target_mask, target_order)[np.asarray(table)]))


def preimage_masks(tables, target_mask, target_order):
    """Preimage mask of ``target_mask`` under every row of ``tables``."""
    if len(tables) == 0:
        return []
    return masks_of_rows(_flags(target_mask, target_order)[np.asarray(tables)])


def kernel(f):
    return Submodule(f.source, kernel_mask(f.table))


def image(f):
    return Submodule(f.target, image_mask(f.table, f.target.order))


def preimage(f, k):
    if k.parent is not f.target:
        raise ValueError("k must be a submodule of the target")
    if submodule_generated(k.parent, k.elements).mask != k.mask:
        raise ValueError("k is not a submodule")
    return Submodule(f.source, preimage_mask(f.table, k.mask, f.target.order))


def _distinct_rows(a):
    a = np.ascontiguousarray(a)
    if a.shape[0] == 0:
        return 0
    return len(np.unique(a, axis=0))


def is_relatively_injective(a, b, bound=HOM_SEARCH_BOUND):
    """``a`` is ``b``-injective: every hom from a submodule of b into a extends to b."""
    if b.order == 1 or a.order == 1:
        return True
    ext = hom_tables(b, a, bound=bound)
    for sub in all_submodules(b):
        if sub.order in (1, b.order):
            continue
        k = restrict(b, sub)
        want = len(hom_tables(k, a, bound=bound))
        if _distinct_rows(np.asarray(ext)[:, k.embedding]) != want:
            return False
    return True


def is_quasi_injective(m, bound=HOM_SEARCH_BOUND):
    return is_relatively_injective(m, m, bound)


def is_quasi_projective(m, bound=HOM_SEARCH_BOUND):
    """Every hom M -> M/N lifts through the projection, for every submodule N."""
    if m.order == 1:
        return True
    ends = np.asarray(end_ring(m, bound).tables)
    for sub in all_submodules(m):
        if sub.order in (1, m.order):
            continue
        q = quotient_module(m, sub)
        lifted = _distinct_rows(q.projection[ends])
        if lifted != len(hom_tables(m, q, bound=bound)):
            return False
    return True


def _require_finite(m):
    if isinstance(m.base, IntegerRing):
        raise UnsupportedError("needs a finite base ring")


def is_injective_module(m, bound=HOM_SEARCH_BOUND):
    """Baer's criterion: homs from right ideals of R into M extend to R."""
    _require_finite(m)
    r = m.base
    reg = regular_module(r)
    for ideal in right_ideals(r):
        if ideal.order in (1, r.order):
            continue
        i_mod = restrict(reg, Submodule(reg, ideal.mask))
        extended = _distinct_rows(m.act[:, i_mod.embedding])
        if extended != len(hom_tables(i_mod, m, bound=bound)):
            return False
    return True


def free_module(r, rank):
    reg = regular_module(r)
    if rank == 1:
        return reg
    return direct_sum(*([reg] * rank))


def is_projective_module(m, bound=HOM_SEARCH_BOUND):
    """Split the canonical surjection R^g -> M over a minimal generating set."""
    _require_finite(m)
    gens = minimal_generating_set(m)
    if not gens:
        return True
    r = m.base
    free = free_module(r, len(gens))
    if len(gens) == 1:
        cover = m.act[gens[0]].astype(np.int64)
    else:
        cover = np.zeros(free.order, dtype=np.int64)
        for g, proj in zip(gens, free.projections):
            cover = m.add[cover, m.act[g][proj]]
    fibres = [np.flatnonzero(cover == x) for x in gens]
    return len(hom_tables(m, free, candidates=fibres, bound=bound)) > 0


def find_isomorphism(a, b, bound=HOM_SEARCH_BOUND):
    """A bijective hom a -> b, or None."""
    if a.order != b.order or not same_base(a.base, b.base):
        return None
    gens, _ = _plan(a)
    bsize = np.array([c.bit_count() for c in b.cyclic_masks])
    asize = [a.cyclic_masks[g].bit_count() for g in gens]
    cands = [np.flatnonzero((bsize == s) & (b.additive_orders == a.additive_orders[g])) for g, s in zip(gens, asize)]
    tables = hom_tables(a, b, candidates=cands, bound=bound)
    for t in tables:
        if len(np.unique(t)) == a.order:
            return HomMap(a, b, t)
    return None


def is_isomorphic(a, b, bound=HOM_SEARCH_BOUND):
    return find_isomorphism(a, b, bound) is not None
