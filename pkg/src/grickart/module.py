"""Finite right modules over a finite ring or over the integer backend.

A module stores its addition table and, over a finite ring, the full action
table ``act[m, r] = m.r``.  Over the integers only the group is stored;
``n.m`` is derived from addition.  Submodules are bitmasks over element
indices, with index 0 the zero element.
"""
from functools import cached_property, reduce

import numpy as np

from ._bits import indices_of, mask_of, masks_of_rows
from ._lattice import subgroup_sum, sum_closure
from .errors import SizeError, UnsupportedError, ValidationError
from .ring import IntegerRing, RingTable, ZZ

DEFAULT_MAX_MODULE_ORDER = 1024
LATTICE_MAX_ORDER = 256
LATTICE_LIMIT = 20000


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.flags.writeable = False
    return a


def same_base(a, b):
    if a is b:
        return True
    if isinstance(a, RingTable) and isinstance(b, RingTable):
        return a.order == b.order and a.one == b.one and np.array_equal(a.add, b.add) and np.array_equal(a.mul, b.mul)
    return False


class ModuleTable:
    """A finite right module; immutable once built."""

    def __init__(self, base, add, act=None, name=None, validate=True):
        self.base = base
        self.add = _frozen(add)
        self.order = self.add.shape[0]
        self.zero = 0
        if isinstance(base, IntegerRing):
            self.act = None
        else:
            self.act = _frozen(act)
        self.name = name or f"module[{self.order}]"
        self._cache = {}
        if validate:
            self.validate()

    def __repr__(self):
        return f"ModuleTable({self.name}, order={self.order})"

    @property
    def over_integers(self):
        return isinstance(self.base, IntegerRing)

    @cached_property
    def neg(self):
        return _frozen(np.argmax(self.add == 0, axis=1))

    @cached_property
    def exponent(self):
        return int(self.additive_orders.max())

    @cached_property
    def additive_orders(self):
        orders = np.ones(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        k = 1
        while (cur != 0).any():
            cur = self.add[cur, np.arange(self.order)]
            k += 1
            orders[(cur == 0) & (orders == 1) & (np.arange(self.order) != 0)] = k
        return orders

    @cached_property
    def multiples(self):
        """``multiples[x, k] = k.x`` for ``0 <= k < exponent``."""
        cols = [np.zeros(self.order, dtype=np.int64)]
        ar = np.arange(self.order)
        for _ in range(self.exponent - 1):
            cols.append(self.add[cols[-1], ar])
        return _frozen(np.stack(cols, axis=1))

    @property
    def scalar_table(self):
        """Images of each element under the scalars used for closure."""
        return self.multiples if self.over_integers else self.act

    def scale(self, x, k):
        """Integer multiple k.x computed by doubling."""
        result, power = 0, int(x)
        k = int(k)
        if k < 0:
            k, power = -k, int(self.neg[power])
        while k:
            if k & 1:
                result = int(self.add[result, power])
            power = int(self.add[power, power])
            k >>= 1
        return result

    @cached_property
    def cyclic_masks(self):
        """Mask of the cyclic submodule generated by each element."""
        flags = np.zeros((self.order, self.order), dtype=bool)
        flags[np.arange(self.order)[:, None], self.scalar_table] = True
        return masks_of_rows(flags)

    @property
    def full_mask(self):
        return (1 << self.order) - 1

    def validate(self):
        n = self.order
        add = self.add
        ar = np.arange(n)
        if add.shape != (n, n) or add.min() < 0 or add.max() >= n:
            raise ValidationError("addition table shape")
        if not (np.array_equal(add[0], ar) and np.array_equal(add[:, 0], ar)):
            raise ValidationError("additive identity")
        bad = add != add.T
        if bad.any():
            raise ValidationError("additive commutativity", np.argwhere(bad)[0])
        rows_ok = np.all(np.sort(add, axis=1) == ar, axis=1)
        if not rows_ok.all():
            raise ValidationError("additive inverses", (int(np.argmin(rows_ok)),))
        for a in range(n):
            bad = add[add[a]] != add[a][add]
            if bad.any():
                raise ValidationError("additive associativity", (a, *np.argwhere(bad)[0]))
        if self.over_integers:
            return self
        r = self.base
        act = self.act
        if act.shape != (n, r.order) or act.min() < 0 or act.max() >= n:
            raise ValidationError("action table shape")
        if not np.array_equal(act[:, r.one], ar):
            raise ValidationError("unital action", (int(np.argmax(act[:, r.one] != ar)),))
        bad = act[act] != act[:, r.mul]
        if bad.any():
            raise ValidationError("(m.r).s = m.(rs)", np.argwhere(bad)[0])
        bad = act[:, r.add] != add[act[:, :, None], act[:, None, :]]
        if bad.any():
            raise ValidationError("m.(r+s) = m.r + m.s", np.argwhere(bad)[0])
        for a in range(n):
            bad = act[add[a]] != add[act[a][None, :], act]
            if bad.any():
                b, s = np.argwhere(bad)[0]
                raise ValidationError("(m+m').r = m.r + m'.r", (a, b, s))
        return self


class Submodule:
    """A submodule of ``parent`` stored as a bitmask over element indices."""

    __slots__ = ("parent", "mask")

    def __init__(self, parent, mask):
        self.parent = parent
        self.mask = int(mask)

    @property
    def elements(self):
        return indices_of(self.mask)

    @property
    def order(self):
        return self.mask.bit_count()

    def __contains__(self, x):
        return bool((self.mask >> int(x)) & 1)

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __le__(self, other):
        return self.mask & other.mask == self.mask

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __and__(self, other):
        return Submodule(self.parent, self.mask & other.mask)

    def __add__(self, other):
        return Submodule(self.parent, subgroup_sum(self.parent.add, self.mask, other.mask))

    def is_zero(self):
        return self.mask == 1

    def __repr__(self):
        return f"Submodule({self.elements.tolist()})"


class SubmoduleLattice:
    """Every submodule of a module, sorted by (order, mask)."""

    def __init__(self, parent, masks):
        self.parent = parent
        self.masks = list(masks)
        self.all = [Submodule(parent, m) for m in self.masks]
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.by_order = {}
        for m in self.masks:
            self.by_order.setdefault(m.bit_count(), []).append(m)

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.all)

    def __contains__(self, sub):
        return sub.mask in self.index

    def complement_mask(self, mask):
        """First submodule N (lattice order) with K n N = 0 and K + N = M, or None."""
        cache = self.parent._cache.setdefault("complements", {})
        if mask in cache:
            return cache[mask]
        need, rem = divmod(self.parent.order, mask.bit_count())
        found = None
        if rem == 0:
            for n in self.by_order.get(need, ()):
                if n & mask == 1:
                    found = n
                    break
        cache[mask] = found
        return found

    @cached_property
    def summand_masks(self):
        return [m for m in self.masks if self.complement_mask(m) is not None]

    def verify(self):
        """Check closure under intersection and sum."""
        add = self.parent.add
        for i, a in enumerate(self.masks):
            for b in self.masks[i + 1:]:
                if a & b not in self.index or subgroup_sum(add, a, b) not in self.index:
                    raise ValidationError("lattice closure")
        return True


def regular_module(r):
    """R as a right module over itself."""
    if isinstance(r, IntegerRing):
        raise UnsupportedError("the integer backend cannot be enumerated")
    m = r.__dict__.get("_regular")
    if m is None:
        m = ModuleTable(r, r.add, r.mul, name=f"{r.name}_{r.name}", validate=False)
        r.__dict__["_regular"] = m
    return m


def zbackend_module(invariants, max_order=DEFAULT_MAX_MODULE_ORDER):
    """Z_{d1} x ... x Z_{dk} as a module over the integers."""
    invariants = [int(d) for d in invariants]
    if any(d < 2 for d in invariants):
        raise ValueError("invariants must be >= 2")
    size = int(np.prod(invariants)) if invariants else 1
    if size > max_order:
        raise SizeError(f"module order {size} exceeds {max_order}")
    digits, weights = _digits(invariants)
    add = np.zeros((size, size), dtype=np.int64)
    for i, d in enumerate(invariants):
        add += ((digits[:, None, i] + digits[None, :, i]) % d) * weights[i]
    name = "x".join(f"Z{d}" for d in invariants) or "0"
    return ModuleTable(ZZ, add, name=f"{name} over Z", validate=size <= 64)


def _digits(orders):
    """Mixed-radix digits, first factor most significant."""
    size = int(np.prod(orders)) if orders else 1
    weights = [int(np.prod(orders[i + 1:])) for i in range(len(orders))]
    idx = np.arange(size)
    digits = np.stack([(idx // w) % o for w, o in zip(weights, orders)], axis=1) if orders else np.zeros((1, 0), dtype=np.int64)
    return digits, weights


def direct_sum(*modules, max_order=DEFAULT_MAX_MODULE_ORDER):
    """External direct sum; records ``injections`` and ``projections`` per factor."""
    if not modules:
        raise ValueError("need at least one summand")
    base = modules[0].base
    for m in modules[1:]:
        if not same_base(base, m.base):
            raise ValueError("direct summands must share a base ring")
    orders = [m.order for m in modules]
    size = int(np.prod(orders))
    if size > max_order:
        raise SizeError(f"module order {size} exceeds {max_order}")
    digits, weights = _digits(orders)
    add = np.zeros((size, size), dtype=np.int64)
    for i, m in enumerate(modules):
        d = digits[:, i]
        add += m.add[d[:, None], d[None, :]].astype(np.int64) * weights[i]
    act = None
    if not isinstance(base, IntegerRing):
        act = np.zeros((size, base.order), dtype=np.int64)
        for i, m in enumerate(modules):
            act += m.act[digits[:, i]].astype(np.int64) * weights[i]
    name = " + ".join(m.name for m in modules)
    out = ModuleTable(base, add, act, name=f"({name})", validate=False)
    out.injections = [_frozen(np.arange(m.order) * w) for m, w in zip(modules, weights)]
    out.projections = [_frozen(digits[:, i]) for i in range(len(modules))]
    out.factors = list(modules)
    return out


def _coset_labels(m, mask):
    members = indices_of(mask)
    least = m.add[:, members].min(axis=1)
    reps = np.unique(least)
    return reps, np.searchsorted(reps, least)


def quotient_module(m, n):
    """M/N with cosets labelled by their least element; records ``projection``."""
    cache = m._cache.setdefault("quotients", {})
    if n.mask in cache:
        return cache[n.mask]
    reps, label = _coset_labels(m, n.mask)
    add = label[m.add[np.ix_(reps, reps)]]
    act = None if m.over_integers else label[m.act[reps]]
    q = ModuleTable(m.base, add, act, name=f"{m.name}/[{n.order}]", validate=False)
    q.projection = _frozen(label)
    q.representatives = _frozen(reps)
    cache[n.mask] = q
    return q


def restrict(m, n):
    """A submodule as a standalone module; ``embedding`` maps its indices into M."""
    cache = m._cache.setdefault("restrictions", {})
    if n.mask in cache:
        return cache[n.mask]
    elems = n.elements
    pos = np.full(m.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = pos[m.add[np.ix_(elems, elems)]]
    act = None if m.over_integers else pos[m.act[elems]]
    k = ModuleTable(m.base, add, act, name=f"{m.name}|[{len(elems)}]", validate=False)
    k.embedding = _frozen(elems)
    cache[n.mask] = k
    return k


def zero_submodule(m):
    return Submodule(m, 1)


def whole(m):
    return Submodule(m, m.full_mask)


def submodule_generated(m, gens):
    """Smallest submodule containing ``gens``."""
    cyc = m.cyclic_masks
    mask = reduce(lambda acc, g: subgroup_sum(m.add, acc, cyc[int(g)]), gens, 1)
    return Submodule(m, mask)


def all_submodules(m, max_order=LATTICE_MAX_ORDER, limit=LATTICE_LIMIT):
    """The submodule lattice, found by closing the cyclic submodules under sums."""
    lat = m._cache.get("lattice")
    if lat is None:
        if m.order > max_order:
            raise SizeError(f"lattice of a module of order {m.order} exceeds bound {max_order}")
        lat = SubmoduleLattice(m, sum_closure(m.add, m.cyclic_masks, limit))
        m._cache["lattice"] = lat
    return lat


def complement(m, k):
    """A complement of ``k`` in ``m`` or None."""
    c = all_submodules(m).complement_mask(k.mask)
    return None if c is None else Submodule(m, c)


def is_direct_summand(m, k):
    return complement(m, k) is not None


def minimal_generating_set(m):
    """Greedy generating set from which no element can be dropped."""
    cyc = m.cyclic_masks
    order = sorted(range(1, m.order), key=lambda x: (-cyc[x].bit_count(), x))
    gens, span = [], 1
    for x in order:
        if span == m.full_mask:
            break
        if not (span >> x) & 1:
            gens.append(x)
            span = subgroup_sum(m.add, span, cyc[x])
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if submodule_generated(m, rest).mask == m.full_mask:
            gens = rest
        else:
            i += 1
    return gens


def is_essential_submodule(m, n, in_):
    """``n`` meets every nonzero cyclic submodule of ``in_``."""
    if not n <= in_:
        raise ValueError("n must be contained in in_")
    cyc = m.cyclic_masks
    return all(cyc[x] & n.mask > 1 for x in in_.elements[1:])


def submodule_from_elements(m, elements):
    """Validate a set of elements as a submodule."""
    mask = mask_of(list(elements) + [0], m.order)
    if submodule_generated(m, indices_of(mask)).mask != mask:
        raise ValueError("elements do not form a submodule")
    return Submodule(m, mask)
