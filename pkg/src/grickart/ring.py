"""Finite unital rings as dense operation tables, plus the integer backend.

Elements are the integers ``0 .. order-1``; index 0 is always the additive
identity.  Right ideals are bitmasks over element indices.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from ._bits import indices_of, mask_of
from ._lattice import sum_closure
from .errors import SizeError, UnsupportedError, ValidationError

DEFAULT_MAX_ORDER = 64
IDEAL_LATTICE_LIMIT = 20000


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.flags.writeable = False
    return a


def _first(bad):
    return tuple(np.argwhere(bad)[0])


class RingTable:
    """A finite ring with identity given by its addition and multiplication tables."""

    def __init__(self, add, mul, one, name=None, validate=True):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.order = self.add.shape[0]
        self.zero = 0
        self.one = int(one)
        self.name = name or f"ring[{self.order}]"
        if validate:
            self.validate()

    def __repr__(self):
        return f"RingTable({self.name}, order={self.order})"

    @cached_property
    def neg(self):
        return _frozen(np.argmax(self.add == 0, axis=1))

    @cached_property
    def principal_masks(self):
        """Mask of the principal right ideal aR for each a."""
        return [mask_of(row, self.order) for row in self.mul]

    @cached_property
    def is_commutative(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    def validate(self):
        n = self.order
        add, mul = self.add, self.mul
        if n == 0 or add.shape != (n, n) or mul.shape != (n, n):
            raise ValidationError("square tables")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise ValidationError("entries in range")
        ar = np.arange(n)
        if not (np.array_equal(add[0], ar) and np.array_equal(add[:, 0], ar)):
            raise ValidationError("additive identity", (int(np.argmax(add[0] != ar)),))
        bad = add != add.T
        if bad.any():
            raise ValidationError("additive commutativity", _first(bad))
        rows_ok = np.all(np.sort(add, axis=1) == ar, axis=1)
        if not rows_ok.all():
            raise ValidationError("additive inverses", (int(np.argmin(rows_ok)),))
        if not (np.array_equal(mul[self.one], ar) and np.array_equal(mul[:, self.one], ar)):
            raise ValidationError("multiplicative identity", (self.one,))
        for a in range(n):
            # associativity of both laws and two-sided distributivity at fixed a
            bad = add[add[a]] != add[a][add]
            if bad.any():
                b, c = _first(bad)
                raise ValidationError("additive associativity", (a, b, c))
            bad = mul[mul[a]] != mul[a][mul]
            if bad.any():
                b, c = _first(bad)
                raise ValidationError("multiplicative associativity", (a, b, c))
            bad = mul[a][add] != add[mul[a][:, None], mul[a][None, :]]
            if bad.any():
                b, c = _first(bad)
                raise ValidationError("left distributivity", (a, b, c))
            bad = mul[:, a][add] != add[mul[:, a][:, None], mul[:, a][None, :]]
            if bad.any():
                b, c = _first(bad)
                raise ValidationError("right distributivity", (b, c, a))
        return self


class IntegerRing:
    """The ring of integers, never enumerated.

    Only annihilator essentiality is answered: a right ideal nZ is essential
    iff n != 0.
    """

    name = "Z"
    order = None

    def __repr__(self):
        return "IntegerRing()"


ZZ = IntegerRing()


@dataclass(frozen=True)
class RightIdeal:
    """A right ideal: a bitmask over a finite ring, or a generator of nZ."""

    ring: object
    mask: int = 0
    generator: int = 0

    @property
    def elements(self):
        if isinstance(self.ring, IntegerRing):
            raise UnsupportedError("integer ideals are not enumerable")
        return indices_of(self.mask)

    @property
    def order(self):
        return self.mask.bit_count()


def _check_order(order, bound):
    if order < 1 or order > bound:
        raise SizeError(f"ring order {order} outside [1, {bound}]")


def make_zmod(n, max_order=DEFAULT_MAX_ORDER):
    """The ring Z/nZ."""
    _check_order(n, max_order)
    a = np.arange(n)
    return RingTable((a[:, None] + a) % n, (a[:, None] * a) % n, 1 % n, name=f"Z{n}")


def make_product(r1, r2, max_order=DEFAULT_MAX_ORDER):
    n1, n2 = r1.order, r2.order
    _check_order(n1 * n2, max_order)
    idx = np.arange(n1 * n2)
    a, b = idx // n2, idx % n2
    add = r1.add[a[:, None], a[None, :]] * n2 + r2.add[b[:, None], b[None, :]]
    mul = r1.mul[a[:, None], a[None, :]] * n2 + r2.mul[b[:, None], b[None, :]]
    return RingTable(add, mul, r1.one * n2 + r2.one, name=f"({r1.name}x{r2.name})")


def _positions(k, shape):
    if shape == "full":
        return [(i, j) for i in range(k) for j in range(k)]
    if shape == "upper":
        return [(i, j) for i in range(k) for j in range(k) if i <= j]
    if shape == "lower":
        return [(i, j) for i in range(k) for j in range(k) if i >= j]
    raise ValueError(f"unknown shape {shape!r}")


def _matrix_ring(r, k, shape, max_order):
    if k < 1:
        raise ValueError("matrix size must be positive")
    pos = _positions(k, shape)
    n = r.order
    size = n ** len(pos)
    _check_order(size, max_order)
    weights = n ** np.arange(len(pos))
    entries = (np.arange(size)[:, None] // weights) % n  # (size, |pos|)
    full = np.zeros((size, k, k), dtype=np.int64)
    for p, (i, j) in enumerate(pos):
        full[:, i, j] = entries[:, p]
    add = (r.add[entries[:, None, :], entries[None, :, :]] * weights).sum(-1)
    mul = np.zeros((size, size), dtype=np.int64)
    for p, (i, j) in enumerate(pos):
        acc = np.zeros((size, size), dtype=np.int64)
        for l in range(k):
            acc = r.add[acc, r.mul[full[:, None, i, l], full[None, :, l, j]]]
        mul += acc * weights[p]
    one = sum(int(weights[p]) * r.one for p, (i, j) in enumerate(pos) if i == j)
    return add, mul, one


def make_matrix_ring(r, k, max_order=DEFAULT_MAX_ORDER):
    """Full k x k matrices over ``r``."""
    if k == 1:
        return r
    add, mul, one = _matrix_ring(r, k, "full", max_order)
    return RingTable(add, mul, one, name=f"M{k}({r.name})")


def make_triangular(r, k, shape="upper", max_order=DEFAULT_MAX_ORDER):
    """k x k upper or lower triangular matrices over ``r``."""
    if shape not in ("upper", "lower"):
        raise ValueError(f"shape must be 'upper' or 'lower', not {shape!r}")
    if k == 1:
        return r
    add, mul, one = _matrix_ring(r, k, shape, max_order)
    tag = "T" if shape == "upper" else "L"
    return RingTable(add, mul, one, name=f"{tag}{k}({r.name})")


def opposite_ring(r):
    return RingTable(r.add, r.mul.T, r.one, name=f"{r.name}^op", validate=False)


def _require_finite(r):
    if isinstance(r, IntegerRing):
        raise UnsupportedError("the integer backend cannot be enumerated")


def right_ideals(r):
    """All right ideals of a finite ring, smallest first."""
    _require_finite(r)
    masks = _ideal_masks(r)
    return [RightIdeal(r, m) for m in masks]


def _ideal_masks(r):
    cache = r.__dict__.setdefault("_ideal_masks", None)
    if cache is None:
        cache = sum_closure(r.add, r.principal_masks, IDEAL_LATTICE_LIMIT)
        r.__dict__["_ideal_masks"] = cache
    return cache


def is_essential_mask(r, mask):
    """True iff the subset ``mask`` meets every nonzero principal right ideal."""
    return all((p & mask) > 1 for p in r.principal_masks[1:])


def is_essential_right_ideal(r, ideal):
    if isinstance(r, IntegerRing):
        return ideal.generator != 0
    return is_essential_mask(r, ideal.mask)


def idempotents(r):
    return [int(e) for e in np.flatnonzero(r.mul[np.arange(r.order), np.arange(r.order)] == np.arange(r.order))]


def is_von_neumann_regular(r):
    # a x a for every pair (a, x)
    axa = r.mul[r.mul, np.arange(r.order)[:, None]]
    return bool(np.all((axa == np.arange(r.order)[:, None]).any(axis=1)))


def _complement_exists(r, masks, m):
    need = r.order // m.bit_count()
    return any(j.bit_count() == need and (j & m) == 1 for j in masks)


def is_semisimple(r):
    """Every right ideal is a direct summand of R_R."""
    masks = _ideal_masks(r)
    return all(_complement_exists(r, masks, m) for m in masks)


def quotient_ring(r, ideal_mask):
    """R/I for a two-sided ideal given as a mask; cosets labelled by least member."""
    members = indices_of(ideal_mask)
    least = r.add[:, members].min(axis=1)
    reps = np.unique(least)
    label = np.searchsorted(reps, least)
    add = label[r.add[np.ix_(reps, reps)]]
    mul = label[r.mul[np.ix_(reps, reps)]]
    return RingTable(add, mul, label[r.one], name=f"{r.name}/I")


def is_z2_semiperfect(r):
    """R/Z2(R_R) semisimple and idempotents lift strongly modulo Z2(R_R)."""
    from .module import regular_module
    from .torsion import goldie_torsion

    z2 = goldie_torsion(regular_module(r)).z2.mask
    if not is_semisimple(quotient_ring(r, z2)):
        return False
    idem = set(idempotents(r))
    ar = np.arange(r.order)
    sq = r.mul[ar, ar]
    for a in ar:
        if not (z2 >> int(r.add[sq[a], r.neg[a]])) & 1:
            continue
        lifted = False
        for e in indices_of(r.principal_masks[a]):
            if int(e) in idem and (z2 >> int(r.add[e, r.neg[a]])) & 1:
                lifted = True
                break
        if not lifted:
            return False
    return True


def ring_generators(r):
    """A small set of elements generating ``r`` as a ring with identity."""
    span = 1 | (1 << r.one)
    gens = []
    for x in sorted(range(r.order), key=lambda x: (-_additive_order(r, x), x)):
        if (span >> x) & 1:
            continue
        gens.append(x)
        span = _ring_closure(r, indices_of(span).tolist() + [x])
    return gens


def _additive_order(r, x):
    k, y = 1, x
    while y != 0:
        y = int(r.add[y, x])
        k += 1
    return k if x else 1


def _ring_closure(r, seeds):
    known = set(int(s) for s in seeds) | {0, r.one}
    frontier = list(known)
    while frontier:
        new = set()
        items = np.array(sorted(known))
        f = np.array(frontier)
        for table in (r.add, r.mul):
            new.update(table[np.ix_(f, items)].ravel().tolist())
            new.update(table[np.ix_(items, f)].ravel().tolist())
        frontier = list(new - known)
        known |= new
    return mask_of(sorted(known), r.order)


def is_isomorphic(r1, r2):
    """Backtracking isomorphism search on generator images.

    A test utility: exponential in the number of generators.
    """
    return find_isomorphism(r1, r2) is not None


def find_isomorphism(r1, r2):
    if r1.order != r2.order:
        return None
    n = r1.order
    gens = ring_generators(r1)
    # derivation sequence: every element as add/mul of earlier ones
    steps = []
    known = {0: None, r1.one: None}
    order = [0] if r1.one == 0 else [0, r1.one]
    for g in gens:
        if g not in known:
            known[g] = None
            order.append(g)
    while len(known) < n:
        changed = False
        for a, b in product(list(order), repeat=2):
            for op, table in (("add", r1.add), ("mul", r1.mul)):
                c = int(table[a, b])
                if c not in known:
                    known[c] = (op, a, b)
                    order.append(c)
                    steps.append((c, op, a, b))
                    changed = True
        if not changed:
            return None
    orders2 = [_additive_order(r2, x) for x in range(n)]
    cands = [[y for y in range(n) if orders2[y] == _additive_order(r1, g)] for g in gens]
    for images in product(*cands):
        phi = np.full(n, -1, dtype=np.int64)
        phi[0] = 0
        phi[r1.one] = r2.one
        for g, y in zip(gens, images):
            phi[g] = y
        for c, op, a, b in steps:
            table = r2.add if op == "add" else r2.mul
            phi[c] = table[phi[a], phi[b]]
        if len(np.unique(phi)) != n:
            continue
        if np.array_equal(phi[r1.add], r2.add[phi[:, None], phi[None, :]]) and np.array_equal(
            phi[r1.mul], r2.mul[phi[:, None], phi[None, :]]
        ):
            return phi
    return None


def is_field(r):
    """Finite ring without zero divisors (hence a field)."""
    if r.order < 2:
        return False
    nz = np.arange(1, r.order)
    return bool(np.all(r.mul[np.ix_(nz, nz)] != 0))
