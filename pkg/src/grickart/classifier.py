"""Decision procedures for the module and ring classes, with failure witnesses.

Each ``*_witness`` function returns None when the property holds and a
JSON-ready dict describing the first counterexample otherwise.  Endomorphisms
are scanned in enumeration order, so witnesses are reproducible.
"""
from dataclasses import dataclass, field

import numpy as np

from ._bits import indices_of, masks_of_rows
from .errors import SizeError, UnsupportedError
from .hom import (
    end_ring,
    hom_tables,
    is_injective_module,
    is_projective_module,
    is_quasi_injective,
    is_quasi_projective,
)
from .module import all_submodules, regular_module
from .ring import is_von_neumann_regular, opposite_ring
from .torsion import closed_submodules, goldie_torsion, preimage_z2_masks, t_closed_submodules, z2_mask


def _elems(mask):
    return indices_of(mask).tolist()


def _is_summand(m, mask):
    return all_submodules(m).complement_mask(mask) is not None


def _endo_witness(m, idx, **extra):
    out = {"endomorphism": int(idx), "table": np.asarray(end_ring(m).tables[idx]).tolist()}
    out.update(extra)
    return out


def _first_non_summand(m, masks):
    """Index of the first mask that is not a direct summand, or None."""
    verdict = {}
    for i, k in enumerate(masks):
        if k not in verdict:
            verdict[k] = _is_summand(m, k)
        if not verdict[k]:
            return i
    return None


def kernel_masks(m):
    return masks_of_rows(np.asarray(end_ring(m).tables) == 0)


def goldie_preimage_masks(m):
    """f^{-1}(Z2(M)) for every endomorphism f, in enumeration order."""
    cached = m._cache.get("gr_preimages")
    if cached is None:
        cached = preimage_z2_masks(end_ring(m).tables, m, m)
        m._cache["gr_preimages"] = cached
    return cached


def rickart_witness(m):
    ks = kernel_masks(m)
    i = _first_non_summand(m, ks)
    return None if i is None else _endo_witness(m, i, kernel=_elems(ks[i]))


def goldie_rickart_witness(m):
    ps = goldie_preimage_masks(m)
    i = _first_non_summand(m, ps)
    return None if i is None else _endo_witness(m, i, preimage=_elems(ps[i]))


def is_rickart(m):
    return rickart_witness(m) is None


def is_goldie_rickart(m):
    return goldie_rickart_witness(m) is None


def intersection_closure(masks):
    """Close a family of masks under pairwise intersection (sorted output)."""
    found = set(masks)
    frontier = set(masks)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                c = a & b
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return sorted(found, key=lambda x: (x.bit_count(), x))


def t_family(m):
    """Every t_M(I) for I a left ideal of End(M): intersections of the f^{-1}(Z2(M))."""
    cached = m._cache.get("t_family")
    if cached is None:
        cached = intersection_closure(set(goldie_preimage_masks(m)))
        m._cache["t_family"] = cached
    return cached


def t_baer_witness(m):
    fam = t_family(m)
    i = _first_non_summand(m, fam)
    return None if i is None else {"submodule": _elems(fam[i])}


def is_t_baer(m):
    return t_baer_witness(m) is None


def t_extending_witness(m):
    for n in t_closed_submodules(m):
        if not _is_summand(m, n.mask):
            return {"submodule": n.elements.tolist()}
    return None


def extending_witness(m):
    for n in closed_submodules(m):
        if not _is_summand(m, n.mask):
            return {"submodule": n.elements.tolist()}
    return None


def is_t_extending(m):
    return t_extending_witness(m) is None


def is_extending(m):
    return extending_witness(m) is None


def duo_witness(m):
    """Cyclic submodules suffice: f(xR) = f(x)R lies in xR iff f(x) does."""
    t = np.asarray(end_ring(m).tables)
    cyc = np.zeros((m.order, m.order), dtype=bool)
    cyc[np.arange(m.order)[:, None], m.scalar_table] = True
    inside = cyc[np.arange(m.order)[None, :], t]  # f(x) in xR
    bad = np.argwhere(~inside)
    if len(bad) == 0:
        return None
    f, x = bad[0]
    return _endo_witness(m, f, element=int(x), submodule=indices_of(m.cyclic_masks[x]).tolist())


def is_duo(m):
    return duo_witness(m) is None


def abelian_witness(m):
    e_ring = end_ring(m)
    t = np.asarray(e_ring.tables)
    for e in e_ring.idempotent_indices:
        left = t[e][t]
        right = np.take_along_axis(t, np.broadcast_to(t[e], t.shape), axis=1)
        bad = np.flatnonzero((left != right).any(axis=1))
        if len(bad):
            return _endo_witness(m, e, commutes_not_with=int(bad[0]))
    return None


def is_abelian_module(m):
    return abelian_witness(m) is None


def summand_masks(m):
    return all_submodules(m).summand_masks


def relative_c2_witness(m, n):
    """A submodule of n isomorphic to a summand of m but not a summand of n.

    Images of injective restrictions g|_D (g in Hom(m, n), D a summand of m)
    are exactly the submodules of n isomorphic to D.
    """
    if n.order == 1:
        return None
    homs = np.asarray(hom_tables(m, n))
    checked = set()
    for d in summand_masks(m):
        if d == 1:
            continue
        de = indices_of(d)
        sub = homs[:, de]
        srt = np.sort(sub, axis=1)
        inj = (np.diff(srt, axis=1) != 0).all(axis=1)
        rows = np.flatnonzero(inj)
        if len(rows) == 0:
            continue
        flags = np.zeros((len(rows), n.order), dtype=bool)
        flags[np.arange(len(rows))[:, None], sub[rows]] = True
        for j, k in enumerate(masks_of_rows(flags)):
            if k in checked:
                continue
            checked.add(k)
            if not _is_summand(n, k):
                return {"summand": de.tolist(), "hom": int(rows[j]), "image": _elems(k)}
    return None


def is_relative_c2(m, n):
    return relative_c2_witness(m, n) is None


def has_c2(m):
    return relative_c2_witness(m, m) is None


def summands_over_z2(m):
    z2 = z2_mask(m)
    return [s for s in summand_masks(m) if s & z2 == z2]


def sip_over_z2_witness(m):
    fam = summands_over_z2(m)
    for i, a in enumerate(fam):
        for b in fam[i + 1:]:
            if not _is_summand(m, a & b):
                return {"pair": [_elems(a), _elems(b)]}
    return None


def ssip_over_z2_witness(m):
    closure = intersection_closure(summands_over_z2(m))
    i = _first_non_summand(m, closure)
    return None if i is None else {"submodule": _elems(closure[i])}


def has_sip_over_z2(m):
    return sip_over_z2_witness(m) is None


def has_ssip_over_z2(m):
    return ssip_over_z2_witness(m) is None


def relative_gr_witness(m, n):
    """First f: m -> n with f^{-1}(Z2(n)) not a summand of m."""
    homs = hom_tables(m, n)
    ps = preimage_z2_masks(homs, m, n)
    i = _first_non_summand(m, ps)
    if i is None:
        return None
    return {"hom": int(i), "table": np.asarray(homs[i]).tolist(), "preimage": _elems(ps[i])}


def is_relative_goldie_rickart(m, n):
    return relative_gr_witness(m, n) is None


def is_nonsingular(m):
    return goldie_torsion(m).z.mask == 1


def is_z2_torsion(m):
    return goldie_torsion(m).z2.mask == m.full_mask


def is_singular(m):
    return goldie_torsion(m).z.mask == m.full_mask


def is_indecomposable(m):
    """Exactly two summands; the zero module is not indecomposable."""
    return m.order > 1 and len(summand_masks(m)) == 2


def semisimple_witness(m):
    lat = all_submodules(m)
    i = _first_non_summand(m, lat.masks)
    return None if i is None else {"submodule": _elems(lat.masks[i])}


def is_semisimple_module(m):
    return semisimple_witness(m) is None


def end_is_von_neumann_regular(m):
    return is_von_neumann_regular(end_ring(m).ring)


def _opposite(r):
    op = r.__dict__.get("_opposite")
    if op is None:
        op = opposite_ring(r)
        r.__dict__["_opposite"] = op
    return op


@dataclass
class RingReport:
    right_goldie_rickart: bool
    left_goldie_rickart: bool
    right_rickart: bool
    left_rickart: bool


def ring_predicates(r):
    right = regular_module(r)
    left = regular_module(_opposite(r))
    return RingReport(
        right_goldie_rickart=is_goldie_rickart(right),
        left_goldie_rickart=is_goldie_rickart(left),
        right_rickart=is_rickart(right),
        left_rickart=is_rickart(left),
    )


@dataclass
class PropertyReport:
    instance: str
    verdicts: dict
    witnesses: dict
    skipped: dict = field(default_factory=dict)

    def to_dict(self, witnesses=False):
        out = {"instance": self.instance, "verdicts": dict(self.verdicts)}
        if witnesses:
            out["witnesses"] = {k: v for k, v in self.witnesses.items() if v is not None}
        if self.skipped:
            out["skipped"] = dict(self.skipped)
        return out


_WITNESSED = [
    ("rickart", rickart_witness),
    ("goldie_rickart", goldie_rickart_witness),
    ("t_baer", t_baer_witness),
    ("t_extending", t_extending_witness),
    ("extending", extending_witness),
    ("duo", duo_witness),
    ("abelian", abelian_witness),
    ("c2", lambda m: relative_c2_witness(m, m)),
    ("sip_over_z2", sip_over_z2_witness),
    ("ssip_over_z2", ssip_over_z2_witness),
    ("semisimple", semisimple_witness),
]


def _element_witness(m, mask_in, label):
    bad = indices_of(m.full_mask & ~mask_in)
    return None if len(bad) == 0 else {label: int(bad[0])}


def classify(m, instance=None):
    """Run every module predicate and collect first witnesses."""
    verdicts, witnesses, skipped = {}, {}, {}
    for name, fn in _WITNESSED:
        w = fn(m)
        verdicts[name] = w is None
        witnesses[name] = w
    prof = goldie_torsion(m)
    verdicts["nonsingular"] = prof.z.mask == 1
    witnesses["nonsingular"] = None if verdicts["nonsingular"] else {"singular_element": int(prof.z.elements[1])}
    verdicts["z2_torsion"] = prof.z2.mask == m.full_mask
    witnesses["z2_torsion"] = _element_witness(m, prof.z2.mask, "element_outside_z2")
    verdicts["quasi_injective"] = is_quasi_injective(m)
    verdicts["quasi_projective"] = is_quasi_projective(m)
    verdicts["end_von_neumann_regular"] = end_is_von_neumann_regular(m)
    for name, fn in (("projective", is_projective_module), ("injective", is_injective_module)):
        try:
            verdicts[name] = fn(m)
        except UnsupportedError:
            skipped[name] = "integer backend"
        except SizeError as exc:
            skipped[name] = f"size bound: {exc}"
    return PropertyReport(instance or m.name, verdicts, witnesses, skipped)
