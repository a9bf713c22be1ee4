"""Instance families, theorem replay, counterexample search and oracle cross-checks.

A family is a base ring plus a generation recipe.  Every generated module
carries a ``spec`` string in the instance grammar, so any reported violation
can be rebuilt with ``parse_spec``.  Reports contain only exact data and are
ordered by the registry and by family order, never by completion order.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations, combinations_with_replacement

import numpy as np

from . import classifier as C
from ._bits import indices_of, mask_of, masks_of_rows
from .errors import SizeError, UnsupportedError
from .hom import (
    end_ring,
    hom_tables,
    is_isomorphic,
    is_projective_module,
    is_injective_module,
    is_quasi_injective,
    is_quasi_projective,
    is_relatively_injective,
    preimage_masks,
)
from .module import Submodule, all_submodules, direct_sum, minimal_generating_set, quotient_module, regular_module, restrict
from .ring import (
    ZZ,
    idempotents,
    is_essential_mask,
    is_field,
    is_semisimple,
    is_von_neumann_regular,
    is_z2_semiperfect,
    right_ideals,
)
from .syntax import Builder, parse_term, to_text
from .torsion import goldie_torsion, intrinsic_z2, t_closed_submodules, t_operator, z2_mask

REPORT_VERSION = "1"

FAIL_NOTE = "a FAIL is an implementation bug: the statement is a proved theorem"


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class InstanceFamily:
    """A base ring (spec text, or None for the integers) and a generation recipe."""

    name: str
    ring: str | None = None
    cyclics: bool = True
    max_summands: int = 3
    subquotients: bool = True
    subquotient_order: int = 16
    z_invariants: tuple = ()
    max_order: int = 64
    max_end: int = 4096
    max_instances: int = 500
    pool_order: int = 16
    pool_size: int = 6

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


DEFAULT_FAMILIES = (
    InstanceFamily("Z4", "ring zmod 4"),
    InstanceFamily("Z8", "ring zmod 8"),
    InstanceFamily("Z6", "ring zmod 6"),
    InstanceFamily("F2", "ring zmod 2"),
    InstanceFamily("T2F2", "ring triangular upper 2 (ring zmod 2)"),
    InstanceFamily("M2F2", "ring matrix 2 (ring zmod 2)"),
    InstanceFamily("Z2xZ4", "ring product (ring zmod 2) (ring zmod 4)"),
    InstanceFamily("Z", None, subquotients=False, z_invariants=(2, 3, 4, 8)),
)

EXTRA_FAMILIES = (
    InstanceFamily("L2F2", "ring triangular lower 2 (ring zmod 2)"),
    InstanceFamily("Z9", "ring zmod 9"),
    InstanceFamily("T2Z3", "ring triangular upper 2 (ring zmod 3)", max_summands=1),
)

# rings scanned by ring-level searches for a one-sided property
TRIANGULAR_RINGS = (
    "ring triangular upper 2 (ring zmod 2)",
    "ring triangular lower 2 (ring zmod 2)",
    "ring triangular upper 2 (ring zmod 3)",
    "ring triangular upper 2 (ring zmod 4)",
    "ring triangular lower 2 (ring zmod 4)",
    "ring triangular upper 3 (ring zmod 2)",
    "ring triangular upper 2 (ring product (ring zmod 2) (ring zmod 2))",
)


def family_by_name(name):
    for fam in DEFAULT_FAMILIES + EXTRA_FAMILIES:
        if fam.name == name:
            return fam
    raise KeyError(f"unknown family {name!r}")


class FamilyInstances(list):
    """The generated modules, plus a manifest of counts and truncations."""

    def __init__(self, family, ring, modules=(), manifest=None):
        super().__init__(modules)
        self.family = family
        self.ring = ring
        self.manifest = manifest or {}


def _signature(m):
    cyc = sorted(c.bit_count() for c in m.cyclic_masks)
    return (m.order, tuple(cyc), tuple(sorted(m.additive_orders.tolist())), len(end_ring(m).tables))


def _generators(m, mask):
    """Generators of the submodule ``mask`` as element indices of ``m``."""
    sub = restrict(m, Submodule(m, mask))
    return tuple(int(sub.embedding[g]) for g in minimal_generating_set(sub))


def generate_family(fam, builder=None):
    """Deterministic, isomorphism-deduplicated modules within the family caps."""
    b = builder or Builder()
    ring = b.build(parse_term(fam.ring)) if fam.ring else ZZ
    out = FamilyInstances(fam, ring)
    skipped = {"order_cap": 0, "end_cap": 0, "hom_bound": 0, "instance_cap": 0, "isomorphic": 0}
    buckets = {}
    terms = []

    def offer(term):
        if len(out) >= fam.max_instances:
            skipped["instance_cap"] += 1
            return
        try:
            m = b.build(term)
            if m.order > fam.max_order:
                skipped["order_cap"] += 1
                return
            size = len(end_ring(m).tables)
        except SizeError:
            skipped["hom_bound"] += 1
            return
        if size > fam.max_end:
            skipped["end_cap"] += 1
            return
        sig = _signature(m)
        for other in buckets.get(sig, []):
            try:
                same = is_isomorphic(m, other)
            except SizeError:
                same = False
            if same:
                skipped["isomorphic"] += 1
                return
        buckets.setdefault(sig, []).append(m)
        out.append(m)
        terms.append(term)

    if fam.ring is None:
        if fam.z_invariants:
            offer(("module", "zabelian"))
            for k in range(1, fam.max_summands + 1):
                for combo in combinations_with_replacement(sorted(fam.z_invariants), k):
                    if int(np.prod(combo)) <= fam.max_order:
                        offer(("module", "zabelian", *combo))
                    else:
                        skipped["order_cap"] += 1
    elif fam.cyclics:
        reg = ("module", "regular", parse_term(fam.ring))
        rr = regular_module(ring)
        for ideal in right_ideals(ring):
            offer(reg if ideal.mask == 1 else ("module", "quotient", reg, _generators(rr, ideal.mask)))
        cyc = [t for t, m in zip(terms, out) if m.order > 1]
        for k in range(2, fam.max_summands + 1):
            for combo in combinations_with_replacement(range(len(cyc)), k):
                size = int(np.prod([b.build(cyc[i]).order for i in combo]))
                if size > fam.max_order:
                    skipped["order_cap"] += 1
                    continue
                term = cyc[combo[0]]
                for i in combo[1:]:
                    term = ("module", "sum", term, cyc[i])
                offer(term)
    if fam.subquotients:
        for term, m in list(zip(terms, out)):
            if m.order > fam.subquotient_order:
                continue
            for mask in all_submodules(m).masks:
                if mask in (1, m.full_mask):
                    continue
                gens = _generators(m, mask)
                offer(("module", "sub", term, gens))
                offer(("module", "quotient", term, gens))
    out.manifest = {"family": fam.name, "instances": len(out), "truncated": {k: v for k, v in skipped.items() if k != "isomorphic"},
                    "duplicates_removed": skipped["isomorphic"]}
    return out


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Theorem:
    id: str
    kind: str  # implication | equivalence | construction | identity
    scope: str  # per-module | per-pair | per-ring | per-sum | none
    statement: str
    mode: str = "check"  # check | partial | skip
    reason: str = ""


REGISTRY = (
    Theorem("t-of-Sf-identity", "identity", "per-module", "f^-1(Z2(M)) = t_M(Sf) for every endomorphism f"),
    Theorem("intersection-identity", "identity", "per-module", "the intersection of all f^-1(Z2(M)) is Z2(M)"),
    Theorem("clear-classes", "implication", "per-module",
            "semisimple, singular and Z2-torsion modules, and all modules over rings with Z2(R_R)=R, are Goldie Rickart"),
    Theorem("nonsingular-agreement", "equivalence", "per-module", "a nonsingular module is Rickart iff Goldie Rickart"),
    Theorem("indecomposable-goldie-rickart", "implication", "per-module", "indecomposable and Goldie Rickart implies Rickart or Z2-torsion"),
    Theorem("indecomposable-extending", "implication", "per-module", "indecomposable and extending implies nonsingular or Goldie Rickart"),
    Theorem("t-baer", "implication", "per-module",
            "t-Baer implies Goldie Rickart; Goldie Rickart with the strong summand intersection property over Z2 implies t-Baer"),
    Theorem("t-extending", "implication", "per-module", "t-extending implies Goldie Rickart"),
    Theorem("preimage-t-closed", "implication", "per-module", "every f^-1(Z2(M)) is t-closed (cited external result, checked empirically)"),
    Theorem("sigma-t-extending", "equivalence", "per-ring",
            "free modules t-extending / all modules t-extending / all t-Baer / all Goldie Rickart agree", "partial"),
    Theorem("morita-triangular", "implication", "none", "Morita equivalence to products of lower triangular rings over division rings",
            "skip", "Morita equivalence is out of scope"),
    Theorem("decomposition", "equivalence", "per-module", "Goldie Rickart iff M = Z2(M) + N with N a nonsingular Rickart complement"),
    Theorem("z2-semiperfect", "implication", "per-ring", "over a Z2(R_R)-semiperfect ring every module is Goldie Rickart", "partial"),
    Theorem("qf-rings", "implication", "none", "every module over a QF ring is Goldie Rickart", "skip",
            "QF detection is out of scope"),
    Theorem("product-of-primes-example", "construction", "none", "product of Z_p over all primes", "skip",
            "infinite module"),
    Theorem("quotient-does-not-lift-remark", "construction", "none", "M/N Goldie Rickart does not force M Goldie Rickart", "skip",
            "the witnessing module is infinite"),
    Theorem("rickart-not-goldie-example", "construction", "none", "a Rickart module that is not Goldie Rickart", "skip",
            "the witnessing module is infinite; see the search report"),
    Theorem("z4-example", "construction", "per-module", "Z4 over Z is Goldie Rickart and not Rickart, kernel of doubling is {0,2}"),
    Theorem("rickart-versus", "equivalence", "per-module",
            "Goldie Rickart with each kernel a summand of f^-1(Z2(M)) iff Rickart with Z2(M) a summand"),
    Theorem("z-summand", "implication", "per-module",
            "Rickart with Z(M) a summand implies Goldie Rickart; Goldie Rickart over a right nonsingular ring has Z(M) a summand"),
    Theorem("split-sequence", "equivalence", "per-module", "Goldie Rickart iff every sequence 0 -> f^-1(Z2) -> M -> M/f^-1(Z2) -> 0 splits"),
    Theorem("semisimple-ring", "equivalence", "per-ring",
            "R semisimple iff every module is Goldie Rickart with projective Goldie torsion", "partial"),
    Theorem("fully-invariant", "implication", "per-module",
            "fully invariant N with all End(N) maps extendable inherits Goldie Rickart"),
    Theorem("injective-hull", "implication", "none", "quasi-injective M inherits Goldie Rickart from E(M)", "skip",
            "injective hulls out of scope"),
    Theorem("quasi-injective-duo", "implication", "per-module", "submodules of a quasi-injective duo Goldie Rickart module are Goldie Rickart"),
    Theorem("summand-closure", "implication", "per-module", "direct summands of Goldie Rickart modules are Goldie Rickart"),
    Theorem("direct-sum-example", "construction", "none", "a non Goldie Rickart sum of Goldie Rickart modules", "skip",
            "the witnessing ring is infinite; see the search report"),
    Theorem("hom-zero-sums", "equivalence", "per-sum", "with Hom(Mi,Mj)=0 for i != j the sum is Goldie Rickart iff each Mi is"),
    Theorem("abelian-sums", "equivalence", "per-sum", "an abelian sum is Goldie Rickart iff each summand is"),
    Theorem("regular-end-powers", "implication", "per-sum", "von Neumann regular End and Goldie Rickart implies M^k Goldie Rickart"),
    Theorem("sip-lemma", "implication", "per-module", "for Goldie Rickart M, summand N over Z2 and any summand K, N n K is a summand"),
    Theorem("sip-over-z2", "implication", "per-module", "Goldie Rickart implies the summand intersection property over Z2"),
    Theorem("finite-subsets", "equivalence", "per-module", "Goldie Rickart iff t_M(I) is a summand for every finite I in End(M)"),
    Theorem("projective-injective-z2", "implication", "per-module",
            "Goldie Rickart and projective (injective) implies Z2(M)+N projective (injective) for summands N"),
    Theorem("quotient-torsion", "implication", "per-module",
            "(Z(M)+N)/N <= Z(M/N) and (Z2(M)+N)/N <= Z2(M/N); equality over domains with torsion N"),
    Theorem("quasi-projective-lift", "implication", "per-module",
            "for quasi-projective M each endomorphism of M/N lifts with (f^-1(Z2)+N)/N inside its Z2 preimage"),
    Theorem("quasi-projective-quotient", "implication", "per-module",
            "over a domain, quotients of quasi-projective Goldie Rickart modules by fully invariant torsion submodules are Goldie Rickart"),
    Theorem("left-right-example", "construction", "none", "a ring left but not right Goldie Rickart", "skip",
            "the witnessing ring is infinite; see the search report"),
    Theorem("rickart-rings", "equivalence", "per-ring", "a ring is (left/right) Rickart iff Goldie Rickart and nonsingular on that side"),
    Theorem("over-module-example", "construction", "none", "Goldie Rickart does not pass to over-modules", "skip",
            "the witnessing ring is infinite"),
    Theorem("idempotent-ideals", "implication", "per-ring", "over a right Goldie Rickart ring every eR is Goldie Rickart"),
    Theorem("regular-projectives", "implication", "per-ring",
            "finitely generated projectives over von Neumann regular rings are Goldie Rickart", "partial"),
    Theorem("regular-finitely-presented", "implication", "per-ring",
            "finitely presented modules over von Neumann regular rings are Goldie Rickart", "partial"),
    Theorem("abelian-free", "implication", "per-ring", "abelian free modules over right Goldie Rickart rings are Goldie Rickart", "partial"),
    Theorem("ring-chain", "implication", "per-ring",
            "all GR => nonsingular Rickart and Z2(R_R) summand => projectives GR <=> frees GR => R right GR <=> cyclic projectives GR",
            "partial"),
    Theorem("relative-self", "equivalence", "per-module", "M is Goldie Rickart iff M-Goldie Rickart"),
    Theorem("relative-restriction", "equivalence", "per-pair",
            "M is N-Goldie Rickart iff each summand of M is Goldie Rickart relative to each submodule of N"),
    Theorem("relative-corollary", "equivalence", "per-module", "three equivalent relative forms of Goldie Rickart"),
    Theorem("c2-sums", "equivalence", "per-sum", "under pairwise relative C2 the sum is Goldie Rickart iff Mi is Mj-Goldie Rickart"),
    Theorem("c2-powers", "implication", "per-sum", "Goldie Rickart with C2 implies M^k Goldie Rickart"),
    Theorem("c2-free", "implication", "per-ring",
            "a right Goldie Rickart ring with C2 has Goldie Rickart finitely generated free and projective modules", "partial"),
    Theorem("relative-sip", "equivalence", "per-sum",
            "N with SIP (SSIP) over Z2 is sum-Goldie Rickart iff Goldie Rickart relative to each factor"),
    Theorem("relative-factors", "equivalence", "per-sum", "Mj is sum-Goldie Rickart iff Mj is Mi-Goldie Rickart for all i"),
    Theorem("relative-injective-sums", "equivalence", "per-sum",
            "with Mi Mj-injective for i<j, the sum is N-Goldie Rickart iff each Mi is"),
    Theorem("relative-injective-corollary", "equivalence", "per-sum",
            "with Mi Mj-injective for i<j, the sum is Goldie Rickart iff Mi is Mj-Goldie Rickart for all i, j"),
)

REGISTRY_IDS = tuple(t.id for t in REGISTRY)


@dataclass
class TheoremCheck:
    id: str
    kind: str
    scope: str
    status: str
    statement: str
    applicable: int = 0
    checked: int = 0
    families: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    witness: dict | None = None

    def to_dict(self):
        out = {"version": REPORT_VERSION, "id": self.id, "kind": self.kind, "scope": self.scope, "status": self.status,
               "statement": self.statement, "checked": self.checked, "applicable": self.applicable, "families": self.families}
        if self.notes:
            out["notes"] = self.notes
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# ---------------------------------------------------------------- per-family replay


def _mask_list(mask):
    return indices_of(mask).tolist()


class _Run:
    """Theorem replay over one generated family; tallies are plain dicts."""

    def __init__(self, inst):
        self.inst = inst
        self.fam = inst.family
        self.tally = {}
        self.cache = {}

    # bookkeeping
    def record(self, tid, applicable, ok, witness=None):
        t = self.tally.setdefault(tid, {"checked": 0, "applicable": 0, "witness": None, "notes": []})
        t["checked"] += 1
        if applicable:
            t["applicable"] += 1
        if not ok and t["witness"] is None:
            t["witness"] = dict(witness or {}, family=self.fam.name)

    def note(self, tid, text):
        self.tally.setdefault(tid, {"checked": 0, "applicable": 0, "witness": None, "notes": []})["notes"].append(f"{self.fam.name}: {text}")

    def memo(self, key, fn):
        if key not in self.cache:
            self.cache[key] = fn()
        return self.cache[key]

    # cached predicates
    def gr(self, m):
        return self.memo(("gr", id(m)), lambda: C.is_goldie_rickart(m))

    def rickart(self, m):
        return self.memo(("rk", id(m)), lambda: C.is_rickart(m))

    def rel_gr(self, a, b):
        return self.memo(("rgr", id(a), id(b)), lambda: C.is_relative_goldie_rickart(a, b))

    def rel_c2(self, a, b):
        return self.memo(("rc2", id(a), id(b)), lambda: C.is_relative_c2(a, b))

    def rel_inj(self, a, b):
        return self.memo(("rinj", id(a), id(b)), lambda: is_relatively_injective(a, b))

    def summands(self, m):
        return C.summand_masks(m)

    def projective(self, m):
        def go():
            try:
                return is_projective_module(m)
            except (SizeError, UnsupportedError):
                return None
        return self.memo(("proj", id(m)), go)

    def injective(self, m):
        def go():
            try:
                return is_injective_module(m)
            except (SizeError, UnsupportedError):
                return None
        return self.memo(("inj", id(m)), go)

    # driver
    def run(self):
        for m in self.inst:
            self.module_checks(m)
        self.sum_checks()
        if self.inst.ring is not ZZ:
            self.ring_checks()
        return self.tally

    # ------------------------------------------------------------ per-module
    def module_checks(self, m):
        spec = m.spec
        w = {"instance": spec}
        e = end_ring(m)
        t = np.asarray(e.tables)
        prof = goldie_torsion(m)
        z, z2 = prof.z.mask, prof.z2.mask
        full = m.full_mask
        pre = C.goldie_preimage_masks(m)
        gr = self.gr(m)
        rk = self.rickart(m)
        summands = set(self.summands(m))
        is_sum = summands.__contains__

        # t_M(Sf) = {x : g(f(x)) in Z2 for all g}
        z2_flags = np.zeros(m.order, dtype=bool)
        z2_flags[indices_of(z2)] = True
        stable = z2_flags[t].all(axis=0)  # y with g(y) in Z2 for every g
        t_sf = masks_of_rows(stable[t])
        self.record("t-of-Sf-identity", True, t_sf == pre, dict(w, endomorphism=next((i for i, (a, b) in enumerate(zip(t_sf, pre)) if a != b), None)))
        inter = full
        for p in pre:
            inter &= p
        self.record("intersection-identity", True, inter == z2, w)

        semisimple = len(summands) == len(all_submodules(m).masks)
        ring_torsion = not m.over_integers and z2_mask(regular_module(m.base)) == regular_module(m.base).full_mask
        hyp = semisimple or z == full or z2 == full or ring_torsion
        self.record("clear-classes", hyp, not hyp or gr, w)
        self.record("nonsingular-agreement", z == 1, z != 1 or rk == gr, w)

        indec = C.is_indecomposable(m)
        self.record("indecomposable-goldie-rickart", indec and gr, not (indec and gr) or rk or z2 == full, w)
        ext = C.is_extending(m)
        self.record("indecomposable-extending", indec and ext, not (indec and ext) or z == 1 or gr, w)

        tb = C.is_t_baer(m)
        ssip = C.has_ssip_over_z2(m)
        self.record("t-baer", tb or (gr and ssip), (not tb or gr) and (not (gr and ssip) or tb), w)
        text = C.is_t_extending(m)
        self.record("t-extending", text, not text or gr, w)
        tclosed = {n.mask for n in t_closed_submodules(m)}
        bad = [p for p in set(pre) if p not in tclosed]
        self.record("preimage-t-closed", True, not bad, dict(w, submodule=_mask_list(bad[0]) if bad else None))

        comp = all_submodules(m).complement_mask(z2)
        if comp is None:
            rhs = False
        else:
            n = restrict(m, Submodule(m, comp))
            rhs = C.is_rickart(n) and C.is_nonsingular(n)
        self.record("decomposition", True, gr == rhs, w)

        if m.over_integers and m.order == 4 and m.additive_orders.max() == 4:
            rw = C.rickart_witness(m)
            ok = gr and rw is not None and rw["kernel"] == [0, 2] and rw["table"] == [0, 2, 0, 2]
            self.record("z4-example", True, ok, w)

        ker = C.kernel_masks(m)
        cond = True
        for k, p in sorted(set(zip(ker, pre))):
            sub = restrict(m, Submodule(m, p))
            local = mask_of(np.searchsorted(sub.embedding, indices_of(k)), sub.order)
            if all_submodules(sub).complement_mask(local) is None:
                cond = False
                break
        self.record("rickart-versus", True, (gr and cond) == (rk and is_sum(z2)), w)

        ring_nonsingular = m.over_integers or goldie_torsion(regular_module(m.base)).z.mask == 1
        ok = (not (rk and is_sum(z)) or gr) and (not (gr and ring_nonsingular) or is_sum(z))
        self.record("z-summand", (rk and is_sum(z)) or (gr and ring_nonsingular), ok, w)

        splits = all(self._splits(m, p) == is_sum(p) for p in set(pre))
        self.record("split-sequence", True, splits and gr == all(self._splits(m, p) for p in set(pre)), w)

        self._fully_invariant(m, t, gr, w)
        if gr and C.is_duo(m) and is_quasi_injective(m):
            bad = [s for s in all_submodules(m).masks if not self.gr(restrict(m, Submodule(m, s)))]
            self.record("quasi-injective-duo", True, not bad, dict(w, submodule=_mask_list(bad[0]) if bad else None))
        else:
            self.record("quasi-injective-duo", False, True)
        if gr:
            bad = [s for s in summands if not C.is_goldie_rickart(restrict(m, Submodule(m, s)))]
            self.record("summand-closure", True, not bad, dict(w, summand=_mask_list(bad[0]) if bad else None))
            over = [s for s in summands if s & z2 == z2]
            bad = [(a, b) for a in over for b in summands if not is_sum(a & b)]
            self.record("sip-lemma", True, not bad, w)
            self.record("sip-over-z2", True, C.has_sip_over_z2(m), w)
        else:
            for tid in ("summand-closure", "sip-lemma", "sip-over-z2"):
                self.record(tid, False, True)

        self._finite_subsets(m, pre, gr, is_sum, w)
        self._proj_inj(m, gr, z2, summands, w)
        self._quotients(m, t, z, z2, w)
        self.record("relative-self", True, self.rel_gr(m, m) == gr and all(p & z2 == z2 for p in pre), w)
        if m.order <= self.fam.pool_order:
            self._relative_corollary(m, gr, w)

    def _splits(self, m, p):
        """Does M -> M/P have a section?"""
        q = quotient_module(m, Submodule(m, p))
        gens = minimal_generating_set(q)
        fibres = [np.flatnonzero(q.projection == g) for g in gens]
        return len(hom_tables(q, m, candidates=fibres)) > 0

    def _fully_invariant(self, m, t, gr, w):
        applicable, ok = False, True
        if gr:
            for s in all_submodules(m).masks:
                if s in (1, m.full_mask):
                    continue
                elems = indices_of(s)
                inside = np.zeros(m.order, dtype=bool)
                inside[elems] = True
                if not inside[t[:, elems]].all():
                    continue
                sub = restrict(m, Submodule(m, s))
                restricted = np.searchsorted(elems, t[:, elems])
                if len(np.unique(restricted, axis=0)) != len(end_ring(sub).tables):
                    continue
                applicable = True
                if not C.is_goldie_rickart(sub):
                    ok = False
                    w = dict(w, submodule=elems.tolist())
                    break
        self.record("fully-invariant", applicable, ok, w)

    def _finite_subsets(self, m, pre, gr, is_sum, w):
        distinct = sorted(set(pre))
        small = set(distinct)
        for a, b in combinations(distinct, 2):
            small.add(a & b)
        for a, b, c in combinations(distinct, 3):
            small.add(a & b & c)
        rhs = all(is_sum(s) for s in small)
        if len(end_ring(m).tables) <= 64:
            rhs = rhs and all(is_sum(s) for s in C.t_family(m))
        self.record("finite-subsets", True, rhs == gr, w)

    def _proj_inj(self, m, gr, z2, summands, w):
        if m.over_integers or not gr:
            self.record("projective-injective-z2", False, True)
            return
        for label, test in (("projective", self.projective), ("injective", self.injective)):
            if not test(m):
                continue
            for s in sorted(summands):
                k = restrict(m, Submodule(m, _sum_mask(m, z2, s)))
                verdict = test(k)
                if verdict is None:
                    self.note("projective-injective-z2", f"{m.spec}: {label} test over size bound")
                    continue
                self.record("projective-injective-z2", True, verdict, dict(w, property=label, summand=_mask_list(s)))

    def _quotients(self, m, t, z, z2, w):
        domain = m.over_integers or is_field(m.base)
        qp = is_quasi_projective(m)
        gr = self.gr(m)
        for s in all_submodules(m).masks:
            if s == m.full_mask:
                continue
            q = quotient_module(m, Submodule(m, s))
            proj = np.asarray(q.projection)
            qprof = goldie_torsion(q)
            img_z = mask_of(proj[indices_of(z)], q.order)
            img_z2 = mask_of(proj[indices_of(z2)], q.order)
            torsion = m.over_integers or s == 1
            ok = img_z & qprof.z.mask == img_z and img_z2 & qprof.z2.mask == img_z2
            if domain and torsion:
                ok = ok and img_z == qprof.z.mask and img_z2 == qprof.z2.mask
            self.record("quotient-torsion", True, ok, dict(w, submodule=_mask_list(s)))
            if qp:
                self._lift(m, t, s, q, proj, z2, domain and torsion, w)
            if domain and torsion and qp and gr:
                elems = indices_of(s)
                inside = np.zeros(m.order, dtype=bool)
                inside[elems] = True
                if inside[t[:, elems]].all():
                    self.record("quasi-projective-quotient", True, C.is_goldie_rickart(q), dict(w, submodule=elems.tolist()))

    def _lift(self, m, t, s, q, proj, z2, equality, w):
        elems = indices_of(s)
        inside = np.zeros(m.order, dtype=bool)
        inside[elems] = True
        rows = t[inside[t[:, elems]].all(axis=1)]  # endomorphisms with f(N) <= N
        reps = np.asarray(q.representatives)
        induced = proj[rows[:, reps]]  # fbar for each lift
        qz2 = np.zeros(q.order, dtype=bool)
        qz2[indices_of(z2_mask(q))] = True
        mz2 = np.zeros(m.order, dtype=bool)
        mz2[indices_of(z2)] = True
        lhs = np.zeros((len(rows), q.order), dtype=bool)
        pre = mz2[rows]
        r_idx, x_idx = np.nonzero(pre)
        lhs[r_idx, proj[x_idx]] = True
        rhs = qz2[induced]
        ok = not (lhs & ~rhs).any()
        if equality:
            ok = ok and np.array_equal(lhs, rhs)
        lifted = len(np.unique(induced, axis=0)) == len(hom_tables(q, q))
        self.record("quasi-projective-lift", True, ok and lifted, dict(w, submodule=elems.tolist()))

    def _relative_corollary(self, m, gr, w):
        lat = all_submodules(m).masks
        summands = self.summands(m)
        form2 = True
        for n in summands:
            nm = restrict(m, Submodule(m, n))
            for k in lat:
                if not C.is_relative_goldie_rickart(nm, restrict(m, Submodule(m, k))):
                    form2 = False
                    break
            if not form2:
                break
        form3 = True
        for k in summands:
            km = restrict(m, Submodule(m, k))
            homs = np.asarray(hom_tables(m, km))
            kz2 = np.zeros(km.order, dtype=bool)
            kz2[indices_of(z2_mask(km))] = True
            flags = kz2[homs]
            for n in summands:
                ne = indices_of(n)
                nm = restrict(m, Submodule(m, n))
                for row in np.unique(flags[:, ne], axis=0):
                    local = mask_of(np.flatnonzero(row), nm.order)
                    if all_submodules(nm).complement_mask(local) is None:
                        form3 = False
                        break
                if not form3:
                    break
            if not form3:
                break
        self.record("relative-corollary", True, gr == form2 == form3, dict(w, forms=[gr, form2, form3]))

    # ------------------------------------------------------------ sums
    def pool(self):
        return [m for m in self.inst if 1 < m.order <= self.fam.pool_order][: self.fam.pool_size]

    def sum_checks(self):
        pool = self.pool()
        for a in pool:
            for b in pool:
                self._restriction(a, b)
        done = {2: 0, 3: 0}
        for k in (2, 3):
            for combo in combinations_with_replacement(range(len(pool)), k):
                factors = [pool[i] for i in combo]
                if int(np.prod([f.order for f in factors])) > self.fam.max_order:
                    continue
                s = direct_sum(*factors)
                try:
                    if len(end_ring(s).tables) > self.fam.max_end:
                        continue
                except SizeError:
                    continue
                term = parse_term(factors[0].spec)
                for f in factors[1:]:
                    term = ("module", "sum", term, parse_term(f.spec))
                s.spec = to_text(term)
                self._sum(factors, s, pool)
                done[k] += 1
        for tid in ("c2-sums", "relative-factors", "relative-injective-sums", "relative-injective-corollary"):
            self.note(tid, f"{done[2]} two-factor and {done[3]} three-factor sums")

    def _restriction(self, a, b):
        lhs = self.rel_gr(a, b)
        rhs = True
        for s in self.summands(a):
            if s == 1:
                continue
            sa = restrict(a, Submodule(a, s))
            for n in all_submodules(b).masks:
                if not C.is_relative_goldie_rickart(sa, restrict(b, Submodule(b, n))):
                    rhs = False
                    break
            if not rhs:
                break
        self.record("relative-restriction", True, lhs == rhs, {"instance": a.spec, "relative_to": b.spec})

    def _sum(self, factors, s, pool):
        w = {"instance": s.spec}
        gr_s = self.gr(s)
        k = len(factors)
        each = all(self.gr(f) for f in factors)
        pairs = [(i, j) for i in range(k) for j in range(k)]
        hom_zero = all(len(hom_tables(factors[i], factors[j])) == 1 for i, j in pairs if i != j)
        self.record("hom-zero-sums", hom_zero, not hom_zero or gr_s == each, w)
        ab = C.is_abelian_module(s)
        self.record("abelian-sums", ab, not ab or gr_s == each, w)
        rel_all = all(self.rel_gr(factors[i], factors[j]) for i, j in pairs)
        c2 = all(self.rel_c2(factors[i], factors[j]) for i, j in pairs)
        self.record("c2-sums", c2, not c2 or gr_s == rel_all, w)
        power = all(f is factors[0] for f in factors)
        if power:
            m = factors[0]
            hyp = self.gr(m) and C.end_is_von_neumann_regular(m)
            self.record("regular-end-powers", hyp, not hyp or gr_s, w)
            hyp = self.gr(m) and C.has_c2(m)
            self.record("c2-powers", hyp, not hyp or gr_s, w)
        for j, f in enumerate(factors):
            self.record("relative-factors", True, self.rel_gr(f, s) == all(self.rel_gr(f, g) for g in factors),
                        dict(w, factor=j))
        for n in pool:
            sip = C.has_sip_over_z2(n)
            if sip:
                ok = self.rel_gr(n, s) == all(self.rel_gr(n, g) for g in factors)
                self.record("relative-sip", True, ok, dict(w, relative_from=n.spec, ssip=C.has_ssip_over_z2(n)))
        inj = all(self.rel_inj(factors[i], factors[j]) for i in range(k) for j in range(i + 1, k))
        if inj:
            for n in pool:
                ok = self.rel_gr(s, n) == all(self.rel_gr(f, n) for f in factors)
                self.record("relative-injective-sums", True, ok, dict(w, relative_to=n.spec))
        self.record("relative-injective-corollary", inj, not inj or gr_s == rel_all, w)

    # ------------------------------------------------------------ per-ring
    def ring_checks(self):
        r = self.inst.ring
        mods = list(self.inst)
        rr = regular_module(r)
        rep = C.ring_predicates(r)
        frees = []
        for k in (1, 2, 3):
            if r.order ** k > self.fam.max_order:
                break
            f = rr if k == 1 else direct_sum(*([rr] * k))
            if k > 1:
                term = ("module", "regular", parse_term(r.spec))
                for _ in range(k - 1):
                    term = ("module", "sum", term, ("module", "regular", parse_term(r.spec)))
                f.spec = to_text(term)
            try:
                end_ring(f)
            except SizeError:
                break
            if len(end_ring(f).tables) > self.fam.max_end:
                break
            frees.append(f)
        all_gr = all(self.gr(m) for m in mods)
        all_text = all(C.is_t_extending(m) for m in mods)
        all_tb = all(C.is_t_baer(m) for m in mods)
        free_text = all(C.is_t_extending(f) for f in frees)
        flags = {"free_t_extending": free_text, "free_ranks": len(frees), "t_extending": all_text, "t_baer": all_tb, "goldie_rickart": all_gr}
        self.record("sigma-t-extending", True, (not all_text or all_gr) and (not all_tb or all_gr) and (not all_text or free_text),
                    {"ring": r.spec, "flags": flags})
        self.note("sigma-t-extending", f"catalog flags {flags}")

        semiperfect = is_z2_semiperfect(r)
        self.record("z2-semiperfect", semiperfect, not semiperfect or all_gr, {"ring": r.spec})

        semisimple = is_semisimple(r)
        first_bad = None
        for m in mods:
            z2m = restrict(m, goldie_torsion(m).z2)
            if not (self.gr(m) and self.projective(z2m)):
                first_bad = m
                break
        self.record("semisimple-ring", True, not semisimple or first_bad is None, {"ring": r.spec})
        if semisimple:
            self.note("semisimple-ring", f"semisimple; all {len(mods)} modules Goldie Rickart with projective Z2")
        elif first_bad is not None:
            self.note("semisimple-ring", f"not semisimple; converse witness {first_bad.spec}")
        else:
            self.note("semisimple-ring", "not semisimple; no witness found within catalog")

        nonsing_r = goldie_torsion(rr).z.mask == 1
        op = C._opposite(r)
        nonsing_l = goldie_torsion(regular_module(op)).z.mask == 1
        ok = rep.right_rickart == (rep.right_goldie_rickart and nonsing_r) and rep.left_rickart == (rep.left_goldie_rickart and nonsing_l)
        self.record("rickart-rings", True, ok, {"ring": r.spec, "predicates": rep.__dict__})

        if rep.right_goldie_rickart:
            bad = [e for e in idempotents(r) if not C.is_goldie_rickart(restrict(rr, Submodule(rr, r.principal_masks[e])))]
            self.record("idempotent-ideals", True, not bad, {"ring": r.spec, "idempotent": bad[0] if bad else None})
        else:
            self.record("idempotent-ideals", False, True)

        projectives = [m for m in mods if self.projective(m)] + frees
        vnr = is_von_neumann_regular(r)
        self.record("regular-projectives", vnr, not vnr or all(self.gr(m) for m in projectives), {"ring": r.spec})
        self.record("regular-finitely-presented", vnr, not vnr or all(self.gr(m) and self.projective(m) for m in mods), {"ring": r.spec})

        if rep.right_goldie_rickart:
            bad = [f.spec for f in frees if C.is_abelian_module(f) and not self.gr(f)]
            self.record("abelian-free", True, not bad, {"ring": r.spec, "free": bad[0] if bad else None})
        else:
            self.record("abelian-free", False, True)

        # ring-chain flags over the catalog
        f1 = all_gr
        f2 = all(self.rickart(m) for m in mods if C.is_nonsingular(m)) and C._is_summand(rr, z2_mask(rr))
        f3 = all(self.gr(m) for m in projectives)
        f4 = all(self.gr(f) for f in frees)
        f5 = rep.right_goldie_rickart
        cyclic_proj = [m for m in projectives if len(minimal_generating_set(m)) <= 1]
        f6 = all(self.gr(m) for m in cyclic_proj)
        chain = {"1": f1, "2": f2, "3": f3, "4": f4, "5": f5, "6": f6}
        ok = (not f1 or f2) and (not f3 or f4) and (not f4 or f5) and (not f3 or f5) and (f5 == f6)
        self.record("ring-chain", True, ok, {"ring": r.spec, "flags": chain})
        self.note("ring-chain", f"catalog flags {chain}")

        c2 = C.has_c2(rr)
        hyp = rep.right_goldie_rickart and c2
        self.record("c2-free", hyp, not hyp or (f4 and f3), {"ring": r.spec})


def _sum_mask(m, a, b):
    from ._lattice import subgroup_sum

    return subgroup_sum(m.add, a, b)


def _run_family(fam):
    inst = generate_family(fam)
    return inst.manifest, _Run(inst).run()


def _map(fn, items, jobs):
    items = list(items)
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def run_theorems(families=DEFAULT_FAMILIES, jobs=1):
    """Replay the registry over the families; returns (checks, manifests)."""
    results = _map(_run_family, families, jobs)
    manifests = [m for m, _ in results]
    checks = []
    for th in REGISTRY:
        if th.mode == "skip":
            checks.append(TheoremCheck(th.id, th.kind, th.scope, "SKIPPED", th.statement, notes=[th.reason]))
            continue
        chk = TheoremCheck(th.id, th.kind, th.scope, "PASS", th.statement)
        for fam, (_, tally) in zip(families, results):
            t = tally.get(th.id)
            if t is None:
                continue
            chk.checked += t["checked"]
            chk.applicable += t["applicable"]
            chk.families.append(fam.name)
            chk.notes.extend(t["notes"])
            if t["witness"] is not None and chk.witness is None:
                chk.witness = t["witness"]
        if chk.witness is not None:
            chk.status = "FAIL"
            chk.notes.append(FAIL_NOTE)
        elif th.mode == "partial":
            chk.status = "PARTIAL"
            chk.notes.append("finite catalog sweep of a statement quantified over all modules")
        elif chk.checked == 0:
            chk.notes.append("no instance in the selected families")
        checks.append(chk)
    return checks, manifests


# ---------------------------------------------------------------- search

RING_ATOMS = ("right_goldie_rickart", "left_goldie_rickart", "right_rickart", "left_rickart")

MODULE_ATOMS = {
    "rickart": C.is_rickart,
    "goldie_rickart": C.is_goldie_rickart,
    "t_baer": C.is_t_baer,
    "t_extending": C.is_t_extending,
    "extending": C.is_extending,
    "duo": C.is_duo,
    "abelian": C.is_abelian_module,
    "c2": C.has_c2,
    "sip_over_z2": C.has_sip_over_z2,
    "ssip_over_z2": C.has_ssip_over_z2,
    "semisimple": C.is_semisimple_module,
    "nonsingular": C.is_nonsingular,
    "z2_torsion": C.is_z2_torsion,
    "singular": C.is_singular,
    "indecomposable": C.is_indecomposable,
    "quasi_injective": is_quasi_injective,
    "quasi_projective": is_quasi_projective,
}

SUM_TARGET = "sum_breaks_goldie_rickart"


def parse_target(text):
    """'a&!b' -> [('a', True), ('b', False)]; atoms must all be module-level or all ring-level."""
    atoms = []
    for part in text.split("&"):
        part = part.strip()
        want = not part.startswith("!")
        name = part.lstrip("!").strip()
        if name not in MODULE_ATOMS and name not in RING_ATOMS:
            raise ValueError(f"unknown predicate {name!r}")
        atoms.append((name, want))
    if not atoms:
        raise ValueError("empty target")
    kinds = {name in RING_ATOMS for name, _ in atoms}
    if len(kinds) > 1:
        raise ValueError("cannot mix ring-level and module-level predicates")
    return atoms


def search_counterexample(target, families=DEFAULT_FAMILIES, rings=TRIANGULAR_RINGS):
    """First instance (in family order) satisfying the target conjunction."""
    rec = {"version": REPORT_VERSION, "target": target}
    checked = 0
    if target == SUM_TARGET:
        for fam in families:
            inst = generate_family(fam)
            grs = [m for m in inst if m.order > 1 and C.is_goldie_rickart(m)]
            for a, b in combinations_with_replacement(range(len(grs)), 2):
                if grs[a].order * grs[b].order > fam.max_order:
                    continue
                s = direct_sum(grs[a], grs[b])
                checked += 1
                try:
                    if not C.is_goldie_rickart(s):
                        spec = f"module sum ({grs[a].spec}) ({grs[b].spec})"
                        return dict(rec, found=True, family=fam.name, instance=spec, checked=checked)
                except SizeError:
                    continue
        return dict(rec, found=False, status="exhausted", checked=checked, message="no witness found within catalog")
    atoms = parse_target(target)
    if atoms[0][0] in RING_ATOMS:
        b = Builder()
        seen = []
        for text in [f.ring for f in families if f.ring] + list(rings):
            if text in seen:
                continue
            seen.append(text)
            r = b.build(parse_term(text))
            rep = C.ring_predicates(r).__dict__
            checked += 1
            if all(rep[n] == want for n, want in atoms):
                return dict(rec, found=True, ring=text, predicates=rep, checked=checked)
        return dict(rec, found=False, status="exhausted", checked=checked, message="no witness found within catalog")
    for fam in families:
        for m in generate_family(fam):
            checked += 1
            if all(MODULE_ATOMS[n](m) == want for n, want in atoms):
                return dict(rec, found=True, family=fam.name, instance=m.spec, checked=checked)
    return dict(rec, found=False, status="exhausted", checked=checked, message="no witness found within catalog")


# ---------------------------------------------------------------- oracles


def hom_tables_scan(m, n):
    """All R-linear maps by extending partial maps one element at a time.

    Independent of the generator-chain enumeration: every set map is
    considered, with each additivity and linearity constraint applied as soon
    as all of its elements have been assigned.
    """
    size = m.order
    tables = np.zeros((1, 1), dtype=np.int64)
    scalars = None if m.over_integers else np.asarray(m.act)
    nscal = None if m.over_integers else np.asarray(n.act)
    for j in range(1, size):
        cand = np.arange(n.order)
        new = np.empty((len(tables) * n.order, j + 1), dtype=np.int64)
        new[:, :j] = np.repeat(tables, n.order, axis=0)
        new[:, j] = np.tile(cand, len(tables))
        ok = np.ones(len(new), dtype=bool)
        for a in range(j + 1):
            for b in range(j + 1):
                c = int(m.add[a, b])
                if c <= j and j in (a, b, c):
                    ok &= new[:, c] == n.add[new[:, a], new[:, b]]
        if scalars is not None:
            for x in range(j + 1):
                for r in range(scalars.shape[1]):
                    y = int(scalars[x, r])
                    if y <= j and j in (x, y):
                        ok &= new[:, y] == nscal[new[:, x], r]
        else:
            for x in range(j + 1):
                for k in range(2, m.exponent + 1):
                    y = int(m.scale(x, k))
                    if y <= j and j in (x, y):
                        ok &= new[:, y] == np.asarray(n.multiples)[new[:, x], k % n.exponent]
        tables = new[ok]
    return tables


def _all_ideal_essential(r, mask):
    return all(mask & other != 1 for other in (i.mask for i in right_ideals(r)) if other != 1)


def _rows(a):
    return sorted(map(tuple, np.asarray(a).tolist()))


def _crosscheck_family(fam):
    inst = generate_family(fam)
    out = {}

    def rec(name, ok, spec):
        c = out.setdefault(name, {"checked": 0, "agree": True, "witness": None})
        c["checked"] += 1
        if not ok and c["agree"]:
            c["agree"] = False
            c["witness"] = {"family": fam.name, "instance": spec}

    for m in inst:
        if m.order <= 32:
            e = end_ring(m)
            t = np.asarray(e.tables)
            images = {mask_of(np.unique(t[i]), m.order) for i in e.idempotent_indices}
            rec("summand_complement_vs_idempotent", images == set(C.summand_masks(m)), m.spec)
            for s in all_submodules(m).masks:
                rec("z2_hereditary", intrinsic_z2(m, Submodule(m, s)) == z2_mask(m) & s, m.spec)
        e = end_ring(m)
        t = np.asarray(e.tables)
        pre = preimage_masks(t, z2_mask(m), m.order)
        subsets = [[i] for i in range(min(4, len(t)))] + [list(range(min(3, len(t))))]
        if len(t) <= 64:
            subsets.append(list(range(len(t))))
        for idx in subsets:
            want = m.full_mask
            for i in idx:
                want &= pre[i]
            rec("t_operator_vs_intersection", t_operator(m, [t[i] for i in idx]).mask == want, m.spec)
        if len(t) <= 64:
            for idx in subsets[:-1]:
                # t_M of the left ideal generated: all g.f_i with g in End(M)
                comp = t[:, t[idx]].reshape(-1, m.order) if idx else t[:0]
                direct = m.full_mask
                for p in preimage_masks(comp, z2_mask(m), m.order):
                    direct &= p
                want = m.full_mask
                for i in idx:
                    want &= pre[i]
                rec("t_left_ideal_vs_intersection", direct == want, m.spec)
    small = [m for m in inst if m.order <= 8]
    for a in small:
        for b in small:
            rec("hom_enumeration_vs_scan", _rows(hom_tables(a, b)) == _rows(hom_tables_scan(a, b)), f"{a.spec} -> {b.spec}")
    r = inst.ring
    if r is not ZZ and r.order <= 16:
        for i in right_ideals(r):
            rec("principal_vs_all_ideal_essential", is_essential_mask(r, i.mask) == _all_ideal_essential(r, i.mask), r.spec)
        for m in inst:
            anns = masks_of_rows(np.asarray(m.act) == 0)
            oracle = mask_of([x for x, a in enumerate(anns) if _all_ideal_essential(r, a)], m.order)
            rec("singular_principal_vs_all_ideal", oracle == goldie_torsion(m).z.mask, m.spec)
    return out


def oracle_crosschecks(families=DEFAULT_FAMILIES, jobs=1):
    """Independent re-computations; each entry must report agree=True."""
    merged = {}
    for part in _map(_crosscheck_family, families, jobs):
        for name, c in part.items():
            m = merged.setdefault(name, {"checked": 0, "agree": True, "witness": None})
            m["checked"] += c["checked"]
            if not c["agree"] and m["agree"]:
                m["agree"], m["witness"] = False, c["witness"]
    return [dict({"version": REPORT_VERSION, "check": k}, **v) for k, v in sorted(merged.items())]


def with_caps(fam, **caps):
    return replace(fam, **{k: v for k, v in caps.items() if v is not None})
