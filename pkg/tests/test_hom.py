import numpy as np
import pytest

import brute
from grickart.errors import SizeError, UnsupportedError
from grickart.hom import (
    HomMap,
    end_ring,
    free_module,
    hom_set,
    hom_tables,
    hom_tables_bruteforce,
    image,
    is_injective_module,
    is_isomorphic,
    is_projective_module,
    is_quasi_injective,
    is_quasi_projective,
    is_relatively_injective,
    kernel,
    preimage,
)
from grickart.harness import hom_tables_scan
from grickart.module import Submodule, direct_sum, regular_module, restrict, submodule_generated, zbackend_module
from grickart.ring import is_isomorphic as rings_isomorphic
from grickart.ring import make_matrix_ring, make_triangular, make_zmod
from grickart.syntax import parse_spec

TINY = {
    "Z4": [
        "module regular (ring zmod 4)",
        "module quotient (module regular (ring zmod 4)) gens 2",
        "module sub (module regular (ring zmod 4)) gens 2",
        "module sum (module regular (ring zmod 4)) (module quotient (module regular (ring zmod 4)) gens 2)",
    ],
    "T2F2": [
        "module regular (ring triangular upper 2 (ring zmod 2))",
        "module quotient (module regular (ring triangular upper 2 (ring zmod 2))) gens 1",
        "module quotient (module regular (ring triangular upper 2 (ring zmod 2))) gens 2",
        "module sub (module regular (ring triangular upper 2 (ring zmod 2))) gens 3",
    ],
    "Z": ["module zabelian 2", "module zabelian 4", "module zabelian 2 2", "module zabelian 3", "module zabelian"],
}


def rows(tables):
    return sorted(tuple(r) for r in np.asarray(tables).tolist())


def test_hom_examples():
    z4 = regular_module(make_zmod(4))
    zero = zbackend_module([])
    assert len(hom_tables(zero, zbackend_module([4]))) == 1
    assert rows(hom_tables(z4, z4)) == [(0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 0, 2), (0, 3, 2, 1)]
    assert all(isinstance(f, HomMap) for f in hom_set(z4, z4))


@pytest.mark.parametrize("family", sorted(TINY))
def test_homs_vs_definition(family):
    mods = [parse_spec(t) for t in TINY[family]]
    for a in mods:
        for b in mods:
            if b.order ** (a.order - 1) > 5000:
                continue
            want = sorted(brute.homs(a, b))
            assert rows(hom_tables(a, b)) == want, (a.spec, b.spec)
            assert rows(hom_tables_scan(a, b)) == want
            assert rows(hom_tables_bruteforce(a, b)) == want


def test_peirce_hom():
    r = make_triangular(make_zmod(2), 2)
    rr = regular_module(r)
    idem = sorted(e for e in range(r.order) if r.mul[e, e] == e and e not in (0, r.one))
    pieces = [restrict(rr, submodule_generated(rr, [e])) for e in idem]
    for a in pieces:
        for b in pieces:
            assert rows(hom_tables(a, b)) == sorted(brute.homs(a, b))


def test_end_rings():
    e = end_ring(zbackend_module([4]))
    assert e.order == 4 and rings_isomorphic(e.ring, make_zmod(4))
    assert end_ring(zbackend_module([])).order == 1
    f2 = regular_module(make_zmod(2))
    v = direct_sum(f2, f2)
    ev = end_ring(v)
    assert ev.order == 16 and rings_isomorphic(ev.ring, make_matrix_ring(make_zmod(2), 2))
    assert len(ev.idempotent_indices) == brute.idempotent_count(brute.homs(v, v)) == 8


def test_kernel_image_preimage():
    z4 = regular_module(make_zmod(4))
    ident = HomMap(z4, z4, np.arange(4))
    assert kernel(ident).mask == 1 and image(ident).mask == z4.full_mask
    k = submodule_generated(z4, [2])
    assert preimage(ident, k) == k
    double = HomMap(z4, z4, np.array([0, 2, 0, 2]))
    assert kernel(double).elements.tolist() == [0, 2] and image(double).elements.tolist() == [0, 2]
    assert preimage(double, Submodule(z4, 1)).elements.tolist() == [0, 2]


def test_search_bound():
    m = zbackend_module([2, 2, 2, 2, 2])
    with pytest.raises(SizeError):
        hom_tables(m, m, bound=2 ** 10)


def test_injectivity_and_projectivity():
    z4 = regular_module(make_zmod(4))
    half = parse_spec("module quotient (module regular (ring zmod 4)) gens 2")
    assert is_projective_module(z4) and not is_projective_module(half)
    assert is_injective_module(z4) and not is_injective_module(half)
    assert is_projective_module(free_module(make_zmod(4), 2))
    assert is_quasi_injective(half) and is_quasi_projective(half)
    assert is_relatively_injective(z4, half)
    t = make_triangular(make_zmod(2), 2)
    assert is_projective_module(regular_module(t))
    assert not is_injective_module(regular_module(t))
    with pytest.raises(UnsupportedError):
        is_injective_module(zbackend_module([4]))


def test_isomorphism():
    assert is_isomorphic(parse_spec("module zabelian 6"), parse_spec("module zabelian 6"))
    assert not is_isomorphic(parse_spec("module zabelian 4"), parse_spec("module zabelian 2 2"))
