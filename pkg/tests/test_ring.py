import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from grickart.errors import SizeError, UnsupportedError, ValidationError
from grickart.ring import (
    ZZ,
    RingTable,
    idempotents,
    is_essential_right_ideal,
    is_field,
    is_isomorphic,
    is_semisimple,
    is_von_neumann_regular,
    is_z2_semiperfect,
    make_matrix_ring,
    make_product,
    make_triangular,
    make_zmod,
    opposite_ring,
    right_ideals,
)


def ideal_sets(r):
    return sorted(frozenset(i.elements.tolist()) for i in right_ideals(r))


def test_zmod_basic():
    z1 = make_zmod(1)
    assert z1.order == 1 and z1.zero == z1.one == 0
    z4 = make_zmod(4)
    assert z4.order == 4 and z4.mul[2, 2] == 0 and z4.one == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9, 12])
def test_zmod_matches_modular_arithmetic(n):
    add, mul = brute.zmod_tables(n)
    r = make_zmod(n)
    assert r.add.tolist() == add and r.mul.tolist() == mul


@pytest.mark.parametrize("n", [0, 65])
def test_zmod_size_errors(n):
    with pytest.raises(SizeError):
        make_zmod(n)


def test_product_crt_and_zero_factor():
    assert is_isomorphic(make_product(make_zmod(2), make_zmod(3)), make_zmod(6))
    assert is_isomorphic(make_product(make_zmod(4), make_zmod(1)), make_zmod(4))
    assert not is_isomorphic(make_product(make_zmod(2), make_zmod(2)), make_zmod(4))
    assert len(idempotents(make_product(make_zmod(2), make_zmod(2)))) == 4


def test_triangular_upper_f2():
    t = make_triangular(make_zmod(2), 2, "upper")
    assert t.order == 8 and not t.is_commutative
    assert is_isomorphic(make_triangular(make_zmod(3), 1), make_zmod(3))
    # lower and upper are isomorphic via transpose; T2 is iso to its opposite
    assert is_isomorphic(t, make_triangular(make_zmod(2), 2, "lower"))
    assert is_isomorphic(opposite_ring(t), t)


def test_matrix_ring():
    m = make_matrix_ring(make_zmod(2), 2)
    assert m.order == 16 and is_semisimple(m) and not m.is_commutative
    assert is_isomorphic(make_matrix_ring(make_zmod(3), 1), make_zmod(3))
    with pytest.raises(SizeError):
        make_matrix_ring(make_zmod(3), 2)


@pytest.mark.parametrize("n,count", [(4, 3), (2, 2), (6, 4), (8, 4), (12, 6)])
def test_right_ideals_vs_subset_scan(n, count):
    r = make_zmod(n)
    assert ideal_sets(r) == sorted(brute.right_ideals(r.add.tolist(), r.mul.tolist()))
    assert len(right_ideals(r)) == count


@pytest.mark.parametrize("ring", [
    lambda: make_triangular(make_zmod(2), 2),
    lambda: make_product(make_zmod(2), make_zmod(4)),
    lambda: make_triangular(make_zmod(2), 2, "lower"),
])
def test_right_ideals_noncyclic_rings(ring):
    r = ring()
    assert ideal_sets(r) == sorted(brute.right_ideals(r.add.tolist(), r.mul.tolist()))


def test_right_ideals_over_integers_unsupported():
    with pytest.raises(UnsupportedError):
        right_ideals(ZZ)


def test_essential_examples():
    z4, z6 = make_zmod(4), make_zmod(6)
    by_elems = {frozenset(i.elements.tolist()): i for i in right_ideals(z4)}
    assert is_essential_right_ideal(z4, by_elems[frozenset({0, 2})])
    by_elems6 = {frozenset(i.elements.tolist()): i for i in right_ideals(z6)}
    assert not is_essential_right_ideal(z6, by_elems6[frozenset({0, 2, 4})])
    for r in (z4, z6, make_triangular(make_zmod(2), 2)):
        whole = [i for i in right_ideals(r) if i.order == r.order][0]
        assert is_essential_right_ideal(r, whole)


@pytest.mark.parametrize("make", [lambda: make_zmod(8), lambda: make_zmod(12), lambda: make_triangular(make_zmod(2), 2),
                                  lambda: make_product(make_zmod(2), make_zmod(4))])
def test_essential_vs_definition(make):
    r = make()
    ideals = brute.right_ideals(r.add.tolist(), r.mul.tolist())
    for i in right_ideals(r):
        assert is_essential_right_ideal(r, i) == brute.essential_ideal(frozenset(i.elements.tolist()), ideals)


def test_idempotents():
    assert list(idempotents(make_zmod(4))) == [0, 1]
    assert list(idempotents(make_zmod(6))) == [0, 1, 3, 4]
    assert list(idempotents(make_zmod(2))) == [0, 1]


def test_von_neumann_regular():
    assert is_von_neumann_regular(make_zmod(6))
    assert not is_von_neumann_regular(make_zmod(4))
    assert is_von_neumann_regular(make_zmod(1))
    assert is_von_neumann_regular(make_matrix_ring(make_zmod(2), 2))
    assert not is_von_neumann_regular(make_triangular(make_zmod(2), 2))


def test_semisimple():
    assert is_semisimple(make_zmod(6))
    assert not is_semisimple(make_zmod(4))
    assert is_semisimple(make_matrix_ring(make_zmod(2), 2))
    assert not is_semisimple(make_triangular(make_zmod(2), 2))


def test_z2_semiperfect():
    assert is_z2_semiperfect(make_zmod(4))
    assert is_z2_semiperfect(make_zmod(2))
    assert is_z2_semiperfect(make_zmod(6))
    assert is_z2_semiperfect(make_matrix_ring(make_zmod(2), 2))


def test_fields():
    assert is_field(make_zmod(5)) and not is_field(make_zmod(4)) and not is_field(make_zmod(6))


def test_opposite():
    z6 = make_zmod(6)
    op = opposite_ring(z6)
    assert np.array_equal(op.mul, z6.mul)
    t = make_triangular(make_zmod(2), 2)
    assert np.array_equal(opposite_ring(opposite_ring(t)).mul, t.mul)


def test_validation_names_axiom_and_tuple():
    add, mul = brute.zmod_tables(3)
    bad = [row[:] for row in mul]
    bad[2][2] = 2  # 2*2 should be 1
    with pytest.raises(ValidationError) as exc:
        RingTable(add, bad, one=1)
    assert "distributivity" in str(exc.value) or "associativity" in str(exc.value)
    with pytest.raises(ValidationError):
        RingTable(add, mul, one=2)


rings = st.recursive(
    st.sampled_from([1, 2, 3, 4]).map(make_zmod),
    lambda inner: st.one_of(
        st.tuples(inner, inner).filter(lambda p: p[0].order * p[1].order <= 16).map(lambda p: make_product(*p)),
        inner.filter(lambda r: r.order <= 2).map(lambda r: make_triangular(r, 2)),
        inner.map(opposite_ring),
    ),
    max_leaves=3,
)


@settings(max_examples=25, deadline=None)
@given(rings)
def test_constructed_rings_satisfy_axioms(r):
    assert brute.ring_axioms_hold(r.add.tolist(), r.mul.tolist(), r.one)
    ideals = brute.right_ideals(r.add.tolist(), r.mul.tolist()) if r.order <= 8 else None
    if ideals is not None:
        assert ideal_sets(r) == sorted(ideals)
