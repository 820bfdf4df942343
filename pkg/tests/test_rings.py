import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annigraph.errors import AnnigraphError, NotEnumerableError
from annigraph.rings import (
    Ideal,
    Integers,
    Product,
    ZMod,
    annihilator_ideal,
    enumerate_ideals,
    ideal_arith,
    ideal_from_generators,
    idempotents,
    is_essential_ideal,
    is_regular,
    maximal_ideals,
    minimal_ideals,
    principal_ideal,
    radical_ideals,
    singular_set_ring,
    unit_ideal,
    zero_ideal,
)


def E(*xs):
    return {(x,) for x in xs}


# ------------------------------------------------------------ frozen oracles


def test_zmod6_has_six_elements():
    assert ZMod(6).size == 6


def test_product_2_3_matches_zmod6_under_crt():
    P, Z = Product(2, 3), ZMod(6)
    crt = {a: (a % 2, a % 3) for a in range(6)}
    for a, b in itertools.product(range(6), repeat=2):
        assert P.mul(crt[a], crt[b]) == crt[(a * b) % 6]
        assert P.add(crt[a], crt[b]) == crt[(a + b) % 6]
    assert len(Z.elements) == len(P.elements)


def test_integers_not_enumerable():
    with pytest.raises(NotEnumerableError):
        Integers().elements
    with pytest.raises(NotEnumerableError):
        Integers().size


def test_bad_modulus_rejected():
    with pytest.raises(AnnigraphError):
        ZMod(1)


def test_ideal_from_generators_zmod12():
    I = ideal_from_generators(ZMod(12), [8])
    assert I.elements == E(0, 4, 8)
    assert I.generator == (4,)


def test_ideal_from_generators_integers_gcd():
    assert ideal_from_generators(Integers(), [4, 6]).gens == (2,)


def test_empty_generators_give_zero_ideal():
    I = ideal_from_generators(ZMod(6), [])
    assert I.is_zero and I.elements == E(0)


def test_integer_ideal_arith():
    Z = Integers()
    four, six = principal_ideal(Z, 4), principal_ideal(Z, 6)
    assert ideal_arith(four, six, "product").gens == (24,)
    assert ideal_arith(four, six, "intersection").gens == (12,)
    assert ideal_arith(four, six, "sum").gens == (2,)


def test_zmod12_product_2_6_is_zero():
    R = ZMod(12)
    assert ideal_arith(principal_ideal(R, 2), principal_ideal(R, 6), "product").is_zero


def test_ideal_counts():
    assert len(enumerate_ideals(ZMod(12))) == 6
    assert len(enumerate_ideals(ZMod(7))) == 2
    assert len(enumerate_ideals(Product(2, 2))) == 4


def test_essential_examples():
    assert is_essential_ideal(principal_ideal(Integers(), 6))
    assert not is_essential_ideal(principal_ideal(Integers(), 0))
    R = ZMod(12)
    assert not is_essential_ideal(principal_ideal(R, 6))
    assert not is_essential_ideal(zero_ideal(R))
    assert is_essential_ideal(unit_ideal(R))
    assert is_essential_ideal(principal_ideal(R, 2))


def test_radicals_zmod12():
    nil, jac, soc = radical_ideals(ZMod(12))
    assert (nil.gens, jac.gens, soc.gens) == ((6,), (6,), (2,))


def test_radicals_field_and_integers():
    nil, jac, soc = radical_ideals(ZMod(5))
    assert nil.is_zero and jac.is_zero and soc.is_unit
    assert all(I.is_zero for I in radical_ideals(Integers()))


def test_regularity():
    assert is_regular(ZMod(6))
    assert not is_regular(ZMod(4))
    assert is_regular(ZMod(5))
    assert is_regular(Product(2, 3, 5))
    assert not is_regular(Product(2, 4))


def test_singular_sets():
    assert singular_set_ring(ZMod(12)) == E(0, 6)
    assert singular_set_ring(ZMod(4)) == E(0, 2)
    assert singular_set_ring(Integers()) == {0}


def test_idempotents():
    assert idempotents(ZMod(6)) == E(0, 1, 3, 4)
    assert idempotents(ZMod(4)) == E(0, 1)
    assert idempotents(ZMod(7)) == E(0, 1)


def test_maximal_minimal_zmod36():
    assert sorted(I.gens for I in maximal_ideals(ZMod(36))) == [(2,), (3,)]
    assert sorted(I.gens for I in minimal_ideals(ZMod(36))) == [(12,), (18,)]


def test_ideal_string_forms():
    assert str(principal_ideal(ZMod(12), 8)) == "(4)"
    assert str(principal_ideal(Integers(), -6)) == "6Z"
    assert str(principal_ideal(Product(2, 4), (1, 2))) == "(1, 2)"


def test_noncanonical_generator_rejected():
    with pytest.raises(AnnigraphError):
        Ideal(ZMod(12), (5,))


# ------------------------------------------------------------ properties

moduli = st.integers(min_value=2, max_value=30)
product_moduli = st.lists(st.integers(min_value=2, max_value=6), min_size=1, max_size=3)


def _closure(R, gens):
    """Ideal generated by ``gens`` by brute force."""
    cur = {R.zero}
    frontier = [R.coerce(g) for g in gens]
    while frontier:
        x = frontier.pop()
        if x in cur:
            continue
        cur.add(x)
        frontier += [R.add(x, y) for y in list(cur)] + [R.mul(x, r) for r in R.elements]
    return cur


@settings(max_examples=60, deadline=None)
@given(moduli, st.lists(st.integers(0, 100), max_size=3))
def test_generated_ideal_matches_closure(n, gens):
    R = ZMod(n)
    I = ideal_from_generators(R, gens)
    assert I.elements == _closure(R, gens)
    assert n % I.gens[0] == 0
    assert ideal_from_generators(R, [I.generator]) == I


@settings(max_examples=60, deadline=None)
@given(product_moduli, st.data())
def test_ideal_laws(ms, data):
    R = Product(*ms) if len(ms) > 1 else ZMod(ms[0])
    ideals = enumerate_ideals(R)
    I = data.draw(st.sampled_from(ideals))
    J = data.draw(st.sampled_from(ideals))
    assert ideal_arith(I, unit_ideal(R), "product") == I
    assert ideal_arith(I, I, "intersection") == I
    prod_ = ideal_arith(I, J, "product")
    meet = ideal_arith(I, J, "intersection")
    join = ideal_arith(I, J, "sum")
    assert prod_ <= meet <= I <= join
    assert meet.elements == I.elements & J.elements
    brute = _closure(R, [R.mul(a, b) for a in I.elements for b in J.elements])
    assert prod_.elements == brute


@settings(max_examples=40, deadline=None)
@given(product_moduli)
def test_essential_methods_agree(ms):
    R = Product(*ms)
    for I in enumerate_ideals(R):
        assert is_essential_ideal(I, "principal") == is_essential_ideal(I, "lattice")


@settings(max_examples=40, deadline=None)
@given(moduli)
def test_regular_iff_squarefree(n):
    squarefree = all(n % (p * p) for p in range(2, n + 1))
    assert is_regular(ZMod(n)) == squarefree


@settings(max_examples=40, deadline=None)
@given(moduli)
def test_annihilator_ideal(n):
    R = ZMod(n)
    for r in range(n):
        ann = annihilator_ideal(R, r)
        assert ann.elements == {(s,) for s in range(n) if (r * s) % n == 0}
        assert ann.gens == (n // gcd(n, r),)
