import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annigraph.errors import AnnigraphError
from annigraph.modules import (
    Module,
    Submodule,
    annihilators,
    colon_ideal,
    direct_sum_decomposition,
    distinguished_submodules,
    element_colon,
    enumerate_submodules,
    ideal_times_module,
    invariant_factors,
    is_essential_mask,
    is_essential_submodule,
    is_injective,
    is_multiplication,
    module_isomorphic,
    nil_mask,
    prime_intersection_mask,
    radical_mask,
    quotient_module,
    scalar_action,
    socle_mask,
    structure_submodules,
    submodule_generated,
)
from annigraph.rings import Integers, Product, ZMod, principal_ideal, unit_ideal

Z = Integers()


def S(M, *elems):
    return submodule_generated(M, elems)


def labels(mask, M):
    return {M.labels[i] for i in np.flatnonzero(mask)}


# ------------------------------------------------------------ construction


def test_klein_group_order():
    assert Module(Z, [2, 2]).size == 4


def test_factor_must_divide_modulus():
    assert Module(ZMod(12), [4]).size == 4
    with pytest.raises(AnnigraphError):
        Module(ZMod(12), [5])


def test_product_factor_tags_inferred():
    M = Module(Product(2, 4), [2, 4])
    assert M.tags == (0, 1)
    assert str(M) == "Z/2@0 + Z/4@1 over Z/2 x Z/4"


def test_product_tag_must_fit():
    with pytest.raises(AnnigraphError):
        Module(Product(2, 3), [3], [0])


# ---------------------------------------------------------------- action


def test_scalar_action_examples():
    M = Module(Z, [2, 4])
    assert scalar_action(M, 3, (1, 1)) == (1, 3)
    assert all(scalar_action(M, 1, m) == m for m in M.labels)
    assert all(scalar_action(M, M.exponent, m) == (0, 0) for m in M.labels)


def test_submodule_generated_examples():
    K = Module(Z, [2, 2])
    assert set(S(K, (1, 0)).elements) == {(0, 0), (1, 0)}
    assert set(S(Module(Z, [4]), (2,)).elements) == {(0,), (2,)}
    assert S(Module(Z, [2, 4]), (1, 0), (0, 2)).size == 4


def test_colon_examples():
    M = Module(Z, [2, 3])
    assert colon_ideal(S(M, (1, 0))).gens == (3,)
    for p in (2, 3, 5):
        P = Module(Z, [p, p])
        assert colon_ideal(S(P)).gens == (p,)
        assert annihilators(P).gens == (p,)
    assert element_colon(Module(Z, [4]), (2,)).gens == (2,)


def test_ideal_times_module_examples():
    assert set(ideal_times_module(principal_ideal(Z, 2), Module(Z, [4])).elements) == {(0,), (2,)}
    M = Module(Z, [2, 3])
    assert ideal_times_module(principal_ideal(Z, 6), M).size == 1
    assert ideal_times_module(unit_ideal(Z), M).size == M.size


def test_annihilator_examples():
    assert annihilators(Module(Z, [2, 3]), (1, 1)).gens == (6,)
    assert annihilators(Module(Z, [4])).gens == (4,)
    assert annihilators(Module(Z, [4]), (0,)).gens == (1,)


def test_submodule_counts():
    assert len(enumerate_submodules(Module(Z, [2, 2]))) == 5
    assert len(enumerate_submodules(Module(Z, [4]))) == 3
    assert len(enumerate_submodules(Module(Z, [7]))) == 2
    # Z/p^2 + Z/p^2 over Z for p = 2 has 15 subgroups
    assert len(enumerate_submodules(Module(Z, [4, 4]))) == 15


def test_essential_submodule_examples():
    Z4 = Module(Z, [4])
    assert is_essential_submodule(S(Z4, (2,)))
    K = Module(Z, [2, 2])
    assert not is_essential_submodule(S(K, (1, 0)))
    assert is_essential_submodule(S(K, (1, 0), (0, 1)))


def test_structure_z4():
    M = Module(Z, [4])
    st_ = structure_submodules(M)
    assert set(st_.socle.elements) == {(0,), (2,)}
    assert set(st_.radical.elements) == {(0,), (2,)}
    assert st_.nil_set == {(0,), (2,)}
    assert st_.singular_set == set(M.labels)
    assert st_.essoc


def test_structure_klein():
    M = Module(Z, [2, 2])
    st_ = structure_submodules(M)
    assert st_.socle.size == 4
    assert st_.radical.size == 1
    assert st_.nil_set == set(M.labels)
    assert st_.essoc


def test_structure_simple():
    M = Module(Z, [5])
    st_ = structure_submodules(M)
    assert st_.socle.size == 5 and st_.radical.size == 1
    assert st_.nil_set == {(0,)}
    assert st_.essoc


def test_multiplication_examples():
    assert is_multiplication(Module(Z, [4]))
    assert not is_multiplication(Module(Z, [2, 2]))
    assert is_multiplication(Module(Z, [2, 3]))
    assert is_multiplication(Module(Z, [3, 5]))


def test_distinguished_examples():
    mx, _, simple = distinguished_submodules(Module(Z, [4]))
    assert [set(m.elements) for m in mx] == [{(0,), (2,)}] and not simple
    K = Module(Z, [2, 2])
    mx, prime, _ = distinguished_submodules(K)
    assert len(mx) == 3 and all(m in prime for m in mx)
    mx, _, simple = distinguished_submodules(Module(Z, [5]))
    assert [m.size for m in mx] == [1] and simple


def test_quotient_examples():
    Z4 = Module(Z, [4])
    assert quotient_module(Z4, S(Z4, (2,))).size == 2
    K = Module(Z, [2, 2])
    assert quotient_module(K, S(K)).size == 4
    assert quotient_module(K, S(K, (1, 1))).size == 2


def test_injective_examples():
    assert is_injective(Module(ZMod(4), [4]))
    assert not is_injective(Module(ZMod(4), [2]))
    assert is_injective(Module(ZMod(5), [5, 5]))
    assert is_injective(Module(ZMod(6), [2, 3]))


def test_isomorphism_examples():
    assert module_isomorphic(Module(Z, [2, 3]), Module(Z, [6]))
    assert not module_isomorphic(Module(Z, [4]), Module(Z, [2, 2]))
    M = Module(Z, [4, 2])
    soc = Submodule.from_mask(M, socle_mask(M)).as_module()
    assert module_isomorphic(soc, Module(Z, [2, 2]))
    assert invariant_factors(M) == (2, 4)


def test_direct_sum_examples():
    a, b = direct_sum_decomposition(Module(Z, [6]))
    assert {frozenset(a.elements), frozenset(b.elements)} == {
        frozenset({(0,), (3,)}), frozenset({(0,), (2,), (4,)})}
    assert direct_sum_decomposition(Module(Z, [4])) is None
    a, b = direct_sum_decomposition(Module(Z, [2, 2]))
    assert a.size == b.size == 2 and a != b


def test_nil_formula_vs_prime_intersection_klein():
    M = Module(Z, [2, 2])
    assert labels(nil_mask(M), M) == set(M.labels)
    assert labels(prime_intersection_mask(M), M) == {(0, 0)}


# ------------------------------------------------------------ properties


@st.composite
def modules(draw, max_order=32):
    kind = draw(st.sampled_from(["Z", "ZMod", "Product"]))
    if kind == "Z":
        fs = draw(st.lists(st.integers(2, 8), min_size=1, max_size=3))
        ring = Z
        tags = None
    elif kind == "ZMod":
        n = draw(st.sampled_from([4, 6, 8, 9, 12, 16, 18]))
        divs = [d for d in range(2, n + 1) if n % d == 0]
        fs = draw(st.lists(st.sampled_from(divs), min_size=1, max_size=3))
        ring, tags = ZMod(n), None
    else:
        ms = draw(st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 3), (2, 2, 2)]))
        items = [(t, d) for t, n in enumerate(ms) for d in range(2, n + 1) if n % d == 0]
        combo = draw(st.lists(st.sampled_from(items), min_size=1, max_size=3))
        ring, fs, tags = Product(*ms), [d for _, d in combo], [t for t, _ in combo]
    order = 1
    for d in fs:
        order *= d
    if order > max_order:
        fs, tags = fs[:1], (tags[:1] if tags else None)
    return Module(ring, fs, tags)


@settings(max_examples=60, deadline=None)
@given(modules())
def test_module_axioms(M):
    n, nr = M.size, M.acting.size
    i = np.arange(n)
    assert (M.add[0] == i).all() and np.array_equal(M.add, M.add.T)
    assert (M.act[M.acting.one_index] == i).all()
    RA, RM = M.acting.add_table, M.acting.mul_table
    assert np.array_equal(M.act[RA], M.add[M.act[:, None, :], M.act[None, :, :]])
    assert np.array_equal(M.act[RM], M.act[np.arange(nr)[:, None, None], M.act[None, :, :]])
    assert np.array_equal(M.act[:, M.add], M.add[M.act[:, :, None], M.act[:, None, :]])


@settings(max_examples=40, deadline=None)
@given(modules(max_order=24))
def test_radical_and_prime_formulas_match_lattice(M):
    assert np.array_equal(radical_mask(M, "formula"), radical_mask(M, "lattice"))
    assert np.array_equal(prime_intersection_mask(M, "formula"), prime_intersection_mask(M, "lattice"))


@settings(max_examples=40, deadline=None)
@given(modules(max_order=24))
def test_cyclic_shortcuts_match_lattice(M):
    assert is_multiplication(M, "cyclic") == is_multiplication(M, "lattice")
    for s in M.lattice():
        assert is_essential_mask(M, s, "cyclic") == is_essential_mask(M, s, "lattice")


@settings(max_examples=40, deadline=None)
@given(modules(max_order=24))
def test_lattice_is_all_closed_subsets(M):
    lat = {s.tobytes() for s in M.lattice()}
    for s in M.lattice():
        assert Submodule.from_mask(M, s).is_closed()
    if M.size <= 8:
        brute = set()
        for bits in itertools.product([False, True], repeat=M.size - 1):
            mask = np.array((True,) + bits)
            if Submodule.from_mask(M, mask).is_closed():
                brute.add(mask.tobytes())
        assert brute == lat


@settings(max_examples=40, deadline=None)
@given(modules(max_order=24))
def test_colon_definition(M):
    for x in range(M.size):
        for r in range(M.acting.size):
            inside = M.cyclic[x][M.act[r]].all()
            assert M.colon[x, r] == inside


@settings(max_examples=40, deadline=None)
@given(modules(max_order=24))
def test_socle_is_essential_and_semisimple(M):
    soc = socle_mask(M)
    assert is_essential_mask(M, soc)
    assert socle_mask(Submodule.from_mask(M, soc).as_module()).all()


orders_12 = st.sampled_from([[12], [2, 6], [3, 4], [2, 2, 3], [4, 3], [6, 2], [8], [2, 4], [2, 2, 2], [4, 2]])


@settings(max_examples=40, deadline=None)
@given(orders_12, orders_12)
def test_integer_isomorphism_methods_agree(a, b):
    M, N = Module(Z, a), Module(Z, b)
    assert module_isomorphic(M, N) == module_isomorphic(M, N, method="search")


def test_search_handles_different_exponents():
    assert not module_isomorphic(Module(Z, [4]), Module(Z, [2, 2]), method="search")
    assert module_isomorphic(Module(Z, [2, 6]), Module(Z, [6, 2]), method="search")
