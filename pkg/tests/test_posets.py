import pytest

from higher_tamari.errors import QuotientError
from higher_tamari.oracles import tamari_lattice
from higher_tamari.posets import (
    FinitePoset,
    PosetMap,
    analyze_map,
    antichain,
    chain,
    is_isomorphic,
    quotient,
)
from higher_tamari.simplicial import enumerate_hst
from higher_tamari.crosssection import g
from higher_tamari.zonotopal import enumerate_bruhat


def test_chain_closure():
    c = chain(3)
    assert c.leq(0, 2) and not c.leq(2, 0)


def test_antichain_only_reflexive():
    a = antichain(3)
    assert all(a.leq(i, j) == (i == j) for i in range(3) for j in range(3))


def test_bruhat_42_has_bottom_and_top():
    b = enumerate_bruhat(4, 1)
    assert len(b.minimal()) == 1 and len(b.maximal()) == 1
    assert all(b.leq(b.minimal()[0], j) for j in range(len(b)))


def test_cyclic_covers_rejected():
    with pytest.raises(ValueError):
        FinitePoset((0, 1), frozenset({(0, 1), (1, 0)})).check()


def test_g_on_b42_is_quotient_map():
    b, s = enumerate_bruhat(4, 1), enumerate_hst(4, 1)
    rep = analyze_map(PosetMap.from_function(b, s, g))
    assert rep.is_order_preserving and rep.is_surjective and rep.is_full and rep.is_quotient_map


def test_constant_map_is_quotient():
    rep = analyze_map(PosetMap(chain(2), chain(1), (0, 0)))
    assert rep.is_quotient_map


def test_antichain_to_chain_not_full():
    rep = analyze_map(PosetMap(antichain(2), chain(2), (0, 1)))
    assert rep.is_order_preserving and rep.is_surjective and not rep.is_full
    assert rep.counterexample[0] == "not full"


def test_quotient_by_fibres_is_s41():
    b, s = enumerate_bruhat(4, 1), enumerate_hst(4, 1)
    idx = {t: k for k, t in enumerate(s.elements)}
    q = quotient(b, [idx[g(x)] for x in b.elements])
    assert is_isomorphic(q, s) is not None


def test_discrete_quotient_is_identity():
    b = enumerate_bruhat(4, 1)
    q = quotient(b, list(range(len(b))))
    assert is_isomorphic(q, b) is not None


def test_antisymmetry_failure():
    p = FinitePoset(("a", "b", "c", "d"), frozenset({(0, 1), (2, 3)}))
    with pytest.raises(QuotientError) as info:
        quotient(p, [[0, 3], [1, 2]])
    assert "antisymmetric" in str(info.value)


def test_isomorphism_examples():
    assert is_isomorphic(chain(3), antichain(3)) is None
    assert is_isomorphic(enumerate_hst(6, 2), tamari_lattice(4)) is not None
    assert is_isomorphic(enumerate_hst(5, 2), tamari_lattice(3)) is not None


def test_isomorphism_returns_order_preserving_bijection():
    s, t = enumerate_hst(6, 2), tamari_lattice(4)
    iso = is_isomorphic(s, t)
    assert sorted(iso.values()) == list(range(len(t)))
    assert {(iso[i], iso[j]) for i, j in s.covers} == set(t.covers)


def test_ranks_and_topological_order():
    s = enumerate_hst(5, 2)
    order = s.topological_order()
    pos = {v: k for k, v in enumerate(order)}
    assert all(pos[i] < pos[j] for i, j in s.covers)
    assert sorted(s.ranks()) == [0, 1, 1, 2, 3]
