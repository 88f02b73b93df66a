import pytest

from higher_tamari.crosssection import (
    describe,
    g,
    g_bar,
    g_bar_by_internal,
    g_bar_by_visibility,
    g_bar_with_audit,
    g_by_internal,
    g_by_visibility,
    g_containment_check,
    g_with_audit,
)
from higher_tamari.ground import Subset
from higher_tamari.simplicial import Triangulation, internal_simplices, lower_triangulation, upper_triangulation
from higher_tamari.witness import build_Q_T
from higher_tamari.zonotopal import bruhat_enumeration, lower_cubillage, upper_cubillage

from conftest import labels


def test_g_on_small_examples(q1, q2):
    t1 = g(q1)
    assert describe(t1) == "{13,34}"
    assert labels(internal_simplices(t1)) == {"3"}
    assert describe(g(q2)) == "{123,134}"


def test_audit_record(q1):
    res = g_with_audit(q1)
    assert res.triangulation == g(q1)
    assert labels(Subset(4, m) for m in res.source_internal) == {"3"}
    assert res.to_json()["visible"] == [[1, 3], [3, 4]]


def test_containment(q1, hexagon):
    assert g_containment_check(q1, g(q1))
    assert not g_containment_check(q1, upper_triangulation(4, 1))
    assert g_containment_check(build_Q_T(hexagon), hexagon)


@pytest.mark.parametrize("n,delta", [(5, 2), (6, 2), (7, 2), (6, 4), (6, 1), (6, 3)])
def test_extremes(n, delta):
    assert g(lower_cubillage(n, delta)) == lower_triangulation(n, delta)
    assert g(upper_cubillage(n, delta)) == upper_triangulation(n, delta)
    assert g_bar(upper_cubillage(n, delta)) == lower_triangulation(n, delta)
    assert g_bar(lower_cubillage(n, delta)) == upper_triangulation(n, delta)


def test_g_bar_of_q2(q2):
    assert describe(g_bar(q2)) == "{124,234}"


def test_single_cubillage_of_top_dimension():
    q = lower_cubillage(5, 4)
    assert g(q) == Triangulation.from_simplices(5, 4, [[1, 2, 3, 4, 5]])


@pytest.mark.parametrize("n,delta", [(4, 1), (5, 1), (6, 1), (5, 2), (6, 2), (5, 3), (6, 3), (6, 4)])
def test_three_characterisations_agree(n, delta):
    e = bruhat_enumeration(n, delta)
    for q in e.poset.elements:
        g_with_audit(q)
        g_bar_with_audit(q)


def test_characterisations_agree_b72_fast_paths():
    # visibility is driven by the inversion sets recorded during enumeration
    from higher_tamari.zonotopal import visibility

    e = bruhat_enumeration(7, 2)
    for q, inv in zip(e.poset.elements, e.inversions):
        t = g(q)
        vis, covis = visibility(inv)
        assert t.masks == frozenset(s.mask for s in vis)
        assert t == g_by_internal(q)
        assert g_bar(q).masks == frozenset(s.mask for s in covis)


def test_named_variants_agree(q1):
    assert g_by_visibility(q1) == g_by_internal(q1) == g(q1)
    assert g_bar_by_visibility(q1) == g_bar_by_internal(q1) == g_bar(q1)


def test_delta_zero_rejected():
    with pytest.raises(ValueError):
        g(lower_cubillage(4, 0))
