from itertools import combinations

import pytest

from higher_tamari.crosssection import g
from higher_tamari.errors import WitnessError
from higher_tamari.ground import Subset, interweaves_mask, is_separated_collection
from higher_tamari.simplicial import (
    apply_flip,
    enumerate_hst,
    flip_between,
    internal_simplices,
    lower_triangulation,
    upper_triangulation,
)
from higher_tamari.witness import (
    CoordinateVector,
    I_sets,
    U_of,
    build_Q_T,
    even_fullness_chain,
    exchange_lattice,
    i_set_masks,
    fullness_witness,
    i_prime_count,
    lattice_linear_extension,
    membrane_chain,
    odd_preimage,
    phi,
    phi_inverse,
    psi,
    psi_inverse,
    schedule_for_flip,
)
from higher_tamari.zonotopal import (
    bruhat_enumeration,
    exchange_between,
    internal_size,
    inversion_set_of,
    lower_cubillage,
    upper_cubillage,
    validate_cubillage,
)

from conftest import S, labels, tri_from_e

HEPTAGON_ISP = {
    "13", "16", "35", "36",
    "126", "134", "136", "346", "356", "367",
    "1236", "1345", "1346", "1367", "3467", "3567",
    "12346", "13456", "13467", "13567",
}
HEPTAGON_ISP_AFTER = {
    "16", "26", "35", "36",
    "126", "236", "267", "346", "356", "367",
    "1236", "1367", "2346", "2367", "3467", "3567",
    "12346", "13467", "13567", "23467",
}
PSI_1236 = {"13": "26", "134": "236", "136": "267", "1345": "2346", "1346": "2367", "13456": "23467"}
PHI_1236 = {
    (1, 0, 1, 0): "13", (1, 0, 2, 0): "134", (1, 0, 1, 1): "136", (1, 0, 3, 0): "1345",
    (1, 0, 2, 1): "1346", (1, 0, 3, 1): "13456", (0, 1, 0, 1): "26", (0, 1, 1, 1): "236",
    (0, 1, 0, 2): "267", (0, 1, 2, 1): "2346", (0, 1, 1, 2): "2367", (0, 1, 2, 2): "23467",
}
OCTAGON_PAIRS = {
    ("1256", "1357"), ("1357", "3478"), ("135", "347"), ("157", "378"), ("13567", "34578"),
    ("12357", "13478"), ("156", "357"), ("12356", "13457"), ("125", "137"), ("12567", "13578"),
}


def test_hexagon_u(hexagon):
    u = U_of(hexagon)
    assert labels(u) == {"13", "15", "35", "134", "125", "356", "135", "1345", "1235", "1356"}
    assert len(u) == internal_size(6, 2) == 10
    assert is_separated_collection(u, 2)[0]
    q = build_Q_T(hexagon)
    assert labels(q.internal_spectrum) == labels(u)
    assert g(q) == hexagon


def test_heptagon_spectra(heptagon):
    q = build_Q_T(heptagon)
    assert labels(q.internal_spectrum) == HEPTAGON_ISP
    t2 = apply_flip(heptagon, S(7, "1236"))
    assert labels(internal_simplices(t2)) == {"16", "26", "35", "36"}
    assert labels(build_Q_T(t2).internal_spectrum) == HEPTAGON_ISP_AFTER


def test_lower_triangulation_gives_lower_cubillage():
    for n, d in [(5, 2), (6, 2), (7, 4)]:
        assert build_Q_T(lower_triangulation(n, d)) == lower_cubillage(n, d)


def test_q_t_not_monotone_when_flip_misses_one():
    # pentagon flip at 2345: inv(Q_T) holds 1234 but inv(Q_T') does not
    t = tri_from_e(5, 2, ["24", "25"])
    t2 = apply_flip(t, S(5, "2345"))
    q, q2 = build_Q_T(t), build_Q_T(t2)
    assert labels(inversion_set_of(q).members) - labels(inversion_set_of(q2).members) == {"1234"}
    with pytest.raises(WitnessError):
        even_fullness_chain(t, t2)
    sched, method = fullness_witness(t, t2)
    assert method == "fibre-search" and sched.start == q and g(sched.end) == t2
    assert [(str(a), str(b)) for a, b in sched.steps] == [("24", "35")]
    # the upper triangulation's Q_T is not the top of the order either
    assert build_Q_T(upper_triangulation(5, 2)) != upper_cubillage(5, 2)


def test_i_sets_heptagon():
    i = I_sets(S(7, "1236"), 7)
    assert labels(i.lower) == {"13", "134", "136", "1345", "1346", "13456"}
    assert labels(i.upper) == {"26", "236", "267", "2346", "2367", "23467"}
    assert i.lower_closed == i.lower and i.upper_closed == i.upper
    assert i_prime_count(S(7, "1236"), 7) == 6


def test_i_sets_octagon():
    i = I_sets(S(8, "1357"), 8)
    assert len(i.lower_closed) == len(i.upper_closed) == 16
    assert labels(i.lower_closed - i.lower) == {"1357"}
    assert labels(i.upper_closed - i.upper) == {"1357"}


def test_phi_table():
    s = (1, 2, 3, 6)
    for coords, name in PHI_1236.items():
        assert str(phi(CoordinateVector(7, s, coords))) == name
        assert phi_inverse(S(7, name), s).coords == coords


def test_psi_table():
    for a, b in PSI_1236.items():
        assert str(psi(S(7, a), S(7, "1236"))) == b
        assert str(psi_inverse(S(7, b), S(7, "1236"))) == a


def test_psi_octagon():
    assert str(psi(S(8, "1256"), S(8, "1357"))) == "3478"


def test_heptagon_lattice():
    lat = exchange_lattice(S(7, "1236"), 7)
    assert len(lat) == 6
    names = [str(x) for x in lat.elements]
    assert str(lat.elements[lat.minimal()[0]]) == "1345"
    assert str(lat.elements[lat.maximal()[0]]) == "136"
    covers = {(names[i], names[j]) for i, j in lat.covers}
    assert covers == {
        ("1345", "134"), ("1345", "13456"), ("134", "13"), ("134", "1346"),
        ("13456", "1346"), ("13", "136"), ("1346", "136"),
    }


def test_octagon_lattice():
    lat = exchange_lattice(S(8, "1357"), 8)
    assert len(lat) == 16
    assert str(lat.elements[lat.minimal()[0]]) == "1256"
    assert str(lat.elements[lat.maximal()[0]]) == "1357"


def test_single_point_lattice():
    # all gaps of 1234 in [4] are 1, so the lattice is the single point (1,0,1,0)
    lat = exchange_lattice(S(4, "1234"), 4)
    assert len(lat) == 1
    sched = schedule_for_flip(lower_triangulation(4, 2), S(4, "1234"))
    assert [(str(a), str(b)) for a, b in sched.steps] == [("13", "24")]


def test_heptagon_schedule(heptagon):
    sched = schedule_for_flip(heptagon, S(7, "1236"))
    assert [(str(a), str(b)) for a, b in sched.steps] == [
        ("1345", "2346"), ("134", "236"), ("13", "26"), ("13456", "23467"), ("1346", "2367"), ("136", "267"),
    ]
    for q in sched.replay():
        assert validate_cubillage(q)
    assert lattice_linear_extension((1, 2, 3, 6), 7) == [
        (1, 0, 3, 0), (1, 0, 2, 0), (1, 0, 1, 0), (1, 0, 3, 1), (1, 0, 2, 1), (1, 0, 1, 1),
    ]


def test_octagon_schedule(octagon):
    sched = schedule_for_flip(octagon, S(8, "1357"))
    pairs = [(str(a), str(b)) for a, b in sched.steps]
    assert len(pairs) == 16
    assert pairs[0] == ("1256", "1357") and pairs[-1] == ("1357", "3478")
    assert OCTAGON_PAIRS <= set(pairs)
    sched.replay()


@pytest.mark.parametrize("n,delta", [(5, 2), (6, 2), (7, 4)])
def test_every_cover_schedule_with_one_in_flip(n, delta):
    s = enumerate_hst(n, delta)
    for i, j in s.covers:
        t, t2 = s.elements[i], s.elements[j]
        f = flip_between(t, t2)
        if not f & 1:
            continue
        sched = even_fullness_chain(t, t2)
        sets = I_sets(Subset(n, f), n)
        assert len(sched) == len((sets.lower_closed | sets.upper_closed) - sets.upper)
        assert sched.start == build_Q_T(t) and sched.end == build_Q_T(t2)


@pytest.mark.parametrize("n,delta", [(5, 2), (6, 2), (6, 3), (7, 3)])
def test_fullness_witness_every_cover(n, delta):
    s = enumerate_hst(n, delta)
    for i, j in s.covers:
        t, t2 = s.elements[i], s.elements[j]
        sched, method = fullness_witness(t, t2)
        sched.replay()
        assert g(sched.start) == t and g(sched.end) == t2
        if delta % 2 == 0:
            assert (method == "coordinate") == bool(flip_between(t, t2) & 1)


def test_schedule_rejects_non_cover():
    s = enumerate_hst(6, 2)
    with pytest.raises(ValueError):
        even_fullness_chain(s.elements[0], s.elements[0])


@pytest.mark.parametrize("n", [5, 6])
def test_odd_preimages(n):
    for t in enumerate_hst(n, 3).elements:
        q = odd_preimage(t)
        assert validate_cubillage(q) and g(q) == t
    assert odd_preimage(lower_triangulation(n, 3)) == lower_cubillage(n, 3)
    assert odd_preimage(upper_triangulation(n, 3)) == upper_cubillage(n, 3)


def test_odd_preimage_needs_odd():
    with pytest.raises(ValueError):
        odd_preimage(lower_triangulation(6, 2))


@pytest.mark.parametrize("colour,orientation", [(5, "decreasing"), (1, "increasing")])
def test_membranes_of_b53_covers(colour, orientation):
    b = bruhat_enumeration(5, 2).poset
    for i, j in b.covers:
        mc = membrane_chain([b.elements[i], b.elements[j]], colour)
        assert mc.orientation == orientation
        assert 1 <= len(mc.membranes) <= 2


def test_membrane_of_maximal_chain():
    b = bruhat_enumeration(5, 2).poset
    chain = [b.minimal()[0]]
    while b.upper_covers(chain[-1]):
        chain.append(b.upper_covers(chain[-1])[0])
    mc = membrane_chain([b.elements[k] for k in chain], 5)
    for a, c in zip(mc.membranes, mc.membranes[1:]):
        assert exchange_between(c, a) is not None


def test_single_membrane():
    mc = membrane_chain([lower_cubillage(5, 2)])
    assert len(mc.membranes) == 1


def test_membrane_chain_rejects_gaps():
    b = bruhat_enumeration(5, 2).poset
    with pytest.raises(ValueError):
        membrane_chain([b.elements[b.minimal()[0]], b.elements[b.maximal()[0]]])


def test_witness_error_is_runtime():
    assert issubclass(WitnessError, RuntimeError)


def _coordinate_criterion(cx, cy):
    return all(cy[k] < cx[k] if k % 2 == 0 else cx[k] < cy[k] for k in range(len(cx)))


@pytest.mark.parametrize("n,d", [(6, 1), (7, 1), (7, 2), (8, 2)])
def test_coordinate_interweaving_criterion_when_flip_contains_one(n, d):
    for s in combinations(range(1, n + 1), 2 * d + 2):
        if s[0] != 1:
            continue
        _, _, il2, iu2 = i_set_masks(s, n)
        pts = [(m, phi_inverse(Subset(n, m), s).coords) for m in il2 | iu2]
        for x, cx in pts:
            for y, cy in pts:
                if x != y:
                    assert _coordinate_criterion(cx, cy) == interweaves_mask(x, y, 2 * d)


def test_coordinate_interweaving_criterion_breaks_on_wrapped_interval():
    # S = 2345 in [5]: the last interval of 135 is {5, 1}, wrapping past n
    s = (2, 3, 4, 5)
    a, b, c = S(5, "245"), S(5, "135"), S(5, "24")
    assert phi_inverse(a, s).coords == (1, 0, 1, 1)
    assert phi_inverse(b, s).coords == (0, 1, 0, 2)
    assert _coordinate_criterion((1, 0, 1, 1), (0, 1, 0, 2))
    assert not interweaves_mask(a.mask, b.mask, 2)
    assert not _coordinate_criterion((0, 1, 0, 2), (1, 0, 1, 0))
    assert interweaves_mask(b.mask, c.mask, 2)


@pytest.mark.parametrize("n,delta", [(5, 2), (6, 2), (7, 2), (7, 4)])
def test_u_flip_update(n, delta):
    s = enumerate_hst(n, delta)
    for i, j in s.covers:
        t, t2 = s.elements[i], s.elements[j]
        sets = I_sets(Subset(n, flip_between(t, t2)), n)
        assert U_of(t2) == (U_of(t) - sets.lower) | sets.upper


def test_membranes_of_b63_covers():
    b = bruhat_enumeration(6, 2).poset
    for i, j in b.covers:
        mc = membrane_chain([b.elements[i], b.elements[j]])
        for x, y in zip(mc.membranes, mc.membranes[1:]):
            assert exchange_between(y, x) is not None
