"""The cross-section map g from cubillages to triangulations, and its dual.

Three equivalent readings of g are provided:

* cubes: simplices are generator sets of cubes with initial vertex the empty set
  (equivalently, (delta+1)-sets all of whose subsets lie in the spectrum);
* internal spectrum: the internal floor(delta/2)-simplices are the spectrum
  members of that size, and the triangulation is rebuilt from them;
* visibility: simplices are the visible sets of the inversion set.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidObjectError
from .ground import Subset, full_mask, is_internal_point_mask, lex_key, mask_str, simplex_face_size, submasks, subsets_of_size
from .simplicial import Triangulation, triangulation_from_internal
from .zonotopal import Cubillage, inversion_set_of, visibility


@dataclass(frozen=True)
class CrossSectionResult:
    triangulation: Triangulation
    source_internal: frozenset
    visible: frozenset

    def to_json(self) -> dict:
        n = self.triangulation.n
        return {
            "triangulation": {
                "n": n,
                "delta": self.triangulation.delta,
                "simplices": [s.to_list() for s in self.triangulation.simplices],
            },
            "source_internal": sorted([Subset(n, m).to_list() for m in self.source_internal]),
            "visible": sorted([Subset(n, m).to_list() for m in self.visible]),
        }


def _check(q: Cubillage):
    if q.delta < 1:
        raise ValueError("the cross-section needs delta >= 1")


def _full_cube_at(bits: int, base: int, gens: int) -> bool:
    return all(bits >> (base | s) & 1 for s in submasks(gens))


def g_by_cubes(q: Cubillage) -> Triangulation:
    """Simplices: (delta+1)-sets I whose whole power set lies in the spectrum."""
    _check(q)
    simp = [i for i in subsets_of_size(q.n, q.delta + 1) if _full_cube_at(q.bits, 0, i)]
    return Triangulation(q.n, q.delta, frozenset(simp))


def cross_section_internal(q: Cubillage) -> frozenset:
    """Internal spectrum members of size floor(delta/2)+1."""
    k = simplex_face_size(q.delta)
    return frozenset(m for m in q.internal_masks() if m.bit_count() == k)


def g_by_internal(q: Cubillage) -> Triangulation:
    """Rebuild g(Q) from the internal spectrum of the right size."""
    _check(q)
    return triangulation_from_internal(q.n, q.delta, cross_section_internal(q))


def g_by_visibility(q: Cubillage) -> Triangulation:
    """Simplices: visible sets of the inversion set of ``q``."""
    _check(q)
    vis, _ = visibility(inversion_set_of(q))
    return Triangulation(q.n, q.delta, frozenset(s.mask for s in vis))


def g(q: Cubillage) -> Triangulation:
    """The first cross-section of ``q``, a triangulation of C(n, delta)."""
    return g_by_cubes(q)


def g_with_audit(q: Cubillage) -> CrossSectionResult:
    """Compute g three ways and fail loudly if they disagree."""
    t = g_by_cubes(q)
    t2 = g_by_internal(q)
    t3 = g_by_visibility(q)
    if not (t == t2 == t3):
        raise InvalidObjectError(
            f"characterisations of g disagree on {q}: {t} / {t2} / {t3}"
        )
    return CrossSectionResult(t, cross_section_internal(q), frozenset(t3.masks))


def g_containment_check(q: Cubillage, t: Triangulation) -> bool:
    """Whether every face of every simplex of ``t`` is in the spectrum of ``q``."""
    if (q.n, q.delta) != (t.n, t.delta):
        raise ValueError(f"dimension mismatch: Z({q.n},{q.dim}) vs C({t.n},{t.delta})")
    return all(q.bits >> f & 1 for f in t.faces())


def g_bar_by_cubes(q: Cubillage) -> Triangulation:
    """Simplices: generator sets of cubes whose final vertex is [n]."""
    _check(q)
    full = full_mask(q.n)
    simp = [a for a in subsets_of_size(q.n, q.delta + 1) if _full_cube_at(q.bits, full & ~a, a)]
    return Triangulation(q.n, q.delta, frozenset(simp))


def g_bar_internal(q: Cubillage) -> frozenset:
    """Complements of the internal spectrum members of size n - floor(delta/2) - 1."""
    k = q.n - simplex_face_size(q.delta)
    full = full_mask(q.n)
    out = set()
    for m in q.internal_masks():
        if m.bit_count() == k:
            c = full & ~m
            if is_internal_point_mask(c, q.n, q.delta):
                out.add(c)
    return frozenset(out)


def g_bar_by_internal(q: Cubillage) -> Triangulation:
    _check(q)
    return triangulation_from_internal(q.n, q.delta, g_bar_internal(q))


def g_bar_by_visibility(q: Cubillage) -> Triangulation:
    _check(q)
    _, covis = visibility(inversion_set_of(q))
    return Triangulation(q.n, q.delta, frozenset(s.mask for s in covis))


def g_bar(q: Cubillage) -> Triangulation:
    """The dual cross-section, read at the top vertex [n]."""
    return g_bar_by_cubes(q)


def g_bar_with_audit(q: Cubillage) -> CrossSectionResult:
    t = g_bar_by_cubes(q)
    t2 = g_bar_by_internal(q)
    t3 = g_bar_by_visibility(q)
    if not (t == t2 == t3):
        raise InvalidObjectError(
            f"characterisations of g_bar disagree on {q}: {t} / {t2} / {t3}"
        )
    return CrossSectionResult(t, g_bar_internal(q), frozenset(t3.masks))


def describe(t: Triangulation) -> str:
    return "{" + ",".join(mask_str(m, t.n) for m in sorted(t.masks, key=lex_key)) + "}"
