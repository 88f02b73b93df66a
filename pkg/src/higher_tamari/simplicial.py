"""Triangulations of cyclic polytopes C(n, delta) and their increasing flips.

Points sit on the moment curve at parameters t_i = i, so every geometric
question reduces to subset combinatorics: Gale evenness for facets,
interweaving for circuits and Vandermonde products for volumes.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Optional

from .errors import EnumerationLimitError, InvalidObjectError
from .ground import (
    Subset,
    has_circuit_between,
    is_even_mask,
    is_internal_point_mask,
    is_odd_mask,
    lex_key,
    mask_of,
    mask_str,
    members_of,
    simplex_face_size,
    subsets_of_size,
)
from .posets import FinitePoset


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of C(n, delta), stored as its maximal simplices."""

    n: int
    delta: int
    masks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "masks", frozenset(self.masks))

    @classmethod
    def from_simplices(cls, n: int, delta: int, simplices: Iterable) -> "Triangulation":
        masks = []
        for s in simplices:
            if isinstance(s, Subset):
                masks.append(s.mask)
            elif isinstance(s, int):
                masks.append(s)
            else:
                masks.append(mask_of(s))
        return cls(n, delta, frozenset(masks))

    @property
    def simplices(self) -> list[Subset]:
        return [Subset(self.n, m) for m in sorted(self.masks, key=lex_key)]

    def key(self) -> tuple:
        return tuple(sorted(self.masks, key=lex_key))

    def label(self) -> str:
        return "{" + ",".join(mask_str(m, self.n) for m in self.key()) + "}"

    def __str__(self):
        return self.label()

    def faces(self) -> set[int]:
        """Every face of every maximal simplex, including the empty face."""
        out = set()
        for m in self.masks:
            sub = m
            while True:
                out.add(sub)
                if not sub:
                    break
                sub = (sub - 1) & m
        return out


@dataclass(frozen=True)
class FlipDescriptor:
    """The (delta+2)-set of an increasing flip with its lower and upper facets."""

    s: Subset
    removed: frozenset
    added: frozenset

    def __str__(self):
        return f"flip@{self.s}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    reason: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.valid


# ---------------------------------------------------------------- canonical triangulations


def _check_dims(n: int, delta: int):
    if delta < 1:
        raise ValueError(f"delta must be positive, got {delta}")
    if n < delta + 1:
        raise ValueError(f"C({n},{delta}) needs n >= delta+1")


def lower_triangulation(n: int, delta: int) -> Triangulation:
    """Simplices are the even (delta+1)-subsets of [n]."""
    _check_dims(n, delta)
    return Triangulation(n, delta, frozenset(m for m in subsets_of_size(n, delta + 1) if is_even_mask(m, n)))


def upper_triangulation(n: int, delta: int) -> Triangulation:
    """Simplices are the odd (delta+1)-subsets of [n]."""
    _check_dims(n, delta)
    return Triangulation(n, delta, frozenset(m for m in subsets_of_size(n, delta + 1) if is_odd_mask(m, n)))


def boundary_facets(n: int, delta: int) -> list[int]:
    """Facets of C(n, delta): delta-subsets that are even or odd."""
    return [m for m in subsets_of_size(n, delta) if is_even_mask(m, n) or is_odd_mask(m, n)]


def internal_simplex_masks(t: Triangulation) -> frozenset:
    k = simplex_face_size(t.delta)
    out = set()
    for m in t.masks:
        for c in combinations(members_of(m), k):
            f = mask_of(c)
            if is_internal_point_mask(f, t.n, t.delta):
                out.add(f)
    return frozenset(out)


def internal_simplices(t: Triangulation) -> frozenset:
    """The internal floor(delta/2)-simplices of ``t``."""
    return frozenset(Subset(t.n, m) for m in internal_simplex_masks(t))


def internal_label(t: Triangulation) -> str:
    ms = sorted(internal_simplex_masks(t), key=lex_key)
    return "{" + ",".join(mask_str(m, t.n) for m in ms) + "}"


# ---------------------------------------------------------------- flips


def flip_facets(s: int, delta: int) -> tuple[list[int], list[int]]:
    """Lower and upper facets of the simplex |s| for a (delta+2)-set s.

    Dropping the element at position i (from the bottom) leaves a single
    gap with delta+1-i elements above it; even means lower.
    """
    els = members_of(s)
    if len(els) != delta + 2:
        raise ValueError(f"flip simplex needs {delta + 2} elements, got {len(els)}")
    lower, upper = [], []
    for i, e in enumerate(els):
        facet = s & ~(1 << (e - 1))
        (lower if (delta + 1 - i) % 2 == 0 else upper).append(facet)
    return lower, upper


def flip_descriptor(n: int, s: int, delta: int) -> FlipDescriptor:
    lower, upper = flip_facets(s, delta)
    return FlipDescriptor(
        Subset(n, s),
        frozenset(Subset(n, m) for m in lower),
        frozenset(Subset(n, m) for m in upper),
    )


def flip_masks(t: Triangulation) -> list[tuple[int, frozenset]]:
    """All (s, new simplex set) pairs for increasing flips of ``t``."""
    n, delta, masks = t.n, t.delta, t.masks
    seen = set()
    out = []
    for f in sorted(masks, key=lex_key):
        for e in range(1, n + 1):
            bit = 1 << (e - 1)
            if f & bit:
                continue
            s = f | bit
            if s in seen:
                continue
            seen.add(s)
            lower, upper = flip_facets(s, delta)
            if all(m in masks for m in lower):
                out.append((s, (masks - frozenset(lower)) | frozenset(upper)))
    out.sort(key=lambda p: lex_key(p[0]))
    return out


def increasing_flips(t: Triangulation) -> list[tuple[FlipDescriptor, Triangulation]]:
    """Every cover of ``t`` in the higher Stasheff-Tamari order."""
    return [
        (flip_descriptor(t.n, s, t.delta), Triangulation(t.n, t.delta, new))
        for s, new in flip_masks(t)
    ]


def apply_flip(t: Triangulation, s: Subset | int) -> Triangulation:
    sm = s.mask if isinstance(s, Subset) else s
    lower, upper = flip_facets(sm, t.delta)
    missing = [m for m in lower if m not in t.masks]
    if missing:
        raise InvalidObjectError(
            f"no increasing flip at {mask_str(sm, t.n)}: lower facet {mask_str(missing[0], t.n)} absent"
        )
    return Triangulation(t.n, t.delta, (t.masks - frozenset(lower)) | frozenset(upper))


def flip_between(t: Triangulation, t2: Triangulation) -> Optional[int]:
    """The flip set s with t2 = flip of t at s, or None if t2 does not cover t."""
    if (t.n, t.delta) != (t2.n, t2.delta):
        return None
    gone = t.masks - t2.masks
    new = t2.masks - t.masks
    s = 0
    for m in gone | new:
        s |= m
    if s.bit_count() != t.delta + 2:
        return None
    lower, upper = flip_facets(s, t.delta)
    if gone == frozenset(lower) and new == frozenset(upper):
        return s
    return None


# ---------------------------------------------------------------- validation


def vandermonde(mask: int) -> int:
    """delta! times the volume of |mask| on the moment curve at t_i = i."""
    els = members_of(mask)
    return prod(b - a for a, b in combinations(els, 2))


def total_volume(masks: Iterable[int]) -> int:
    return sum(vandermonde(m) for m in masks)


def validate(t: Triangulation) -> ValidationReport:
    """Check simplex sizes, circuits, exact volume and facet coverage."""
    n, delta = t.n, t.delta
    try:
        _check_dims(n, delta)
    except ValueError as exc:
        return ValidationReport(False, "dimensions", str(exc))
    for m in t.masks:
        if m.bit_count() != delta + 1 or m >> n:
            return ValidationReport(False, "shape", f"{mask_str(m, n)} is not a {delta + 1}-subset of [{n}]")
    ms = sorted(t.masks, key=lex_key)
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if has_circuit_between(a, b, delta) or has_circuit_between(b, a, delta):
                return ValidationReport(
                    False, "circuit", f"{mask_str(a, n)} and {mask_str(b, n)} contain opposite halves of a circuit"
                )
    for f in boundary_facets(n, delta):
        if not any(f & ~m == 0 for m in ms):
            return ValidationReport(False, "facet", f"boundary facet {mask_str(f, n)} uncovered")
    want = total_volume(lower_triangulation(n, delta).masks)
    got = total_volume(ms)
    if got != want:
        return ValidationReport(False, "volume", f"scaled volume {got}, expected {want}")
    return ValidationReport(True)


def triangulation_from_internal(n: int, delta: int, internal: Iterable[int]) -> Triangulation:
    """Rebuild the triangulation with the given internal floor(delta/2)-simplices.

    A (delta+1)-set is kept when all its internal faces of that size are
    listed and it meets no listed simplex in a circuit.
    """
    k = simplex_face_size(delta)
    emask = set(internal)
    keep = []
    for m in subsets_of_size(n, delta + 1):
        faces = (mask_of(c) for c in combinations(members_of(m), k))
        if any(is_internal_point_mask(f, n, delta) and f not in emask for f in faces):
            continue
        if any(has_circuit_between(m, e, delta) or has_circuit_between(e, m, delta) for e in emask):
            continue
        keep.append(m)
    return Triangulation(n, delta, frozenset(keep))


# ---------------------------------------------------------------- enumeration


def enumerate_hst(
    n: int,
    delta: int,
    max_elements: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> FinitePoset:
    """Breadth-first closure of the lower triangulation under increasing flips."""
    _check_dims(n, delta)
    start = time.monotonic()
    low = lower_triangulation(n, delta)
    index = {low.masks: 0}
    order = [low.masks]
    covers = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        cur = Triangulation(n, delta, order[i])
        for _, new in flip_masks(cur):
            j = index.get(new)
            if j is None:
                j = len(order)
                index[new] = j
                order.append(new)
                queue.append(j)
                if max_elements is not None and len(order) > max_elements:
                    raise EnumerationLimitError("S", n, delta, len(order), max_elements)
            covers.add((i, j))
        if max_seconds is not None and time.monotonic() - start > max_seconds:
            raise EnumerationLimitError("S", n, delta, len(order), f"{max_seconds}s")
    poset = FinitePoset(tuple(Triangulation(n, delta, m) for m in order), frozenset(covers))
    _check_extremes(poset, low, upper_triangulation(n, delta), "S")
    return poset


def _check_extremes(poset: FinitePoset, low, high, kind: str):
    mins, maxs = poset.minimal(), poset.maximal()
    if len(mins) != 1 or poset.elements[mins[0]] != low:
        raise InvalidObjectError(f"{kind}: unique minimum check failed")
    if len(maxs) != 1 or poset.elements[maxs[0]] != high:
        raise InvalidObjectError(f"{kind}: unique maximum check failed")
