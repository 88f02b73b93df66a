"""Cubillages of cyclic zonotopes Z(n, delta+1) as maximal delta-separated collections.

A cubillage is stored by its spectrum, a 2^n-bit integer whose bit ``X``
is set when the subset with mask ``X`` is a vertex.  Inversion sets and
admissible orders are derived views on the same object.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Optional

from .errors import (
    EnumerationLimitError,
    InconsistentInversionSetError,
    InvalidObjectError,
)
from .ground import (
    Subset,
    above_count,
    bits_to_masks,
    full_mask,
    lex_key,
    mask_of,
    mask_str,
    members_of,
    separation_table,
    submasks,
    subsets_of_size,
    tightly_interweaves_mask,
)
from .posets import FinitePoset


def spectrum_size(n: int, delta: int) -> int:
    return sum(comb(n, i) for i in range(delta + 2))


def internal_size(n: int, delta: int) -> int:
    return comb(n - 1, delta + 1)


@dataclass(frozen=True)
class Cubillage:
    """A cubillage of Z(n, delta+1), keyed by its spectrum bitset."""

    n: int
    delta: int
    bits: int

    @property
    def dim(self) -> int:
        return self.delta + 1

    @classmethod
    def from_spectrum(cls, n: int, delta: int, spectrum: Iterable) -> "Cubillage":
        bits = 0
        for x in spectrum:
            m = x.mask if isinstance(x, Subset) else (x if isinstance(x, int) else mask_of(x))
            bits |= 1 << m
        return cls(n, delta, bits)

    def __contains__(self, x) -> bool:
        m = x.mask if isinstance(x, Subset) else x
        return bool(self.bits >> m & 1)

    def spectrum_masks(self) -> list[int]:
        return sorted(bits_to_masks(self.bits), key=lex_key)

    def internal_masks(self) -> list[int]:
        if self.delta < 0:
            return self.spectrum_masks()
        inner = self.bits & separation_table(self.n, self.delta).internal
        return sorted(bits_to_masks(inner), key=lex_key)

    @property
    def spectrum(self) -> list[Subset]:
        return [Subset(self.n, m) for m in self.spectrum_masks()]

    @property
    def internal_spectrum(self) -> list[Subset]:
        return [Subset(self.n, m) for m in self.internal_masks()]

    def label(self) -> str:
        return "{" + ",".join(mask_str(m, self.n) for m in self.internal_masks()) + "}"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class Cube:
    initial: Subset
    generators: Subset

    @property
    def final(self) -> Subset:
        return Subset(self.initial.n, self.initial.mask | self.generators.mask)


@dataclass(frozen=True)
class InversionSet:
    """A set of (delta+2)-subsets of [n]."""

    n: int
    delta: int
    masks: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "masks", frozenset(self.masks))
        for m in self.masks:
            if m.bit_count() != self.delta + 2 or m >> self.n:
                raise ValueError(f"{mask_str(m, self.n)} is not a {self.delta + 2}-subset of [{self.n}]")

    @classmethod
    def of(cls, n: int, delta: int, members: Iterable) -> "InversionSet":
        ms = []
        for x in members:
            ms.append(x.mask if isinstance(x, Subset) else (x if isinstance(x, int) else mask_of(x)))
        return cls(n, delta, frozenset(ms))

    @property
    def members(self) -> list[Subset]:
        return [Subset(self.n, m) for m in sorted(self.masks, key=lex_key)]

    def __contains__(self, x) -> bool:
        m = x.mask if isinstance(x, Subset) else x
        return m in self.masks

    def __len__(self):
        return len(self.masks)


@dataclass(frozen=True)
class AdmissibleOrder:
    """A linear order on the (delta+1)-subsets of [n]."""

    n: int
    delta: int
    sequence: tuple

    @property
    def subsets(self) -> list[Subset]:
        return [Subset(self.n, m) for m in self.sequence]

    def __str__(self):
        return "<".join(mask_str(m, self.n) for m in self.sequence)


@dataclass(frozen=True)
class CubillageReport:
    valid: bool
    reason: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.valid


# ---------------------------------------------------------------- validation


def validate_cubillage(q: Cubillage) -> CubillageReport:
    """Check size, boundary containment, internal count and separation."""
    n, delta, bits = q.n, q.delta, q.bits
    if bits >> (1 << n):
        return CubillageReport(False, "shape", "spectrum has subsets outside [n]")
    if delta < 0:
        # Z(n, 0) is a point: a single vertex
        ok = bits.bit_count() == 1
        return CubillageReport(ok, None if ok else "size", None if ok else f"{bits.bit_count()} vertices")
    want = spectrum_size(n, delta)
    if bits.bit_count() != want:
        return CubillageReport(False, "size", f"{bits.bit_count()} vertices, expected {want}")
    table = separation_table(n, delta)
    missing = table.boundary & ~bits
    if missing:
        m = bits_to_masks(missing)[0]
        return CubillageReport(False, "boundary", f"boundary vertex {mask_str(m, n)} missing")
    inner = (bits & table.internal).bit_count()
    if inner != internal_size(n, delta):
        return CubillageReport(False, "internal", f"{inner} internal vertices, expected {internal_size(n, delta)}")
    for a in bits_to_masks(bits & table.internal):
        clash = table.nonsep[a] & bits
        if clash:
            b = bits_to_masks(clash)[0]
            return CubillageReport(False, "separation", f"{mask_str(a, n)} and {mask_str(b, n)} interweave")
    return CubillageReport(True)


def require_valid(q: Cubillage, what: str = "cubillage") -> Cubillage:
    rep = validate_cubillage(q)
    if not rep:
        raise InvalidObjectError(f"invalid {what}: {rep.reason}: {rep.detail}")
    return q


# ---------------------------------------------------------------- packets and inversion sets


def packet(k: Subset) -> list[Subset]:
    """The packet of ``k`` in lexicographic order: drop the largest element first."""
    if len(k) < 2:
        raise ValueError("a packet needs at least two elements")
    return [Subset(k.n, m) for m in packet_masks(k.mask)]


def packet_masks(k: int) -> list[int]:
    return [k & ~(1 << (e - 1)) for e in reversed(members_of(k))]


def initial_vertex_mask(i: int, inv: frozenset, n: int) -> int:
    """Initial vertex of the cube generated by ``i``, read off the inversion set."""
    e_mask = 0
    for e in range(1, n + 1):
        bit = 1 << (e - 1)
        if i & bit:
            continue
        odd = above_count(i, e) & 1
        inverted = (i | bit) in inv
        if (not inverted and odd) or (inverted and not odd):
            e_mask |= bit
    return e_mask


def cubillage_from_inversion_set(inv: InversionSet) -> Cubillage:
    """Spectrum as the union of the cubes E(I) + 2^I over all generator sets I."""
    n, delta = inv.n, inv.delta
    bits = 0
    for i in subsets_of_size(n, delta + 1):
        e = initial_vertex_mask(i, inv.masks, n)
        for s in submasks(i):
            bits |= 1 << (e | s)
    q = Cubillage(n, delta, bits)
    if not validate_cubillage(q):
        raise InconsistentInversionSetError()
    return q


def lower_cubillage(n: int, delta: int) -> Cubillage:
    return cubillage_from_inversion_set(InversionSet(n, delta))


def upper_cubillage(n: int, delta: int) -> Cubillage:
    return cubillage_from_inversion_set(InversionSet(n, delta, frozenset(subsets_of_size(n, delta + 2))))


def cube_initial_vertex_mask(q: Cubillage, i: int) -> int:
    """The unique E disjoint from ``i`` with E + S in the spectrum for all S in 2^i."""
    bits = q.bits
    rest = full_mask(q.n) & ~i
    found = []
    subs = list(submasks(i))
    for e in submasks(rest):
        if bits >> e & 1 and bits >> (e | i) & 1 and all(bits >> (e | s) & 1 for s in subs):
            found.append(e)
    if len(found) != 1:
        raise InvalidObjectError(
            f"generator set {mask_str(i, q.n)} spans {len(found)} cubes in the spectrum"
        )
    return found[0]


def cubes(q: Cubillage) -> list[Cube]:
    """One cube per (delta+1)-subset, with its initial vertex."""
    out = []
    for i in subsets_of_size(q.n, q.delta + 1):
        out.append(Cube(Subset(q.n, cube_initial_vertex_mask(q, i)), Subset(q.n, i)))
    if len(out) != comb(q.n, q.delta + 1):
        raise InvalidObjectError("cube count mismatch")
    return out


def initial_vertices(q: Cubillage) -> dict[int, int]:
    return {i: cube_initial_vertex_mask(q, i) for i in subsets_of_size(q.n, q.delta + 1)}


def inversion_set_of(q: Cubillage) -> InversionSet:
    """Recover the inversion set; every choice of dropped element must agree."""
    n, delta = q.n, q.delta
    e_of = initial_vertices(q)
    inv = set()
    for k in subsets_of_size(n, delta + 2):
        votes = set()
        for e in members_of(k):
            bit = 1 << (e - 1)
            i = k & ~bit
            odd = above_count(i, e) & 1
            in_e = bool(e_of[i] & bit)
            votes.add((not odd and in_e) or (odd and not in_e))
        if len(votes) != 1:
            raise InvalidObjectError(f"packet {mask_str(k, n)} is inconsistently oriented")
        if votes.pop():
            inv.add(k)
    return InversionSet(n, delta, frozenset(inv))


# ---------------------------------------------------------------- admissible orders


def packet_digraph(inv: InversionSet) -> dict[int, set[int]]:
    """Successor sets forcing each packet into lex or reverse-lex order."""
    succ: dict[int, set[int]] = {i: set() for i in subsets_of_size(inv.n, inv.delta + 1)}
    for k in subsets_of_size(inv.n, inv.delta + 2):
        seq = packet_masks(k)
        if k in inv.masks:
            seq.reverse()
        for a, b in zip(seq, seq[1:]):
            succ[a].add(b)
    return succ


def admissible_orders(inv: InversionSet) -> Iterator[AdmissibleOrder]:
    """Lazily emit every linear extension of the packet digraph.

    Orders come out in lexicographic order of their sequences of subsets.
    Raises :class:`InconsistentInversionSetError` if the digraph is cyclic
    or the inversion set does not give a valid cubillage.
    """
    cubillage_from_inversion_set(inv)
    succ = packet_digraph(inv)
    indeg = {v: 0 for v in succ}
    for v, ws in succ.items():
        for w in ws:
            indeg[w] += 1
    nodes = sorted(succ, key=lex_key)
    if not _acyclic(succ, dict(indeg)):
        raise InconsistentInversionSetError("packet digraph has a cycle")

    seq: list[int] = []

    def extend() -> Iterator[AdmissibleOrder]:
        if len(seq) == len(nodes):
            yield AdmissibleOrder(inv.n, inv.delta, tuple(seq))
            return
        for v in nodes:
            if indeg[v] == 0 and v not in placed:
                placed.add(v)
                seq.append(v)
                for w in succ[v]:
                    indeg[w] -= 1
                yield from extend()
                for w in succ[v]:
                    indeg[w] += 1
                seq.pop()
                placed.discard(v)

    placed: set[int] = set()
    yield from extend()


def _acyclic(succ, indeg) -> bool:
    queue = deque(v for v, k in indeg.items() if k == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(succ)


def order_inversion_set(order: AdmissibleOrder) -> Optional[InversionSet]:
    """Inversion set of an order, or None when the order is not admissible."""
    n, delta = order.n, order.delta
    pos = {m: k for k, m in enumerate(order.sequence)}
    if sorted(pos, key=lex_key) != subsets_of_size(n, delta + 1):
        return None
    inv = set()
    for k in subsets_of_size(n, delta + 2):
        ps = [pos[m] for m in packet_masks(k)]
        if ps == sorted(ps):
            continue
        if ps == sorted(ps, reverse=True):
            inv.add(k)
            continue
        return None
    return InversionSet(n, delta, frozenset(inv))


def is_admissible(order: AdmissibleOrder) -> bool:
    return order_inversion_set(order) is not None


def admissible_order_from_strings(n: int, delta: int, items: Iterable[str]) -> AdmissibleOrder:
    return AdmissibleOrder(n, delta, tuple(Subset.parse(n, s).mask for s in items))


# ---------------------------------------------------------------- visibility


def visibility(inv: InversionSet) -> tuple[list[Subset], list[Subset]]:
    """Visible and covisible (delta+1)-subsets of any order with this inversion set."""
    n = inv.n
    vis, covis = [], []
    for i in subsets_of_size(n, inv.delta + 1):
        e = initial_vertex_mask(i, inv.masks, n)
        if e == 0:
            vis.append(Subset(n, i))
        if e == full_mask(n) & ~i:
            covis.append(Subset(n, i))
    return vis, covis


# ---------------------------------------------------------------- flips


@lru_cache(maxsize=None)
def tight_targets(n: int, delta: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each subset A, the (B, A xor B) pairs with A tightly interweaving B."""
    ks = subsets_of_size(n, delta + 2)
    out = []
    for a in range(1 << n):
        row = []
        for k in ks:
            els = members_of(k)
            # top element outside A, then alternate downwards
            if all(((a >> (e - 1)) & 1) == ((delta + 1 - j) & 1) for j, e in enumerate(els)):
                row.append((a ^ k, k))
        out.append(tuple(row))
    return tuple(out)


def exchange_flip_masks(q: Cubillage) -> list[tuple[int, int, int]]:
    """(A, B, new spectrum bits) for every increasing flip of ``q``."""
    n, delta, bits = q.n, q.delta, q.bits
    table = separation_table(n, delta)
    targets = tight_targets(n, delta)
    out = []
    for a in bits_to_masks(bits & table.internal):
        rest = bits & ~(1 << a)
        for b, _k in targets[a]:
            if bits >> b & 1:
                continue
            if table.nonsep[b] & rest:
                continue
            out.append((a, b, rest | (1 << b)))
    out.sort(key=lambda t: (lex_key(t[0]), lex_key(t[1])))
    return out


def exchange_flips(q: Cubillage) -> list[tuple[Subset, Subset, Cubillage]]:
    """Every increasing flip: A leaves the spectrum, B enters, A tightly interweaves B."""
    return [
        (Subset(q.n, a), Subset(q.n, b), Cubillage(q.n, q.delta, new))
        for a, b, new in exchange_flip_masks(q)
    ]


def apply_exchange(q: Cubillage, a: int, b: int) -> Cubillage:
    """Exchange ``a`` for ``b`` after checking the flip conditions."""
    n, delta = q.n, q.delta
    if not q.bits >> a & 1:
        raise InvalidObjectError(f"{mask_str(a, n)} is not in the spectrum")
    if q.bits >> b & 1:
        raise InvalidObjectError(f"{mask_str(b, n)} is already in the spectrum")
    if not tightly_interweaves_mask(a, b, delta):
        raise InvalidObjectError(f"{mask_str(a, n)} does not tightly interweave {mask_str(b, n)}")
    rest = q.bits & ~(1 << a)
    table = separation_table(n, delta)
    if table.nonsep[b] & rest:
        c = bits_to_masks(table.nonsep[b] & rest)[0]
        raise InvalidObjectError(f"{mask_str(b, n)} interweaves {mask_str(c, n)}")
    return Cubillage(n, delta, rest | (1 << b))


def exchange_between(q: Cubillage, q2: Cubillage) -> Optional[tuple[int, int]]:
    """(A, B) if q2 is an increasing flip of q, else None."""
    gone = q.bits & ~q2.bits
    new = q2.bits & ~q.bits
    if gone.bit_count() != 1 or new.bit_count() != 1:
        return None
    a, b = gone.bit_length() - 1, new.bit_length() - 1
    return (a, b) if tightly_interweaves_mask(a, b, q.delta) else None


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class BruhatEnumeration:
    """Enumeration record: the poset plus flip labels and inversion sets."""

    poset: FinitePoset
    exchanges: dict
    inversions: tuple


def bruhat_enumeration(
    n: int,
    delta: int,
    max_elements: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> BruhatEnumeration:
    """Breadth-first closure of the lower cubillage under increasing flips."""
    if delta < 0 or n < delta + 1:
        raise ValueError(f"B({n},{delta + 1}) needs 0 <= delta < n")
    start = time.monotonic()
    low = lower_cubillage(n, delta)
    index = {low.bits: 0}
    order = [low.bits]
    invs = [frozenset()]
    covers = set()
    exchanges = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for a, b, new in exchange_flip_masks(Cubillage(n, delta, order[i])):
            j = index.get(new)
            k = a ^ b
            if j is None:
                j = len(order)
                index[new] = j
                order.append(new)
                invs.append(invs[i] | {k})
                queue.append(j)
                if max_elements is not None and len(order) > max_elements:
                    raise EnumerationLimitError("B", n, delta, len(order), max_elements)
            elif invs[j] != invs[i] | {k}:
                raise InvalidObjectError("inversion sets disagree along a flip")
            covers.add((i, j))
            exchanges[(i, j)] = (a, b)
        if max_seconds is not None and time.monotonic() - start > max_seconds:
            raise EnumerationLimitError("B", n, delta, len(order), f"{max_seconds}s")
    poset = FinitePoset(tuple(Cubillage(n, delta, b) for b in order), frozenset(covers))
    mins, maxs = poset.minimal(), poset.maximal()
    if mins != [0] or len(maxs) != 1 or poset.elements[maxs[0]] != upper_cubillage(n, delta):
        raise InvalidObjectError("B: unique minimum/maximum check failed")
    return BruhatEnumeration(poset, exchanges, tuple(InversionSet(n, delta, s) for s in invs))


def enumerate_bruhat(
    n: int,
    delta: int,
    max_elements: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> FinitePoset:
    """The higher Bruhat order B(n, delta+1) on cubillages."""
    return bruhat_enumeration(n, delta, max_elements, max_seconds).poset


# ---------------------------------------------------------------- contraction and membranes


def _check_colour(q: Cubillage, colour: Optional[int]) -> int:
    c = q.n if colour is None else colour
    if c not in (1, q.n):
        raise ValueError("only colours 1 and n are supported")
    if q.n < 2:
        raise ValueError("contraction needs n >= 2")
    return c


def _drop(mask: int, colour: int, n: int) -> int:
    if colour == n:
        return mask & full_mask(n - 1)
    return mask >> 1


def contraction(q: Cubillage, colour: Optional[int] = None) -> Cubillage:
    """Contract the edges of colour n (or 1, relabelling 2..n down to 1..n-1)."""
    c = _check_colour(q, colour)
    n = q.n
    bits = 0
    for x in bits_to_masks(q.bits):
        bits |= 1 << _drop(x, c, n)
    delta = min(q.delta, n - 2)
    return require_valid(Cubillage(n - 1, delta, bits), "contraction")


def membrane_of_contraction(q: Cubillage, colour: Optional[int] = None) -> Cubillage:
    """The image of the colour pie: X with both X and X + colour in the spectrum.

    The result is a cubillage of Z(n-1, delta).
    """
    c = _check_colour(q, colour)
    n = q.n
    bit = 1 << (c - 1)
    bits = 0
    for x in bits_to_masks(q.bits):
        if not x & bit and q.bits >> (x | bit) & 1:
            bits |= 1 << _drop(x, c, n)
    return require_valid(Cubillage(n - 1, q.delta - 1, bits), "membrane")
