"""Constructive certificates that g is surjective and full.

Even delta = 2d: a triangulation T gives the cubillage Q_T whose internal
spectrum is U(T); a flip of T at a (2d+2)-set S becomes a schedule of
cubillage flips driven by the coordinate parametrisation phi.

Odd delta: pre-images are found by completing the faces of T to a maximal
separated collection, and membranes of colour contractions are checked to
move by covers.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .crosssection import g, g_containment_check
from .errors import InvalidObjectError, WitnessError
from .ground import (
    Subset,
    bits_to_masks,
    hat_mask,
    lex_key,
    mask_str,
    members_of,
    separation_table,
)
from .posets import FinitePoset
from .simplicial import Triangulation, flip_between, validate
from .zonotopal import (
    Cubillage,
    apply_exchange,
    exchange_between,
    exchange_flip_masks,
    internal_size,
    membrane_of_contraction,
    require_valid,
    upper_cubillage,
)


def _even_d(t: Triangulation) -> int:
    if t.delta % 2:
        raise ValueError(f"this construction needs even delta, got {t.delta}")
    return t.delta // 2


# ---------------------------------------------------------------- U(T) and Q_T


def u_masks(t: Triangulation) -> frozenset:
    d = _even_d(t)
    faces = t.faces()
    out = set()
    for i in range(1, 1 << t.n):
        h = hat_mask(i, t.n)
        if h.bit_count() >= d + 1 and h in faces:
            out.add(i)
    return frozenset(out)


def U_of(t: Triangulation) -> frozenset:
    """Subsets whose cyclic hat spans a face of ``t`` of dimension at least d."""
    return frozenset(Subset(t.n, m) for m in u_masks(t))


def build_Q_T(t: Triangulation) -> Cubillage:
    """The cubillage with internal spectrum U(T); its cross-section is T."""
    _even_d(t)
    table = separation_table(t.n, t.delta)
    bits = table.boundary
    for m in u_masks(t):
        bits |= 1 << m
    q = Cubillage(t.n, t.delta, bits)
    try:
        require_valid(q, "Q_T")
    except InvalidObjectError as exc:
        raise WitnessError(str(exc)) from exc
    if g(q) != t:
        raise WitnessError(f"g(Q_T) differs from {t}")
    return q


# ---------------------------------------------------------------- coordinates


@dataclass(frozen=True)
class CoordinateVector:
    """Box coordinates (n_0, ..., n_{2d+1}) relative to a flip set S."""

    n: int
    s: tuple
    coords: tuple

    def __post_init__(self):
        caps = box_caps(self.s, self.n)
        if len(self.coords) != len(caps):
            raise ValueError("coordinate vector has the wrong length")
        for c, cap in zip(self.coords, caps):
            if not 0 <= c <= cap:
                raise ValueError(f"coordinates {self.coords} outside box {caps}")

    def shifted(self, lam: int) -> "CoordinateVector":
        t = [(-lam if k % 2 == 0 else lam) for k in range(len(self.coords))]
        return CoordinateVector(self.n, self.s, tuple(c + x for c, x in zip(self.coords, t)))


def _flip_set(s, n: int) -> tuple[int, ...]:
    if isinstance(s, Subset):
        els = s.members
    elif isinstance(s, int):
        els = tuple(members_of(s))
    else:
        els = tuple(sorted(s))
    if len(els) % 2 or len(els) < 2:
        raise ValueError(f"flip set must have an even number 2d+2 of elements, got {len(els)}")
    if els[-1] > n:
        raise ValueError("flip set outside [n]")
    return els


def box_caps(s: Sequence[int], n: int) -> tuple[int, ...]:
    """Gap lengths s_{i+1} - s_i, the last one wrapping modulo n."""
    k = len(s)
    return tuple((s[(i + 1) % k] - s[i]) % n or n for i in range(k))


def phi_mask(s: Sequence[int], n: int, coords: Sequence[int]) -> int:
    m = 0
    for start, length in zip(s, coords):
        for off in range(length):
            m |= 1 << ((start - 1 + off) % n)
    return m


def phi(v: CoordinateVector) -> Subset:
    """Union of the cyclic intervals [s_i, s_i + n_i - 1]."""
    return Subset(v.n, phi_mask(v.s, v.n, v.coords))


def phi_inverse(i: Subset, s) -> CoordinateVector:
    """Coordinates of ``i``; each region [s_j, s_{j+1} - 1] must meet i in a prefix."""
    n = i.n
    els = _flip_set(s, n)
    caps = box_caps(els, n)
    coords = []
    for start, cap in zip(els, caps):
        length = 0
        while length < cap and i.mask >> ((start - 1 + length) % n) & 1:
            length += 1
        coords.append(length)
    if phi_mask(els, n, coords) != i.mask:
        raise ValueError(f"{i} is not a union of intervals anchored at {mask_str(sum(1 << (e - 1) for e in els), n)}")
    return CoordinateVector(n, els, tuple(coords))


def _box_points(caps):
    from itertools import product

    return product(*[range(c + 1) for c in caps])


@dataclass(frozen=True)
class ISets:
    lower: frozenset
    upper: frozenset
    lower_closed: frozenset
    upper_closed: frozenset


def i_set_masks(s, n: int) -> tuple[frozenset, frozenset, frozenset, frozenset]:
    els = _flip_set(s, n)
    smask = sum(1 << (e - 1) for e in els)
    sl = sum(1 << (e - 1) for e in els[0::2])
    su = sum(1 << (e - 1) for e in els[1::2])
    caps = box_caps(els, n)
    il, iu, il2, iu2 = set(), set(), set(), set()
    for pt in _box_points(caps):
        m = phi_mask(els, n, pt)
        if not m:
            continue
        h = hat_mask(m, n)
        if h & ~smask:
            continue
        if h & sl == sl:
            il2.add(m)
            if h != smask:
                il.add(m)
        if h & su == su:
            iu2.add(m)
            if h != smask:
                iu.add(m)
    return frozenset(il), frozenset(iu), frozenset(il2), frozenset(iu2)


def I_sets(s, n: int) -> ISets:
    """The families I_l, I_u and their closed versions I'_l, I'_u for the flip set s."""
    parts = i_set_masks(s, n)
    return ISets(*(frozenset(Subset(n, m) for m in p) for p in parts))


def i_prime_count(s, n: int) -> int:
    """Product of the cyclic gap lengths, the common size of I'_l and I'_u."""
    out = 1
    for c in box_caps(_flip_set(s, n), n):
        out *= c
    return out


def _lambda(coords, caps) -> int:
    return min(
        coords[k] if k % 2 == 0 else caps[k] - coords[k] for k in range(len(coords))
    )


def _mu(coords, caps) -> int:
    return min(
        caps[k] - coords[k] if k % 2 == 0 else coords[k] for k in range(len(coords))
    )


def psi(i: Subset, s, n: Optional[int] = None) -> Subset:
    """The bijection I_l -> I_u pushing coordinates along t = (-1, 1, ..., -1, 1)."""
    n = i.n if n is None else n
    il, _, _, _ = i_set_masks(s, n)
    if i.mask not in il:
        raise ValueError(f"{i} is not in I_l")
    v = phi_inverse(i, s)
    return phi(v.shifted(_lambda(v.coords, box_caps(v.s, n))))


def psi_lambda(i: Subset, s) -> int:
    v = phi_inverse(i, s)
    return _lambda(v.coords, box_caps(v.s, i.n))


def psi_inverse(j: Subset, s, n: Optional[int] = None) -> Subset:
    n = j.n if n is None else n
    _, iu, _, _ = i_set_masks(s, n)
    if j.mask not in iu:
        raise ValueError(f"{j} is not in I_u")
    v = phi_inverse(j, s)
    return phi(v.shifted(-_mu(v.coords, box_caps(v.s, n))))


# ---------------------------------------------------------------- exchange lattice


def _lattice_box(els, n):
    caps = box_caps(els, n)
    lo = [1 if k % 2 == 0 else 0 for k in range(len(caps))]
    hi = [caps[k] if k % 2 == 0 else caps[k] - 1 for k in range(len(caps))]
    return lo, hi


def lattice_points(s, n: int) -> list[tuple[int, ...]]:
    """Coordinates n with n + t still in the box, i.e. I' minus I_u."""
    from itertools import product

    els = _flip_set(s, n)
    lo, hi = _lattice_box(els, n)
    return sorted(product(*[range(a, b + 1) for a, b in zip(lo, hi)]))


def _lattice_covers(points):
    index = {p: k for k, p in enumerate(points)}
    covers = set()
    for p, k in index.items():
        for c in range(len(p)):
            q = list(p)
            # going up: even coordinates shrink, odd coordinates grow
            q[c] += -1 if c % 2 == 0 else 1
            j = index.get(tuple(q))
            if j is not None:
                covers.add((k, j))
    return covers


def exchange_lattice(s, n: int) -> FinitePoset:
    """Lattice on I' minus I_u: product order, reversed on even coordinates.

    Elements are the subsets phi(n).
    """
    els = _flip_set(s, n)
    points = lattice_points(els, n)
    names = [Subset(n, phi_mask(els, n, p)) for p in points]
    return FinitePoset(tuple(names), frozenset(_lattice_covers(points)))


def lattice_linear_extension(s, n: int) -> list[tuple[int, ...]]:
    """Linear extension taking the lexicographically least available point first."""
    els = _flip_set(s, n)
    points = lattice_points(els, n)
    covers = _lattice_covers(points)
    indeg = [0] * len(points)
    succ = [[] for _ in points]
    for a, b in covers:
        indeg[b] += 1
        succ[a].append(b)
    heap = [points[k] for k in range(len(points)) if indeg[k] == 0]
    heapq.heapify(heap)
    index = {p: k for k, p in enumerate(points)}
    out = []
    while heap:
        p = heapq.heappop(heap)
        out.append(p)
        for b in succ[index[p]]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, points[b])
    return out


# ---------------------------------------------------------------- schedules


@dataclass(frozen=True)
class ExchangeSchedule:
    """A chain of increasing flips given by its exchange pairs."""

    start: Cubillage
    steps: tuple
    end: Cubillage

    def replay(self) -> list[Cubillage]:
        """Re-execute every step, re-checking each flip; returns all cubillages."""
        cur = self.start
        out = [cur]
        for a, b in self.steps:
            try:
                cur = apply_exchange(cur, a.mask, b.mask)
            except InvalidObjectError as exc:
                raise WitnessError(f"step {a} -> {b} failed: {exc}") from exc
            out.append(cur)
        if cur != self.end:
            raise WitnessError("schedule does not end at the declared cubillage")
        return out

    def __len__(self):
        return len(self.steps)


def even_fullness_chain(t: Triangulation, t2: Triangulation) -> ExchangeSchedule:
    """Cover chain from Q_T to Q_T' for a cover T < T' of even dimension."""
    _even_d(t)
    s = flip_between(t, t2)
    if s is None:
        raise ValueError("the two triangulations are not related by an increasing flip")
    n = t.n
    els = tuple(members_of(s))
    start = build_Q_T(t)
    end = build_Q_T(t2)
    steps = []
    cur = start
    for p in lattice_linear_extension(els, n):
        v = CoordinateVector(n, els, p)
        a, b = phi(v), phi(v.shifted(1))
        try:
            cur = apply_exchange(cur, a.mask, b.mask)
        except InvalidObjectError as exc:
            raise WitnessError(f"exchange {a} -> {b} is not an increasing flip: {exc}") from exc
        steps.append((a, b))
    if cur != end:
        raise WitnessError("schedule did not reach Q_T'")
    return ExchangeSchedule(start, tuple(steps), end)


def schedule_for_flip(t: Triangulation, s) -> ExchangeSchedule:
    """Schedule for the increasing flip of ``t`` at ``s``."""
    from .simplicial import apply_flip

    return even_fullness_chain(t, apply_flip(t, s if isinstance(s, (int, Subset)) else Subset.of(t.n, s)))


def fibre_chain(start: Cubillage, t2: Triangulation, max_elements: Optional[int] = None) -> ExchangeSchedule:
    """Shortest cover chain from ``start`` up to some Q' with g(Q') = t2.

    The search stays inside the fibres of g(start) and t2; when t2 covers
    g(start) every chain between the two fibres does so anyway.
    """
    t = g(start)
    n, delta = start.n, start.delta
    prev = {start.bits: None}
    queue = deque([start.bits])
    while queue:
        x = queue.popleft()
        cur = Cubillage(n, delta, x)
        if g(cur) == t2:
            steps = []
            y = x
            while prev[y] is not None:
                y0, a, b = prev[y]
                steps.append((Subset(n, a), Subset(n, b)))
                y = y0
            steps.reverse()
            return ExchangeSchedule(start, tuple(steps), cur)
        for a, b, new in exchange_flip_masks(cur):
            if new not in prev and g(Cubillage(n, delta, new)) in (t, t2):
                prev[new] = (x, a, b)
                queue.append(new)
                if max_elements is not None and len(prev) > max_elements:
                    raise WitnessError("fibre search exceeded its element budget")
    raise WitnessError(f"no cover chain from {start} into the fibre of {t2}")


def fullness_witness(t: Triangulation, t2: Triangulation) -> tuple[ExchangeSchedule, str]:
    """A chain Q <= Q' with g(Q) = t and g(Q') = t2, and the method that found it.

    Even delta tries the coordinate schedule between Q_T and Q_T' first.
    That schedule is only increasing when the flip set contains 1; otherwise
    Q_T and Q_T' are incomparable and the fibre search from Q_T takes over.
    Odd delta starts the fibre search from the face completion of t.
    """
    if t.delta % 2 == 0:
        try:
            return even_fullness_chain(t, t2), "coordinate"
        except WitnessError:
            return fibre_chain(build_Q_T(t), t2), "fibre-search"
    return fibre_chain(odd_preimage(t), t2), "fibre-search"


# ---------------------------------------------------------------- odd dimension


@dataclass(frozen=True)
class MembraneChain:
    membranes: tuple
    colour: int
    orientation: str


def membrane_chain(chain: Sequence[Cubillage], colour: Optional[int] = None) -> MembraneChain:
    """Membranes of consecutive covers, with consecutive duplicates collapsed.

    Contracting colour 1 preserves the order, so consecutive outputs are
    covers upwards.  Contracting colour n reverses it: each output covers
    the next one.  Any other step raises :class:`WitnessError`.
    """
    if not chain:
        raise ValueError("empty chain")
    c = chain[0].n if colour is None else colour
    for a, b in zip(chain, chain[1:]):
        if exchange_between(a, b) is None:
            raise ValueError("consecutive inputs are not covers")
    orientation = "increasing" if c == 1 else "decreasing"
    out = []
    for q in chain:
        m = membrane_of_contraction(q, c)
        if not out or out[-1] != m:
            out.append(m)
    for a, b in zip(out, out[1:]):
        ok = exchange_between(a, b) if orientation == "increasing" else exchange_between(b, a)
        if ok is None:
            raise WitnessError(f"membranes {a} and {b} are not related by a cover")
    return MembraneChain(tuple(out), c, orientation)


def odd_preimage(t: Triangulation) -> Cubillage:
    """A cubillage Q with g(Q) = T, by completing the faces of T.

    Starts from the boundary plus all faces of T and adds further internal
    vertices with backtracking.  Vertices of the upper cubillage are tried
    first, then the rest in lexicographic order, so the lower and upper
    triangulations come back to the lower and upper cubillages.
    """
    if t.delta % 2 == 0:
        raise ValueError("odd_preimage needs odd delta")
    return complete_faces(t)


def complete_faces(t: Triangulation) -> Cubillage:
    rep = validate(t)
    if not rep:
        raise InvalidObjectError(f"invalid triangulation: {rep.reason}: {rep.detail}")
    n, delta = t.n, t.delta
    table = separation_table(n, delta)
    base = table.boundary
    for f in t.faces():
        base |= 1 << f
    for a in bits_to_masks(base & table.internal):
        if table.nonsep[a] & base:
            raise WitnessError("faces of the triangulation are not separated")
    need = internal_size(n, delta) - (base & table.internal).bit_count()
    pool = [c for c in bits_to_masks(table.internal & ~base) if not table.nonsep[c] & base]
    preferred = upper_cubillage(n, delta).bits
    pool.sort(key=lambda c: (0 if preferred >> c & 1 else 1, lex_key(c)))

    def search(k: int, bits: int, need: int) -> Optional[int]:
        if need == 0:
            return bits
        if len(pool) - k < need:
            return None
        c = pool[k]
        if not table.nonsep[c] & bits:
            found = search(k + 1, bits | (1 << c), need - 1)
            if found is not None:
                return found
        return search(k + 1, bits, need)

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(pool) + 100))
    try:
        bits = search(0, base, need)
    finally:
        sys.setrecursionlimit(old)
    if bits is None:
        raise WitnessError("no separated completion of the faces exists")
    q = require_valid(Cubillage(n, delta, bits), "pre-image")
    if not g_containment_check(q, t) or g(q) != t:
        raise WitnessError("completed cubillage does not map to the triangulation")
    return q
