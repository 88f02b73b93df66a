"""Ground-set combinatorics on subsets of [n] = {1, ..., n}.

Subsets are stored as bitmasks, bit ``i - 1`` standing for element ``i``.
Most functions come in two flavours: a public one taking :class:`Subset`
values and a ``*_mask`` one working on raw integers, which the enumeration
code uses in its inner loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

MAX_N = 16


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def members_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_str(mask: int, n: int) -> str:
    """Human-readable form: digits for n <= 9, comma separated otherwise."""
    if not mask:
        return "∅"
    els = members_of(mask)
    if n <= 9:
        return "".join(map(str, els))
    return ",".join(map(str, els))


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key ordering subsets as ascending integer lists."""
    return tuple(members_of(mask))


def subsets_of_size(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, in lexicographic order."""
    if k < 0 or k > n:
        return []
    from itertools import combinations

    return [mask_of(c) for c in combinations(range(1, n + 1), k)]


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask``, including 0 and ``mask`` itself."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True, order=False)
class Subset:
    """A subset of [n], compared and hashed by (n, members)."""

    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must lie in [1, {MAX_N}], got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has members outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        els = list(elements)
        for e in els:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
        return cls(n, mask_of(els))

    @classmethod
    def parse(cls, n: int, text: str) -> "Subset":
        """Parse ``"134"``, ``"1,3,4"``, ``"∅"`` or ``""``."""
        text = text.strip()
        if text in ("", "∅", "{}", "0"):
            return cls(n, 0)
        if "," in text:
            els = [int(t) for t in text.split(",") if t.strip()]
        else:
            els = [int(c) for c in text]
        return cls.of(n, els)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(members_of(self.mask))

    def __iter__(self):
        return iter(members_of(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, e):
        return isinstance(e, int) and 1 <= e <= self.n and bool(self.mask >> (e - 1) & 1)

    def __lt__(self, other: "Subset"):
        return (self.n, lex_key(self.mask)) < (other.n, lex_key(other.mask))

    def __str__(self):
        return mask_str(self.mask, self.n)

    def __repr__(self):
        return f"Subset({self.n}, {{{', '.join(map(str, self.members))}}})"

    def complement(self) -> "Subset":
        return Subset(self.n, full_mask(self.n) & ~self.mask)

    def to_list(self) -> list[int]:
        return members_of(self.mask)


def _check_same_n(a: Subset, b: Subset):
    if a.n != b.n:
        raise ValueError(f"ground sets differ: n={a.n} vs n={b.n}")


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True)
class IntervalDecomposition:
    """Minimal decomposition of a subset into (possibly wrapping) intervals."""

    n: int
    blocks: tuple[tuple[int, int], ...]
    cyclic: bool

    @property
    def l(self) -> int:
        return len(self.blocks)

    def starts(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.blocks)


def _pred_mask(mask: int, n: int, cyclic: bool) -> int:
    """Bits of elements whose predecessor lies in ``mask``."""
    shifted = (mask << 1) & full_mask(n)
    if cyclic and mask >> (n - 1) & 1:
        shifted |= 1
    return shifted


def block_starts_mask(mask: int, n: int, cyclic: bool) -> int:
    """Left endpoints of the blocks of ``mask``; [n] has the single start 1."""
    if cyclic and mask == full_mask(n):
        return 1 if n else 0
    return mask & ~_pred_mask(mask, n, cyclic)


def block_count_mask(mask: int, n: int, cyclic: bool) -> int:
    return block_starts_mask(mask, n, cyclic).bit_count()


def decompose(s: Subset, cyclic: bool) -> IntervalDecomposition:
    """Split ``s`` into the fewest intervals.

    Cyclic blocks are listed starting from the first block after the
    smallest non-member, so a block wrapping from n to 1 can come first.
    """
    n, m = s.n, s.mask
    if not m:
        raise ValueError("empty subset has no decomposition")
    if cyclic and m == full_mask(n):
        return IntervalDecomposition(n, ((1, n),), True)
    starts = members_of(block_starts_mask(m, n, cyclic))
    if cyclic:
        gap = next(e for e in range(1, n + 1) if not m >> (e - 1) & 1)
        starts.sort(key=lambda a: (a - gap) % n)
    blocks = []
    for a in starts:
        b = a
        while True:
            nxt = b % n + 1 if cyclic else b + 1
            if nxt > n or not m >> (nxt - 1) & 1:
                break
            b = nxt
        blocks.append((a, b))
    return IntervalDecomposition(n, tuple(blocks), cyclic)


def hat(s: Subset, cyclic: bool = True) -> Subset:
    """Left endpoints of the minimal interval decomposition of ``s``."""
    if not s.mask:
        raise ValueError("empty subset has no decomposition")
    return Subset(s.n, block_starts_mask(s.mask, s.n, cyclic))


def hat_mask(mask: int, n: int) -> int:
    return block_starts_mask(mask, n, True)


# ---------------------------------------------------------------- gaps


def above_count(mask: int, e: int) -> int:
    """Number of members of ``mask`` strictly greater than ``e``."""
    return (mask >> e).bit_count()


def gap_parity(s: Subset, e: int) -> str:
    """``"even"`` or ``"odd"`` according to the members of ``s`` above ``e``."""
    if not 1 <= e <= s.n:
        raise ValueError(f"element {e} outside [1, {s.n}]")
    if e in s:
        raise ValueError(f"{e} is not a gap of {s}")
    return "odd" if above_count(s.mask, e) & 1 else "even"


def is_even_mask(mask: int, n: int) -> bool:
    """Every gap of ``mask`` in [n] is even."""
    return all(
        not above_count(mask, e) & 1 for e in range(1, n + 1) if not mask >> (e - 1) & 1
    )


def is_odd_mask(mask: int, n: int) -> bool:
    return all(
        above_count(mask, e) & 1 for e in range(1, n + 1) if not mask >> (e - 1) & 1
    )


def gale_kind(f: Subset, delta: int) -> str:
    """Classify a delta-subset as a ``lower`` or ``upper`` facet, or ``neither``."""
    if len(f) != delta:
        raise ValueError(f"expected a {delta}-subset, got {f}")
    if is_even_mask(f.mask, f.n):
        return "lower"
    if is_odd_mask(f.mask, f.n):
        return "upper"
    return "neither"


# ---------------------------------------------------------------- interweaving


@dataclass(frozen=True)
class InterweaveWitness:
    """Chain i_0 < ... < i_{delta+1}; the top sits in B - A, then alternates."""

    chain: tuple[int, ...]
    delta: int


def alternating_chain(first: int, second: int, length: int) -> Optional[list[int]]:
    """Leftmost increasing chain drawing alternately from two masks.

    Position 0 comes from ``first``, position 1 from ``second`` and so on.
    The greedy choice yields the lexicographically least chain and succeeds
    whenever any chain of the requested length exists.
    """
    chain = []
    pools = (first, second)
    floor = 0  # elements must exceed this bit position
    for pos in range(length):
        pool = pools[pos & 1] >> floor
        if not pool:
            return None
        low = (pool & -pool).bit_length() - 1 + floor
        chain.append(low + 1)
        floor = low + 1
    return chain


def _chain_pools(a: int, b: int, delta: int) -> tuple[int, int]:
    # the top position delta+1 is drawn from b; position 0 has its parity
    if (delta + 1) & 1:
        return a, b
    return b, a


def interweave_chain_mask(a: int, b: int, delta: int) -> Optional[list[int]]:
    """Witness chain for ``a`` delta-interweaving ``b``, else None."""
    p0, p1 = _chain_pools(a & ~b, b & ~a, delta)
    return alternating_chain(p0, p1, delta + 2)


def interweaves_mask(a: int, b: int, delta: int) -> bool:
    return interweave_chain_mask(a, b, delta) is not None


def separated_mask(a: int, b: int, delta: int) -> bool:
    return not interweaves_mask(a, b, delta) and not interweaves_mask(b, a, delta)


def interweaves(a: Subset, b: Subset, delta: int) -> Optional[InterweaveWitness]:
    """The lexicographically least witness that ``a`` delta-interweaves ``b``."""
    _check_same_n(a, b)
    chain = interweave_chain_mask(a.mask, b.mask, delta)
    return None if chain is None else InterweaveWitness(tuple(chain), delta)


def tightly_interweaves_mask(a: int, b: int, delta: int) -> bool:
    diff = (a & ~b) | (b & ~a)
    return diff.bit_count() == delta + 2 and interweaves_mask(a, b, delta)


def tightly_interweaves(a: Subset, b: Subset, delta: int) -> bool:
    _check_same_n(a, b)
    return tightly_interweaves_mask(a.mask, b.mask, delta)


def is_separated_pair(a: Subset, b: Subset, delta: int) -> bool:
    _check_same_n(a, b)
    return separated_mask(a.mask, b.mask, delta)


def is_separated_collection(
    collection: Iterable[Subset], delta: int
) -> tuple[bool, Optional[tuple[Subset, Subset]]]:
    """Check pairwise separation; return the first offending ordered pair."""
    items = sorted(set(collection))
    for i, a in enumerate(items):
        for b in items[i + 1 :]:
            if interweaves_mask(a.mask, b.mask, delta):
                return False, (a, b)
            if interweaves_mask(b.mask, a.mask, delta):
                return False, (b, a)
    return True, None


# ---------------------------------------------------------------- internality


def is_internal_point_mask(mask: int, n: int, delta: int) -> bool:
    """Whether subset ``mask`` is an internal vertex of Z(n, delta+1)."""
    if mask == 0 or mask == full_mask(n):
        return False
    d, odd = divmod(delta, 2)
    if not odd:
        return block_count_mask(mask, n, True) >= d + 1
    lin = block_count_mask(mask, n, False)
    if lin >= d + 2:
        return True
    return lin == d + 1 and not mask & 1 and not mask >> (n - 1) & 1


def is_internal_point(a: Subset, delta: int) -> bool:
    """Internal vertex test for Z(n, delta+1); boundary vertices lie in every cubillage."""
    return is_internal_point_mask(a.mask, a.n, delta)


def simplex_face_size(delta: int) -> int:
    """Cardinality of the internal floor(delta/2)-simplices."""
    return delta // 2 + 1


def is_internal_simplex(a: Subset, delta: int) -> bool:
    """Whether the floor(delta/2)-simplex |a| is internal to C(n, delta)."""
    k = simplex_face_size(delta)
    if len(a) != k:
        raise ValueError(f"internal simplex test needs a {k}-subset, got {a}")
    return is_internal_point_mask(a.mask, a.n, delta)


# ---------------------------------------------------------------- circuits


def is_circuit(x: Subset, y: Subset, delta: int) -> bool:
    """Whether (x, y) is a circuit of the cyclic polytope C(n, delta)."""
    _check_same_n(x, y)
    if x.mask & y.mask:
        raise ValueError("circuit halves must be disjoint")
    return (
        len(x) == delta // 2 + 1
        and len(y) == (delta + 1) // 2 + 1
        and interweaves_mask(x.mask, y.mask, delta)
    )


def has_circuit_between(a: int, b: int, delta: int) -> bool:
    """Some circuit (X, Y) has X inside ``a`` and Y inside ``b``.

    Shared elements of ``a`` and ``b`` may serve on either side, so the
    search runs on the raw sets rather than their differences.
    """
    p0, p1 = _chain_pools(a, b, delta)
    return alternating_chain(p0, p1, delta + 2) is not None


def simplices_compatible(a: int, b: int, delta: int) -> bool:
    """The simplices |a| and |b| meet properly (no circuit either way)."""
    return not has_circuit_between(a, b, delta) and not has_circuit_between(b, a, delta)


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class SeparationTable:
    """Per-(n, delta) lookup tables over all 2^n subsets.

    ``nonsep[a]`` is a 2^n-bit integer whose bit ``b`` is set when ``a`` and
    ``b`` are not delta-separated.  ``internal`` and ``boundary`` are 2^n-bit
    sets of the internal and boundary vertices of Z(n, delta+1).
    """

    n: int
    delta: int
    nonsep: tuple[int, ...]
    internal: int
    boundary: int

    @property
    def internal_masks(self) -> list[int]:
        return [a for a in range(1 << self.n) if self.internal >> a & 1]


@lru_cache(maxsize=None)
def separation_table(n: int, delta: int) -> SeparationTable:
    size = 1 << n
    rows = [0] * size
    for a in range(size):
        row = rows[a]
        for b in range(a + 1, size):
            if not separated_mask(a, b, delta):
                row |= 1 << b
                rows[b] |= 1 << a
        rows[a] = row
    internal = 0
    for a in range(size):
        if is_internal_point_mask(a, n, delta):
            internal |= 1 << a
    boundary = ((1 << size) - 1) & ~internal
    return SeparationTable(n, delta, tuple(rows), internal, boundary)


def bits_to_masks(bits: int) -> list[int]:
    """Indices of set bits of a 2^n-bit set, in increasing order."""
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out
