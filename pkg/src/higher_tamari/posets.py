"""Finite posets given by cover relations, order-preserving maps and quotients.

Elements are opaque hashable keys; the poset only ever looks at indices.
Up-sets are held as Python integers used as bitsets over element indices.
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import HigherTamariError, QuotientError


class PosetError(HigherTamariError, ValueError):
    """The cover data does not describe a finite poset."""


@dataclass(frozen=True)
class FinitePoset:
    """A finite poset stored as its Hasse diagram.

    ``covers`` holds index pairs ``(i, j)`` meaning element j covers element i.
    """

    elements: tuple
    covers: frozenset
    _up: tuple = field(init=False, repr=False, compare=False)
    _down: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "covers", frozenset(self.covers))
        size = len(self.elements)
        up = [[] for _ in range(size)]
        down = [[] for _ in range(size)]
        for i, j in sorted(self.covers):
            if not (0 <= i < size and 0 <= j < size) or i == j:
                raise PosetError(f"bad cover pair {(i, j)}")
            up[i].append(j)
            down[j].append(i)
        object.__setattr__(self, "_up", tuple(tuple(x) for x in up))
        object.__setattr__(self, "_down", tuple(tuple(x) for x in down))
        index = {}
        for k, x in enumerate(self.elements):
            if x in index:
                raise PosetError(f"duplicate element {x!r}")
            index[x] = k
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.elements)

    def index_of(self, x: Hashable) -> int:
        return self._index[x]

    def upper_covers(self, i: int) -> tuple[int, ...]:
        return self._up[i]

    def lower_covers(self, i: int) -> tuple[int, ...]:
        return self._down[i]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self._down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self._up[i]]

    def topological_order(self) -> list[int]:
        """Kahn order from the minimal elements; raises on a cycle."""
        indeg = [len(d) for d in self._down]
        queue = deque(i for i, k in enumerate(indeg) if k == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in self._up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if len(order) != len(self):
            raise PosetError("cover relation contains a cycle")
        return order

    def closure(self) -> list[int]:
        """Up-set bitmask of every element (each includes the element itself)."""
        if getattr(self, "_closure_cache", None) is None:
            ups = [0] * len(self)
            for i in reversed(self.topological_order()):
                m = 1 << i
                for j in self._up[i]:
                    m |= ups[j]
                ups[i] = m
            object.__setattr__(self, "_closure_cache", ups)
        return self._closure_cache

    def leq(self, i: int, j: int) -> bool:
        return bool(self.closure()[i] >> j & 1)

    def down_sets(self) -> list[int]:
        ups = self.closure()
        downs = [0] * len(self)
        for i, m in enumerate(ups):
            for j in _bits(m):
                downs[j] |= 1 << i
        return downs

    def check(self) -> None:
        """Raise :class:`PosetError` unless covers form an irreducible DAG."""
        ups = self.closure()
        for i in range(len(self)):
            cov = self._up[i]
            for j in cov:
                via = 0
                for k in cov:
                    if k != j:
                        via |= ups[k]
                if via >> j & 1:
                    raise PosetError(
                        f"cover {self.elements[i]!r} < {self.elements[j]!r} is implied by a longer chain"
                    )

    def ranks(self) -> list[int]:
        """Length of the longest chain from a minimal element."""
        rank = [0] * len(self)
        for i in self.topological_order():
            for j in self._up[i]:
                rank[j] = max(rank[j], rank[i] + 1)
        return rank

    def relabel(self, fn) -> "FinitePoset":
        return FinitePoset(tuple(fn(x) for x in self.elements), self.covers)

    @classmethod
    def from_relation(cls, elements: Sequence, up_sets: Sequence[int]) -> "FinitePoset":
        """Build the Hasse diagram of a reflexive, transitive, antisymmetric relation.

        ``up_sets[i]`` is the bitmask of indices j with element i <= element j.
        """
        covers = set()
        for i, m in enumerate(up_sets):
            strict = m & ~(1 << i)
            for j in _bits(strict):
                if any(k != j and (up_sets[k] >> j & 1) for k in _bits(strict & ~(1 << j))):
                    continue
                covers.add((i, j))
        return cls(tuple(elements), frozenset(covers))

    @classmethod
    def from_leq(cls, elements: Sequence, leq) -> "FinitePoset":
        """Build from a comparison predicate ``leq(x, y)``."""
        els = list(elements)
        ups = []
        for x in els:
            m = 0
            for j, y in enumerate(els):
                if leq(x, y):
                    m |= 1 << j
            ups.append(m)
        return cls.from_relation(els, ups)

    def to_json(self, key=str) -> dict:
        order = sorted(range(len(self)), key=lambda i: key(self.elements[i]))
        pos = {i: k for k, i in enumerate(order)}
        return {
            "elements": [key(self.elements[i]) for i in order],
            "covers": sorted([pos[i], pos[j]] for i, j in self.covers),
        }


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class PosetMap:
    """A total function from source indices to target indices."""

    source: FinitePoset
    target: FinitePoset
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != len(self.source):
            raise ValueError("assignment must be total on the source")
        for y in self.assignment:
            if not 0 <= y < len(self.target):
                raise ValueError(f"assignment value {y} outside target")

    @classmethod
    def from_function(cls, source: FinitePoset, target: FinitePoset, fn) -> "PosetMap":
        return cls(source, target, tuple(target.index_of(fn(x)) for x in source.elements))

    def fibres(self) -> dict[int, list[int]]:
        out = defaultdict(list)
        for x, y in enumerate(self.assignment):
            out[y].append(x)
        return dict(out)


@dataclass(frozen=True)
class QuotientReport:
    is_order_preserving: bool
    is_surjective: bool
    is_full: bool
    antisymmetry_ok: bool
    transitivity_ok: bool
    counterexample: Optional[tuple] = None
    source_size: int = 0
    target_size: int = 0
    image_size: int = 0

    @property
    def is_quotient_map(self) -> bool:
        return self.is_order_preserving and self.is_surjective and self.is_full

    def to_json(self) -> dict:
        return {
            "is_order_preserving": self.is_order_preserving,
            "is_surjective": self.is_surjective,
            "is_full": self.is_full,
            "antisymmetry_ok": self.antisymmetry_ok,
            "transitivity_ok": self.transitivity_ok,
            "is_quotient_map": self.is_quotient_map,
            "counterexample": None if self.counterexample is None else [str(c) for c in self.counterexample],
            "source_size": self.source_size,
            "target_size": self.target_size,
            "image_size": self.image_size,
        }


def class_relation(source: FinitePoset, labels: Sequence[int], nclasses: int) -> list[int]:
    """R[c] = bitmask of classes z with some x ~ c, x' ~ z and x <= x'.

    Works without the source closure: reach[x] collects the labels of
    everything above x in one reverse topological sweep.
    """
    reach = [0] * len(source)
    for x in reversed(source.topological_order()):
        m = 1 << labels[x]
        for y in source.upper_covers(x):
            m |= reach[y]
        reach[x] = m
    rel = [0] * nclasses
    for x, c in enumerate(labels):
        rel[c] |= reach[x]
    return rel


def _relation_checks(rel: Sequence[int], present: int):
    """Return (antisymmetry counterexample, transitivity counterexample)."""
    anti = trans = None
    for c in _bits(present):
        for z in _bits(rel[c] & ~(1 << c)):
            if anti is None and rel[z] >> c & 1:
                anti = (c, z)
            if trans is None and rel[z] & present & ~rel[c]:
                w = next(_bits(rel[z] & present & ~rel[c]))
                trans = (c, z, w)
        if anti is not None and trans is not None:
            break
    return anti, trans


def analyze_map(f: PosetMap) -> QuotientReport:
    """Decide whether ``f`` is an order-preserving, surjective, full map."""
    src, tgt, asg = f.source, f.target, f.assignment
    tup = tgt.closure()
    counter = None

    order_ok = True
    for i, j in sorted(src.covers):
        if not tup[asg[i]] >> asg[j] & 1:
            order_ok = False
            counter = ("not order-preserving", src.elements[i], src.elements[j])
            break

    image = 0
    for y in asg:
        image |= 1 << y
    surjective = image == (1 << len(tgt)) - 1
    if not surjective and counter is None:
        missing = next(y for y in range(len(tgt)) if not image >> y & 1)
        counter = ("not surjective", tgt.elements[missing])

    rel = class_relation(src, asg, len(tgt))
    anti, trans = _relation_checks(rel, image)
    full = True
    for y in _bits(image):
        need = tup[y] & image
        if need & ~rel[y]:
            full = False
            if counter is None:
                z = next(_bits(need & ~rel[y]))
                counter = ("not full", tgt.elements[y], tgt.elements[z])
            break
    if anti is not None and counter is None:
        counter = ("antisymmetry fails", tgt.elements[anti[0]], tgt.elements[anti[1]])
    if trans is not None and counter is None:
        counter = ("transitivity fails",) + tuple(tgt.elements[k] for k in trans)

    return QuotientReport(
        is_order_preserving=order_ok,
        is_surjective=surjective,
        is_full=full,
        antisymmetry_ok=anti is None,
        transitivity_ok=trans is None,
        counterexample=counter,
        source_size=len(src),
        target_size=len(tgt),
        image_size=image.bit_count(),
    )


def image_poset(f: PosetMap) -> FinitePoset:
    """The image of ``f`` with the order induced from the target."""
    tup = f.target.closure()
    ys = sorted(set(f.assignment))
    pos = {y: k for k, y in enumerate(ys)}
    ups = []
    for y in ys:
        m = 0
        for z in _bits(tup[y]):
            if z in pos:
                m |= 1 << pos[z]
        ups.append(m)
    return FinitePoset.from_relation([f.target.elements[y] for y in ys], ups)


def quotient(p: FinitePoset, partition: Iterable[Iterable[int]] | Sequence[int]) -> FinitePoset:
    """The poset of classes of ``p``, if the induced relation is a partial order.

    ``partition`` is either a list of index blocks or a per-element label
    sequence.  Elements of the result are ``frozenset`` blocks of elements
    of ``p``.  Raises :class:`QuotientError` naming the offending classes.
    """
    labels, blocks = _normalise_partition(p, partition)
    rel = class_relation(p, labels, len(blocks))
    present = (1 << len(blocks)) - 1
    anti, trans = _relation_checks(rel, present)
    names = [frozenset(p.elements[i] for i in b) for b in blocks]
    if anti is not None:
        raise QuotientError("induced relation is not antisymmetric", [names[k] for k in anti])
    if trans is not None:
        raise QuotientError("induced relation is not transitive", [names[k] for k in trans])
    return FinitePoset.from_relation(names, rel)


def _normalise_partition(p, partition):
    part = list(partition)
    if part and all(isinstance(x, int) for x in part):
        if len(part) != len(p):
            raise ValueError("label sequence must cover every element")
        order = sorted(set(part))
        remap = {c: k for k, c in enumerate(order)}
        labels = [remap[c] for c in part]
        blocks = [[] for _ in order]
        for i, c in enumerate(labels):
            blocks[c].append(i)
        return labels, blocks
    blocks = [sorted(b) for b in part]
    labels = [-1] * len(p)
    for c, b in enumerate(blocks):
        for i in b:
            if labels[i] != -1:
                raise ValueError(f"element index {i} occurs in two blocks")
            labels[i] = c
    if -1 in labels:
        raise ValueError("partition does not cover every element")
    return labels, blocks


# ---------------------------------------------------------------- isomorphism


def _refine(p: FinitePoset) -> list[int]:
    """Stable colouring from degrees, ranks and up/down set sizes."""
    ups = p.closure()
    downs = p.down_sets()
    rank = p.ranks()
    colour = [
        (len(p.lower_covers(i)), len(p.upper_covers(i)), rank[i], ups[i].bit_count(), downs[i].bit_count())
        for i in range(len(p))
    ]
    colour = _compress(colour)
    while True:
        sig = [
            (
                colour[i],
                tuple(sorted(colour[j] for j in p.upper_covers(i))),
                tuple(sorted(colour[j] for j in p.lower_covers(i))),
            )
            for i in range(len(p))
        ]
        new = _compress(sig)
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _compress(sig: list) -> list[int]:
    table = {s: k for k, s in enumerate(sorted(set(sig)))}
    return [table[s] for s in sig]


def _canonical_colours(p: FinitePoset, q: FinitePoset):
    # refine jointly so colour numbers are comparable between the two posets
    joint = FinitePoset(
        tuple(("p", i) for i in range(len(p))) + tuple(("q", i) for i in range(len(q))),
        frozenset(p.covers) | frozenset((i + len(p), j + len(p)) for i, j in q.covers),
    )
    col = _refine(joint)
    return col[: len(p)], col[len(p) :]


def _cover_digraph(p: FinitePoset, colour: list[int]) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from((i, {"c": c}) for i, c in enumerate(colour))
    d.add_edges_from(p.covers)
    return d


def is_isomorphic(p: FinitePoset, q: FinitePoset) -> Optional[dict[int, int]]:
    """Return an index bijection p -> q preserving covers, or None.

    The refined colours prune networkx's VF2 matcher; the answer does not
    depend on them.
    """
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return None
    if not len(p):
        return {}
    cp, cq = _canonical_colours(p, q)
    if Counter(cp) != Counter(cq):
        return None
    matcher = isomorphism.DiGraphMatcher(
        _cover_digraph(p, cp), _cover_digraph(q, cq), node_match=lambda a, b: a["c"] == b["c"]
    )
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def chain(k: int) -> FinitePoset:
    return FinitePoset(tuple(range(k)), frozenset((i, i + 1) for i in range(k - 1)))


def antichain(k: int) -> FinitePoset:
    return FinitePoset(tuple(range(k)), frozenset())
