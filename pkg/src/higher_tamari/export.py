"""Canonical JSON and Graphviz DOT serialisation.

Canonical JSON means sorted keys, compact separators, subsets as ascending
integer lists and subset lists sorted as integer lists.  Two equal objects
always serialise to identical bytes, which the cache and the schedule
hashes rely on.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Callable, Optional

from .errors import InvalidObjectError
from .ground import Subset, lex_key, mask_of, mask_str, members_of
from .posets import FinitePoset
from .simplicial import Triangulation, internal_label, validate
from .zonotopal import Cubillage, InversionSet, inversion_set_of, validate_cubillage

FORMAT_VERSION = 1


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def digest(obj: Any) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()


def _sorted_lists(masks) -> list[list[int]]:
    return [members_of(m) for m in sorted(masks, key=lex_key)]


# ---------------------------------------------------------------- objects


def triangulation_to_json(t: Triangulation) -> dict:
    return {"n": t.n, "delta": t.delta, "simplices": _sorted_lists(t.masks)}


def triangulation_from_json(data: dict, check: bool = True) -> Triangulation:
    try:
        n, delta = int(data["n"]), int(data["delta"])
        simp = [mask_of(s) for s in data["simplices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidObjectError(f"malformed triangulation JSON: {exc}") from exc
    _check_range(simp, n)
    t = Triangulation(n, delta, frozenset(simp))
    if check:
        rep = validate(t)
        if not rep:
            raise InvalidObjectError(f"invalid triangulation: {rep.reason}: {rep.detail}")
    return t


def cubillage_to_json(q: Cubillage, with_inversions: bool = True) -> dict:
    out = {"n": q.n, "dim": q.dim, "spectrum": _sorted_lists(q.spectrum_masks())}
    if with_inversions and q.delta >= 0:
        out["inversion_set"] = _sorted_lists(inversion_set_of(q).masks)
    return out


def cubillage_from_json(data: dict, check: bool = True) -> Cubillage:
    try:
        n, dim = int(data["n"]), int(data["dim"])
        spec = [mask_of(s) for s in data["spectrum"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidObjectError(f"malformed cubillage JSON: {exc}") from exc
    _check_range(spec, n)
    bits = 0
    for m in spec:
        bits |= 1 << m
    q = Cubillage(n, dim - 1, bits)
    if check:
        rep = validate_cubillage(q)
        if not rep:
            raise InvalidObjectError(f"invalid cubillage: {rep.reason}: {rep.detail}")
        if "inversion_set" in data:
            inv = frozenset(mask_of(s) for s in data["inversion_set"])
            if inv != inversion_set_of(q).masks:
                raise InvalidObjectError("declared inversion set does not match the spectrum")
    return q


def _check_range(masks, n):
    if not 1 <= n <= 16:
        raise InvalidObjectError(f"n={n} out of range")
    for m in masks:
        if m >> n:
            raise InvalidObjectError(f"subset {members_of(m)} not inside [{n}]")


def inversion_set_to_json(inv: InversionSet) -> dict:
    return {"n": inv.n, "delta": inv.delta, "members": _sorted_lists(inv.masks)}


def load_object(data: dict):
    """Decode either kind of object from its JSON form."""
    if "simplices" in data:
        return triangulation_from_json(data)
    if "spectrum" in data:
        return cubillage_from_json(data)
    raise InvalidObjectError("JSON object is neither a triangulation nor a cubillage")


def object_to_json(x) -> dict:
    if isinstance(x, Triangulation):
        return triangulation_to_json(x)
    if isinstance(x, Cubillage):
        return cubillage_to_json(x, with_inversions=False)
    if isinstance(x, Subset):
        return {"n": x.n, "members": x.to_list()}
    if isinstance(x, frozenset):
        return {"class": sorted((object_to_json(y) for y in x), key=dumps)}
    return {"value": str(x)}


# ---------------------------------------------------------------- posets


def poset_to_json(p: FinitePoset, kind: str, n: int, delta: int) -> dict:
    """Canonical form: elements sorted by their own canonical JSON."""
    encoded = [object_to_json(x) for x in p.elements]
    keys = [dumps(e) for e in encoded]
    order = sorted(range(len(p)), key=lambda i: keys[i])
    pos = {i: k for k, i in enumerate(order)}
    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "n": n,
        "delta": delta,
        "size": len(p),
        "elements": [encoded[i] for i in order],
        "covers": sorted([pos[i], pos[j]] for i, j in p.covers),
    }


def poset_from_json(data: dict) -> FinitePoset:
    kind = data.get("kind")
    if kind == "hst":
        els = [triangulation_from_json(e, check=False) for e in data["elements"]]
    elif kind == "bruhat":
        els = [cubillage_from_json(e, check=False) for e in data["elements"]]
    else:
        raise InvalidObjectError(f"unknown poset kind {kind!r}")
    return FinitePoset(tuple(els), frozenset((i, j) for i, j in data["covers"]))


# ---------------------------------------------------------------- schedules


def schedule_to_json(schedule) -> dict:
    steps = []
    for k, (a, b) in enumerate(schedule.steps):
        steps.append({"index": k, "remove": a.to_list(), "add": b.to_list()})
    cubs = schedule.replay()
    for step, q in zip(steps, cubs[1:]):
        step["sha256"] = digest(cubillage_to_json(q, with_inversions=False))
    return {
        "start": cubillage_to_json(schedule.start, with_inversions=False),
        "end": cubillage_to_json(schedule.end, with_inversions=False),
        "steps": steps,
        "length": len(steps),
    }


# ---------------------------------------------------------------- text and DOT


def default_label(x) -> str:
    if isinstance(x, Triangulation):
        return internal_label(x)
    if isinstance(x, Cubillage):
        return x.label()
    return str(x)


def hasse_dot(p: FinitePoset, name: str = "poset", label: Optional[Callable] = None) -> str:
    """Graphviz digraph of the Hasse diagram, one rank per row, minimum at the bottom."""
    label = label or default_label
    labels = [label(x) for x in p.elements]
    order = sorted(range(len(p)), key=lambda i: labels[i])
    node = {i: f"n{k}" for k, i in enumerate(order)}
    ranks = p.ranks()
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i in order:
        lines.append(f'  {node[i]} [label="{labels[i]}"];')
    for r in sorted(set(ranks)):
        same = " ".join(node[i] for i in order if ranks[i] == r)
        lines.append(f"  {{ rank=same; {same} }}")
    for i, j in sorted(p.covers, key=lambda e: (node[e[0]], node[e[1]])):
        lines.append(f"  {node[i]} -> {node[j]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_text(p: FinitePoset, label: Optional[Callable] = None) -> str:
    label = label or default_label
    ranks = p.ranks()
    out = []
    for r in sorted(set(ranks)):
        items = sorted(label(p.elements[i]) for i in range(len(p)) if ranks[i] == r)
        out.append(f"rank {r}: " + "  ".join(items))
    return "\n".join(out) + "\n"


def subset_text(masks, n: int) -> str:
    return "{" + ",".join(mask_str(m, n) for m in sorted(masks, key=lambda m: (m.bit_count(), lex_key(m)))) + "}"
