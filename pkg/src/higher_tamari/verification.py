"""End-to-end checks that g is a quotient map of posets, one (n, delta) cell at a time."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .crosssection import g
from .errors import EnumerationLimitError, QuotientError
from .oracles import catalan, commutation_classes
from .posets import PosetMap, analyze_map, is_isomorphic, quotient
from .simplicial import enumerate_hst, validate
from .zonotopal import bruhat_enumeration, internal_size, spectrum_size, validate_cubillage

DEFAULT_GRID = tuple(
    [(1, n) for n in range(4, 8)] + [(2, n) for n in range(4, 8)] + [(3, n) for n in range(5, 7)]
)
EXTENDED_GRID = DEFAULT_GRID + ((1, 8), (3, 7), (4, 6), (4, 7))


@dataclass
class CellReport:
    n: int
    delta: int
    passed: bool = True
    excluded: bool = False
    checks: dict = field(default_factory=dict)
    counterexample: Optional[list] = None
    sizes: dict = field(default_factory=dict)
    seconds: int = 0

    def fail(self, name: str, counterexample=None):
        self.checks[name] = False
        self.passed = False
        if counterexample is not None and self.counterexample is None:
            self.counterexample = [name] + [str(c) for c in counterexample]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "passed": self.passed,
            "excluded": self.excluded,
            "checks": dict(sorted(self.checks.items())),
            "counterexample": self.counterexample,
            "sizes": dict(sorted(self.sizes.items())),
            "milliseconds": self.seconds,
        }


def verify_cell(
    n: int,
    delta: int,
    max_elements: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> CellReport:
    """Enumerate B(n, delta+1) and S(n, delta) and check g between them.

    Cells that exceed the limits come back with ``excluded`` set and a size
    report instead of a failure.
    """
    rep = CellReport(n, delta)
    t0 = time.monotonic()
    try:
        benum = bruhat_enumeration(n, delta, max_elements, max_seconds)
        s = enumerate_hst(n, delta, max_elements, max_seconds)
    except EnumerationLimitError as exc:
        rep.excluded = True
        rep.sizes = {"kind": exc.kind, "reached": exc.reached, "limit": str(exc.limit)}
        rep.seconds = int(1000 * (time.monotonic() - t0))
        return rep
    b = benum.poset
    rep.sizes = {"bruhat": len(b), "hst": len(s)}

    bad = next((q for q in b.elements if not validate_cubillage(q)), None)
    rep.checks["cardinality"] = bad is None
    if bad is not None:
        r = validate_cubillage(bad)
        rep.fail("cardinality", [bad, r.reason, r.detail])
    rep.sizes["spectrum"] = spectrum_size(n, delta)
    rep.sizes["internal_spectrum"] = internal_size(n, delta)

    bad_t = next((t for t in s.elements if not validate(t)), None)
    rep.checks["triangulations_valid"] = bad_t is None
    if bad_t is not None:
        rep.fail("triangulations_valid", [bad_t])

    if delta == 1 and n <= 5:
        ok = len(b) == commutation_classes(n)
        rep.checks["commutation_classes"] = ok
        if not ok:
            rep.fail("commutation_classes", [len(b), commutation_classes(n)])
    if delta == 2:
        ok = len(s) == catalan(n - 2)
        rep.checks["catalan"] = ok
        if not ok:
            rep.fail("catalan", [len(s), catalan(n - 2)])

    sidx = {t.masks: k for k, t in enumerate(s.elements)}
    labels = []
    for q in b.elements:
        k = sidx.get(g(q).masks)
        if k is None:
            rep.fail("g_lands_in_S", [q, g(q)])
            rep.seconds = int(1000 * (time.monotonic() - t0))
            return rep
        labels.append(k)
    rep.checks["g_lands_in_S"] = True

    report = analyze_map(PosetMap(b, s, tuple(labels)))
    for name in ("is_order_preserving", "is_surjective", "is_full"):
        ok = getattr(report, name)
        rep.checks[name] = ok
        if not ok:
            rep.fail(name, report.counterexample)

    try:
        quo = quotient(b, labels)
        rep.checks["quotient_is_poset"] = True
        iso = is_isomorphic(quo, s)
        rep.checks["quotient_isomorphic"] = iso is not None
        if iso is None:
            rep.fail("quotient_isomorphic", [len(quo), len(s)])
    except QuotientError as exc:
        rep.fail("quotient_is_poset", [str(exc)] + list(exc.classes))
    rep.seconds = int(1000 * (time.monotonic() - t0))
    return rep
