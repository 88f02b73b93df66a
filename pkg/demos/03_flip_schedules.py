"""Exchange schedules lifting a triangulation flip to a chain of cubillage flips.

The coordinate construction works whenever the flip set contains 1.  When it
does not, the two pre-images Q_T and Q_T' are incomparable, and the fibre
search finds another pair of pre-images joined by increasing flips.
"""
from higher_tamari import Subset, even_fullness_chain, g
from higher_tamari.errors import WitnessError
from higher_tamari.simplicial import apply_flip, enumerate_hst, flip_between, triangulation_from_internal
from higher_tamari.witness import exchange_lattice, fullness_witness


def tri(n, delta, items):
    return triangulation_from_internal(n, delta, [Subset.parse(n, s).mask for s in items])


heptagon = tri(7, 2, ["13", "16", "35", "36"])
s = Subset.parse(7, "1236")
lat = exchange_lattice(s, 7)
print("exchange lattice for 1236 in [7]:", [str(x) for x in lat.elements])
sched = even_fullness_chain(heptagon, apply_flip(heptagon, s))
for k, (a, b) in enumerate(sched.steps, 1):
    print(f"  {k}. {a} -> {b}")

t = tri(5, 2, ["24", "25"])
t2 = apply_flip(t, Subset.parse(5, "2345"))
print("\npentagon flip at 2345 (does not contain 1)")
try:
    even_fullness_chain(t, t2)
except WitnessError as exc:
    print("  coordinate chain:", exc)
sched, method = fullness_witness(t, t2)
print(f"  {method}: {[(str(a), str(b)) for a, b in sched.steps]}, g(end) == T': {g(sched.end) == t2}")

print("\nmethods used over every cover of S(n,2):")
for n in range(5, 8):
    hst = enumerate_hst(n, 2)
    counts = {}
    for i, j in hst.covers:
        _, method = fullness_witness(hst.elements[i], hst.elements[j])
        counts[method] = counts.get(method, 0) + 1
    miss = sum(1 for i, j in hst.covers if not flip_between(hst.elements[i], hst.elements[j]) & 1)
    print(f"  n={n}: {dict(sorted(counts.items()))}, flips avoiding 1: {miss}")
