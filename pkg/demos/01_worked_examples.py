"""Small worked examples: cubillages, the cross-section g, and the even-dimensional pre-image Q_T."""
from higher_tamari import InversionSet, Subset, build_Q_T, cubillage_from_inversion_set, g, g_bar
from higher_tamari.simplicial import internal_label, triangulation_from_internal
from higher_tamari.witness import U_of
from higher_tamari.zonotopal import membrane_of_contraction


def cub(n, delta, items):
    return cubillage_from_inversion_set(InversionSet.of(n, delta, [Subset.parse(n, s) for s in items]))


def tri(n, delta, items):
    return triangulation_from_internal(n, delta, [Subset.parse(n, s).mask for s in items])


q1 = cub(4, 1, ["123"])
print("Z(4,2) cubillage with inversion set {123}")
print("  internal spectrum:", q1.label())
print("  g   ->", g(q1), " internal simplices", internal_label(g(q1)))
print("  g_bar ->", g_bar(q1))
print("  membrane after contracting colour 4:", [str(x) for x in membrane_of_contraction(q1, 4).spectrum])

q2 = cub(4, 2, [])
print("\nlower cubillage of Z(4,3): internal spectrum", q2.label(), " g ->", g(q2))

hexagon = tri(6, 2, ["13", "15", "35"])
u = U_of(hexagon)
print("\nhexagon triangulation with internal diagonals 13, 15, 35")
print("  U(T) =", sorted(str(x) for x in u), f"({len(u)} sets)")
q = build_Q_T(hexagon)
print("  g(Q_T) == T:", g(q) == hexagon)
