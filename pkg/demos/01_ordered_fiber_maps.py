"""Maps between finite ordinals with totally ordered fibers.

A morphism [m] -> [n] assigns to every target point the ordered tuple of
its preimages.  Composition splices these fiber orders together; every
morphism factors uniquely as a permutation followed by an
order-preserving map.  This demo walks through composition,
factorization and the counting formulas.
"""

from math import comb, factorial

from symhom import (DeltaSMorphism, Permutation, compose, enumerate_epis,
                    enumerate_morphisms, epi_count, hom_count, to_permutation)


def show(title):
    print(f"\n== {title} ==")


show("a morphism and its fibers")
# [3] -> [1]: fibers are ordered tuples; (2, 0) means 2 comes before 0.
f = DeltaSMorphism([(2, 0), (1, 3)])
print("f:", f)
print("source", f.source, "-> target", f.target, "| surjective:", f.is_epi)

show("composition splices fiber orders")
g = DeltaSMorphism([(0, 1)])                        # [1] -> [0]
fg = compose(f, g)
print("g:", g)
print("f then g:", fg)

show("unique factorization: permutation, then order-preserving map")
sigma, phi = f.factorize()
print("permutation part:", sigma.images)
print("order-preserving part:", phi)
print("recomposes to f:", compose(sigma.as_morphism(), phi.as_morphism()) == f)

show("permutations compose left to right")
s = Permutation.transposition(4, 0, 1)
t = Permutation.transposition(4, 1, 2)
print("(s*t)(0) =", (s * t)(0), " t(s(0)) =", t(s(0)))
print("sign of a 3-cycle:", Permutation((1, 2, 0)).sign())

show("counting morphisms and surjections")
for m, n in [(2, 1), (3, 1), (3, 2)]:
    epis = enumerate_epis(m, n)
    print(f"epis [{m}]->[{n}]: {epi_count(m, n)} "
          f"(formula (m+1)! C(m,n) = {factorial(m + 1) * comb(m, n)}, "
          f"enumerated {len(epis)})")
print("all morphisms [2]->[2]:", hom_count(2, 2),
      "enumerated:", len(enumerate_morphisms(2, 2)))

show("automorphisms are permutations")
aut = [f for f in enumerate_epis(2, 2)]
print("epis [2]->[2] are the", len(aut), "permutations; first three:",
      [to_permutation(a).images for a in aut[:3]])
