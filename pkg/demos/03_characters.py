"""Symmetric group representation content of the homology.

The group permuting the generators acts on each complex; homology
degrees become virtual characters computed from chain-level traces.  The
top degree is the character induced from a cyclic subgroup, and the
alternating trace of any permutation agrees on chains and on homology.
"""

from symhom import (decompose, homology_character,
                    induced_character_from_cyclic, irreducible_characters,
                    lefschetz_numbers, top_homology_character)
from symhom.reps import partition_string, partitions


def show(title):
    print(f"\n== {title} ==")


show("irreducible characters of the group on 4 letters")
for lam, chi in irreducible_characters(4).items():
    print(f"{partition_string(lam):>10}: "
          f"{[int(chi(mu)) for mu in partitions(4)]}")

show("top homology character for p=3")
chi = top_homology_character(3)
print("values by class:", chi.to_json_dict())
print("dimension:", int(chi.degree), "(= 3!)")
ind = induced_character_from_cyclic(4, 3)
print("equals the character induced from the cyclic subgroup:", chi == ind)

show("decomposition into irreducibles")
for lam, mult in sorted(decompose(chi).items(), reverse=True):
    if mult:
        print(f"  {partition_string(lam)}: {int(mult)}")

show("a lower homology degree, p=3, degree 2")
chi2 = homology_character(3, 2)
print("values by class:", chi2.to_json_dict())
print("multiplicities:",
      {partition_string(lam): int(m)
       for lam, m in decompose(chi2).items() if m})

show("alternating traces agree on chains and homology")
for lam in partitions(4):
    chain_side, homology_side = lefschetz_numbers(3, lam)
    print(f"class {partition_string(lam):>10}: chain side {chain_side:>4}, "
          f"homology side {homology_side:>4}")
