"""
A complex of permutations
=========================

The permutations of all sizes form a cochain complex whose differential
sums over the ways of doubling one letter.  Every permutation reduces to
a primitive one by undoing doublings, and the complex splits into one
block per primitive.  Every block is acyclic.
"""

from operadlab.exactlin.complexes import cohomology_dims
from operadlab.permcplx import (block_table, grade, perm_complex, perm_differential, primitive_contraction,
                                primitives)

print("d(1) =", perm_differential({(1,): 1}, 1))
print("d(21) =", perm_differential({(2, 1): 1}, 2))

s = (4, 5, 1, 2, 3)
print(s, "contracts to", primitive_contraction(s), "with grade", grade(s).g)

print("primitive counts:", [len(primitives(k)) for k in range(1, 6)])

tab = cohomology_dims(perm_complex(6))
print("whole complex: dims", tab.dims, "H", tab.reliable_h())

# blocks of the primitives of size <= 4, truncated at arity 5
for row in block_table(5):
    if len(row["kappa"]) <= 4:
        print(row["kappa"], row["sizes"], "H", row["h"][:-1])
print("blocks of size-5 primitives: one cell each, in arity 5")
