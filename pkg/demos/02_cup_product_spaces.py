"""
Which elements act like a cup product
=====================================

An element of (P ⊗ P!)(n) defines an n-ary operation on cochains.
The subspace Z_P(n) collects those that are closed for the cup action.
For Ass it is the whole regular representation; for Lie and Com it has dimension (n-1)!.
"""

from math import factorial

from operadlab.cupnat import L_map, is_cup_closed, zp_closed_under_composition, zp_solve
from operadlab.liecplx import catalog_chi
from operadlab.operads import catalog

for name in ("Ass", "Com", "Lie"):
    dims = [len(zp_solve(name, n)) for n in (1, 2, 3)]
    print(f"{name}: dim Z_P(n) for n = 1, 2, 3 ->", dims)
print("compare n! =", [factorial(n) for n in (1, 2, 3)])

# two compatible products already give four binary cup operations
print("D: dim Z_P(2) =", len(zp_solve("D", 2)))

# the canonical element χ is one of them
T, chi = catalog_chi("Ass", 3)
print("χ in Z_Ass(2):", is_cup_closed("Ass", chi.comps[2], 2))

# Lie words map into Z_Ass
Lm = L_map("Ass", 4)
w = catalog("Lie", 4).P.basis(3)[0]
print("image of a Lie word of arity 3 is closed:", is_cup_closed("Ass", Lm.apply({w: 1}, 3), 3, cap=4))

# and Z_Ass is closed under operadic composition
r = zp_closed_under_composition("Ass", 4)
print("compositions checked:", r["checked"], "failures:", len(r["failures"]))
