"""
Soul complexes of the classical operads
=======================================

Each operad P with a quadratic dual gives a dg Lie algebra built from P ⊗ P!.
Its Σ-invariant part, with the differential [χ, -], is the soul complex.
We print its dimensions and cohomology for a few catalog operads.
"""

from operadlab.liecplx import nonsigma_soul_cohomology, soul_cohomology

# the Ass complex has m! cells in degree m-1 and is acyclic
for name, cap in [("Ass", 6), ("Com", 6), ("Lie", 6), ("Mag", 4), ("D", 4)]:
    tab = soul_cohomology(name, cap)
    print(f"{name:4s} dims {tab.dims}")
    print(f"     H    {tab.reliable_h()}   (top degree is cut off by the arity cap)")

# Com and Lie: a single map 1 -> 1, an isomorphism, so nothing survives
# Mag and D (two compatible products) each have a one dimensional H^1

# Without symmetric groups the unital versions are acyclic
for name in ("uAss", "uMag"):
    print(name, nonsigma_soul_cohomology(name, 5).reliable_h())
