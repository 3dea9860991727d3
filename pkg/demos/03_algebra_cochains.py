"""
Cochains of an algebra over an operad
=====================================

Given a finite dimensional P-algebra A, the cochain complex C*_P(A, A)
is realized inside End_A ⊗ P!.  Here A is the algebra of dual numbers
k[e]/e^2, viewed as an associative and as a commutative algebra.
"""

import random

from operadlab.cochain import (basis_cochains, chi_vector, cohomology_of_algebra, cup_act, delta_of_circle,
                               dual_numbers, intrinsic_bracket)
from operadlab.exactlin.linalg import veq, vscale

A = dual_numbers("Ass", 4)
print("structure constants:", [[[str(c) for c in row] for row in m] for m in A.structure["mu"]])
tab = cohomology_of_algebra(A, 4)
print("dims", tab.dims, "H", tab.h[:3])

# degree 0 counts derivations; the complex starts in arity 1
C = dual_numbers("Com", 4)
print("as a commutative algebra, H =", cohomology_of_algebra(C, 4).h[:3])

# the pre-Lie product is not a chain map, its failure is the cup product of χ
rng = random.Random(0)
f = rng.choice(basis_cochains(A, 1))
g = rng.choice(basis_cochains(A, 2))
lhs = delta_of_circle(A, f, 1, g, 2)
rhs = vscale(cup_act(A, chi_vector(A), 2, [(f, 1), (g, 2)]), -2)
print("δ(f∘g) = -2 χ(f, g):", veq(lhs, rhs))

# the bracket is graded antisymmetric
print("[g, f] = -[f, g]:", veq(intrinsic_bracket(A, g, 2, f, 1), vscale(intrinsic_bracket(A, f, 1, g, 2), -1)))
