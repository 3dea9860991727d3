"""
Natural operations as decorated trees
=====================================

Operations on C*_P(A, A) that only use the operad structure are described
by trees with white vertices (cochain inputs) and black vertices decorated
by P!.  We evaluate a few of them on a small associative algebra and look
at how the differential acts on them.
"""

from operadlab.cochain import PAlgebra, _library, basis_cochains, chi_vector, prelie_circle
from operadlab.cupnat import (bracket_op, cup_tree_op, delta_on_op, enumerate_trees, identity_op, prelie_op,
                              projection_op, tree_string)
from operadlab.exactlin.linalg import veq, vscale

# a two dimensional associative algebra with a left unit
A = PAlgebra("Ass", 2, _library("Ass", 2)[2], 4)
B1, B2 = basis_cochains(A, 1), basis_cochains(A, 2)

# the shapes available for two arity-one inputs in degree one
for t in enumerate_trees((1, 1), 2, 1)[:4]:
    print(tree_string(t))
print("...", len(enumerate_trees((1, 1), 2, 1)), "trees in total")

pre = prelie_op(A.P_dual)
f, g = B2[1], B1[0]
print("tree pre-Lie agrees with the direct one:", veq(pre(A, [(f, 2), (g, 1)]), prelie_circle(A, f, 2, g, 1)))

# δ of an operation: the identity and the bracket are cycles,
# the pre-Lie product is not, and its boundary is -2 times the χ cup
cup = cup_tree_op(chi_vector(A), 2, A.P_dual)
dpre = delta_on_op(pre, A)
dbr = delta_on_op(bracket_op(A.P_dual), A)
did = delta_on_op(identity_op(), A)
args = [(B1[1], 1), (B2[3], 2)]
print("δ(id) = 0:", all(did([(h, 1)]) == {} for h in B1))
print("δ(bracket) = 0:", dbr(args) == {})
print("δ(pre-Lie) = -2 cup:", veq(dpre(args), vscale(cup(A, args), -2)))

# projecting onto one arity is natural but not closed
dp = delta_on_op(projection_op(1), A)
print("δ(projection) vanishes:", not any(dp([(h, 1)]) for h in B1))
