from .linalg import (BasedSpace, Echelon, LinMap, Subspace, Vec, invert_matrix, nullspace, rank, rref,
                     scalar, vadd, vclean, veq, vscale, vsub, vsum)
from .perms import (Perm, all_perms, average, block_sum, check_perm, compose, cycle, doubling,
                    generators, identity, inverse, perm_sign, sign, transposition)
from .complexes import CohomologyTable, ComplexRep, NotAComplex, cohomology_dims, two_term

perm_compose = compose
perm_block_sum = block_sum
