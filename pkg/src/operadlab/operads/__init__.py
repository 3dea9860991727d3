"""Arity-truncated operads: free, presented, catalog models and constructions."""
from .base import DEFAULT_CAP, MAX_CAP, Operad, ResourceBound, block_perm, check_operad_axioms, sigma_character
from .free import (FreeOperad, Generator, GeneratorSet, InconsistentPresentation, Presentation,
                   PresentedOperad, ass_presentation, com_presentation, d_presentation, free_operad,
                   lie_presentation, mag_presentation, parse_tree, prelie_presentation,
                   presented_operad, quadratic_dual, sym_presentation, tree_from_string)
from .catalog import (CATALOG_NAMES, Ass, AssWedgeAss, CatalogEntry, Com, FreeProductAss, Lie,
                      NonSigmaOneDim, PreLie, UpToTwo, catalog)
from .constructions import (Endomorphism, Suspension, Symmetrization, Tensor, endomorphism_operad,
                            koszul_place_sign, suspension, symmetrization, tensor)
