"""Exact-arithmetic toolkit for commutative association schemes: validation,
eigen/Krein data, multivariate P-/Q-polynomial structures, boundary ideals and
Gröbner bases, imprimitivity (quotient/block schemes), products, formal
duality, and composition series."""

from .errors import SchemeError
from .scheme import (Scheme, validate_scheme, intersection_numbers,
                     eigen_decomposition, krein_numbers, relabel,
                     scheme_to_json, scheme_from_json, load_scheme,
                     dump_scheme)
from .orders import (Lex, GrLex, WeightMatrix, Block, ElimGraded, Permuted,
                     make_order, classify_order, induced_order)
from .mpoly import (MPoly, normal_form, s_poly, buchberger, GroebnerBasis,
                    elimination_ideal, eliminate_vars, adjoin_and_eliminate,
                    rescale_ideal)
from .structure import (Domain, StructureVerdict, PolyFamily,
                        check_p_structure, check_q_structure,
                        associated_polynomials, boundary_ideal_generators,
                        q_polynomials, eigen_consistency,
                        search_p_structure, search_q_structure,
                        canonical_elimination_structure,
                        canonical_block_order_structure,
                        canonical_search_battery)
from .imprimitivity import (ClosedSubset, closure, all_closed_subsets,
                            is_imprimitive, dual_closed_subset,
                            quotient_scheme, block_scheme,
                            quotient_structure, block_structure,
                            q_side_structures, composition_series,
                            composition_ideal_chain)
from .products import (ProductScheme, direct_product, crested_product,
                       direct_structure, crested_p_structure,
                       crested_q_structure, recognize_direct_product,
                       full_factorization, DualityPairing,
                       find_duality_pairing, formal_duality_check,
                       duality_structure_transfer)
from .catalog import (FamilySpec, CatalogEntry, make_named_scheme,
                      intersection_array, distance_polynomials,
                      bipartite_fg_polynomials, drg_bivariate_structures)
from .verify import (census_equivalence, quotient_transfer_report,
                     block_transfer_report, verify_block_quotient_ideals)

__version__ = "0.1.0"
