"""quillenlab: admissible collections, signed cycles, and nonzero
top-homology certificates on the poset of elementary abelian p-subgroups
of a finite group, with exhaustive desk-scale searches.
"""

from .fields import Field, ExtensionField, field_create, field_from_order
from .elements import (
    Perm, Mat, Coset, parse_perm, conjugate, commutes, element_order,
    beta_matrix, transvection, block_diag, element_to_json, element_from_json,
)
from .groups import (
    GroupSpec, CapExceeded, named_group, enumerate_group, group_data,
    centralizes, normalizes_cyclic, central_p_elements, is_maximal_elem_abelian,
)
from .snf import smith_normal_form, verify_certificate
from .complexes import (
    SubgroupNode, ap_poset, OrderComplex, homology, p_rank, qdp_check,
)
from .admissible import (
    index_tuples, signature, sign_vectors, delta_vectors,
    ElemAbelianBasis, SubspaceOfE, Collection, collection_from_json,
    is_faithful, is_faithful_full, is_admissible, pstable_obstruction,
    ObstructionCertificate,
)
from .cycles import (
    Flag, IntChain, sigma_flag, tau_flag, build_ZE, chain_boundary,
    boundary_identity_check, CycleSpec, build_ZG, coefficient_tables, standard_weights,
    delta_cycle_spec, coefficient_formula_report, certify_nonzero_class,
)
from .constructions import (
    symmetric_alternating, a8_p3, sl42, sl62, linear_d_gt_1, linear_d_eq_1,
    projective_linear, obstruction_family, quotient_collection,
    multiplicative_order,
)
from .search import search_admissible, SearchLimits, SearchResult
from .suite import paper_suite

__version__ = "0.1.0"
