"""Dual eigenpairs of dual tensors and dual eigenvector centrality of hypergraphs."""

__version__ = "0.1.0"

from .centrality import (
    DualCentralityResult,
    RankTable,
    builtin_instance,
    dual_centrality,
    rank_vertices,
    table_match,
)
from .dual import DualNumber
from .dualeig import (
    DualEigenPair,
    build_m_general,
    build_m_symmetric,
    dual_eigenpair,
    dual_part_vector,
    lambda_dual,
    tie_difference,
    verify_dual_eigenpair,
)
from .hypergraph import (
    Hypergraph,
    Perturbation,
    adjacency_tensor,
    parse_hypergraph,
    parse_perturbation,
)
from .msolve import MMatrix, group_apply, group_inverse, left_null_vector, make_mmatrix, one_inverse_principal
from .spectral import PerronPair, SpectralConfig, perron_pair
from .tensor import SparseSymTensor, dual_tensor_apply, is_weakly_irreducible, tensor_apply
