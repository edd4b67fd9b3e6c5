"""Non-adaptive additive-query plans for hidden weighted hypergraphs of constant rank."""

from .construct import (
    ConstructionConfig,
    ConstructionFailure,
    build_case1,
    build_case2,
    build_detecting_set,
    build_search_set,
    build_zero_test_set,
    free_indices,
    las_vegas_construct,
    lift_to_queries,
    sample_disjoint,
)
from .decode import DecodeResult, consistency_check, decode_exhaustive
from .field import INFINITY, FieldSpec, field_inv, select_prime
from .hypergraph import Hypergraph, additive_query, candidate_edges, graph_diff, random_hypergraph
from .plan import QueryPlan, ZeroTestSet, answer_plan
from .tensor import (
    DisjointTuple,
    SymTensor,
    adjacency_tensor,
    diag_values,
    eval_diag,
    evaluate,
    polarize,
    surjection_count,
    wt,
    wt_r,
)
from .verify import (
    BudgetExceeded,
    VerifyReport,
    check_column_independence,
    check_iota_inequality,
    stat_check_eliminate,
    stat_check_prime_elim,
    verify_detecting,
    verify_search,
    verify_zero_test,
)

__version__ = "0.1.0"
