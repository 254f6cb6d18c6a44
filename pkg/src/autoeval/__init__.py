"""Finite-field polynomial evaluation through Frobenius images, with exact
operation counts and a matching cost model."""

from .cost import (
    EvalPlan,
    CostQuery,
    HornerComparison,
    best_plan,
    compare_horner,
    cp,
    g1,
    g1_ext_firstmethod_bound,
    g2,
    g2_ext,
    lopt,
    m_step,
)
from .estimator import AutomorphicEvaluator, SyndromeTransformer
from .evaluators import (
    eval_best,
    eval_direct,
    eval_ext_basis,
    eval_ext_m2,
    eval_horner,
    eval_m1,
    eval_m2,
)
from .field import (
    CountingField,
    FieldContext,
    FieldElement,
    FieldError,
    FieldMismatchError,
    OpCounter,
    ff_add,
    ff_mul,
    ff_pow,
    find_irreducible,
    frobenius,
    inverse_frobenius,
    is_in_subfield,
)
from .poly import DensePoly, RadixTree, basis_split, radix_split, radix_tree, read_poly, write_poly
from .rs import (
    RSContext,
    ReceivedWord,
    SyndromeSet,
    amortized_cost,
    build_generator,
    build_rs_context,
    gamma_split,
    syndromes_automorphic,
    syndromes_horner,
)

__version__ = "0.1.0"
