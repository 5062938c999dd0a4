"""Arc-assigned direct products of digraphs and their applications.

The package is organized around one construction: a host digraph, a family
of digraphs on a shared vertex set, and a per-arc choice of family member
multiply into a product digraph. Cycle hosts against 1-regular families
decompose predictably (via permutation cycles or rainbow circuits), unions
of unicyclic graphs transform by replication and tuple repetition, and
certified edge-magic labelings of the host push forward to the product.
"""

from .digraph import (
    Digraph,
    Graph,
    cycle_length_multiset,
    disjoint_union,
    is_eulerian,
    oriented_cycle,
    strong_components,
    weak_components,
)
from .errors import (
    AssignmentError,
    HProductError,
    InfeasiblePlanError,
    LabelingError,
    NotSimpleError,
    ParseError,
    RegularityError,
    ShapeError,
    SizeMismatchError,
)
from .labeling import (
    MagicCertificate,
    SemDigraph,
    TotalLabeling,
    amplify_magic_sums,
    even_labeling,
    odd_labeling,
    product_labeling,
    product_magic_sum,
    search_labelings,
    sem_odd_cycle,
    split_product_labeling,
    verify,
)
from .permutations import (
    CycleDecomposition,
    Permutation,
    compose,
    from_one_regular,
    parse_cycle_string,
    predict_components,
    product_of,
    to_one_regular,
)
from .product import (
    Family,
    HAssignment,
    adjacency_matrix,
    adjacency_product_check,
    flatten,
    otimes,
    otimes_h,
    star_extension,
    unflatten,
)
from .rainbow import (
    ColoredMultiDigraph,
    circuit_arc_lengths,
    circuits_partition_arcs,
    find_rainbow_circuits,
    forward_cycle_arcs,
    is_rainbow_eulerian,
    union_multidigraph,
)
from .unicyclic import (
    DecompositionPlan,
    PeriodicForm,
    RootedTree,
    UnicyclicForm,
    assemble,
    assemble_all,
    detect_period,
    execute_plan,
    form_multiset,
    orient_components,
    plan_decomposition,
    predict_from_factors,
    predict_from_reversals,
    recognize,
    reversal_assignment,
)

__version__ = "0.1.0"
