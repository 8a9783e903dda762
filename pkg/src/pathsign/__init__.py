"""Layered tuple digraphs, their sign-derived graphs, and an exact
verification workbench with certificates."""

from .construction import (
    BaseDigraph,
    Construction,
    DEFAULT_VERTEX_BUDGET,
    LayerPartition,
    PathTable,
    build_base,
    build_derived,
    check_unique_paths,
    construct,
    edge_count_for,
    layer_partition,
    layer_sizes_for,
    path_table,
    vertex_count_for,
)
from .errors import (
    CyclicGraphError,
    FormatError,
    PathsignError,
    PreconditionError,
    SimplicityError,
    SizeBudgetError,
    UniquePathError,
)
from .formats import (
    CheckEntry,
    VerificationReport,
    export_dimacs,
    export_signed,
    import_dimacs,
    import_signed,
    load_report,
    report_bytes,
    write_checks_tsv,
    write_report,
)
from .graphs import (
    Digraph,
    NEGATIVE,
    POSITIVE,
    SignedDigraph,
    TopoResult,
    UndirectedGraph,
    induced_subdigraph,
    topological_order,
    underlying,
)
from .lemmas import (
    FourPartition,
    LemmaViolation,
    TriangleCensus,
    check_no_full_triangle,
    check_two_path,
    directed_triangle_census,
    four_color_triangle_free,
    refute_small_coloring,
    sample_acyclic_sets,
    sample_maximal_triangle_free,
    verify_digraph_theorem,
    verify_main_theorem,
    verify_suites,
)
from .solvers import (
    Budget,
    Coloring,
    CycleScan,
    DEFAULT_BUDGET,
    Dicoloring,
    SearchStats,
    SolveOutcome,
    chordless_dicycles,
    chromatic_number,
    dichromatic_number,
    is_clique,
    is_k_colorable,
    is_proper_coloring,
    is_valid_dicoloring,
    max_clique,
)

__version__ = "0.1.0"
