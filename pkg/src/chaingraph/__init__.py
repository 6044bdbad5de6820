"""Chain-graph structure algorithms.

Validation and structural operators for mixed graphs without semi-directed
cycles, separation queries under the moralization (lwf) and augmentation
(amp) criteria, block-recursive statement generation, Markov equivalence,
and a Gaussian oracle that certifies verdicts numerically.
"""

from .errors import (
    GraphError,
    NotAdgError,
    NotUndirectedError,
    NumericalFailureError,
    OverlapError,
    ParseError,
    SelfLoopError,
    SemiDirectedCycleError,
    TooLargeError,
    UnknownVertexError,
    VertexMismatchError,
)
from .graphs import (
    ChainGraph,
    ComponentStructure,
    an_closure,
    at_closure,
    boundary,
    build_graph,
    chain_components,
    children,
    closure,
    co_closure,
    graph_union,
    induced_subgraph,
    is_ancestral,
    is_anterior,
    is_coherent,
    neighbors,
    parents,
    skeleton,
    terminal_components,
    undirected_part,
)
from .structures import (
    ARROW_LINE,
    IMMORALITY,
    LINE_ARROW,
    DoubleFlag,
    Flag,
    MinimalComplex,
    augmented,
    double_flags,
    extended_subgraph,
    flags,
    immoralities,
    minimal_complexes,
    moral,
    spanned_subgraph,
)
from .separation import (
    AMP,
    CIQuery,
    CIStatement,
    LWF,
    adg_local_statements,
    amp_separated,
    block_recursive_statements,
    enumerate_triples,
    lwf_separated,
    separation_substrate,
    udg_separated,
)
from .equivalence import (
    EquivFingerprint,
    adg_equivalent,
    amp_equivalent,
    enumerate_chain_graphs,
    fingerprint,
    flag_positions,
    lwf_amp_coincide,
    lwf_equivalent,
    same_skeleton,
)
from .gaussian import (
    CertificationReport,
    GaussianSem,
    Matrix,
    certify,
    conditional_covariance,
    gaussian_ci,
    joint_covariance,
    sample_sem,
)
from .parsing import GraphDocument, parse_graph, serialize_graph

__version__ = "0.1.0"

__all__ = [
    "AMP",
    "ARROW_LINE",
    "CIQuery",
    "CIStatement",
    "CertificationReport",
    "ChainGraph",
    "ComponentStructure",
    "DoubleFlag",
    "EquivFingerprint",
    "Flag",
    "GaussianSem",
    "GraphDocument",
    "GraphError",
    "IMMORALITY",
    "LINE_ARROW",
    "LWF",
    "Matrix",
    "MinimalComplex",
    "NotAdgError",
    "NotUndirectedError",
    "NumericalFailureError",
    "OverlapError",
    "ParseError",
    "SelfLoopError",
    "SemiDirectedCycleError",
    "TooLargeError",
    "UnknownVertexError",
    "VertexMismatchError",
    "adg_equivalent",
    "adg_local_statements",
    "amp_equivalent",
    "amp_separated",
    "an_closure",
    "at_closure",
    "augmented",
    "block_recursive_statements",
    "boundary",
    "build_graph",
    "certify",
    "chain_components",
    "children",
    "closure",
    "co_closure",
    "conditional_covariance",
    "double_flags",
    "enumerate_chain_graphs",
    "enumerate_triples",
    "extended_subgraph",
    "fingerprint",
    "flag_positions",
    "flags",
    "gaussian_ci",
    "graph_union",
    "immoralities",
    "induced_subgraph",
    "is_ancestral",
    "is_anterior",
    "is_coherent",
    "joint_covariance",
    "lwf_amp_coincide",
    "lwf_equivalent",
    "lwf_separated",
    "minimal_complexes",
    "moral",
    "neighbors",
    "parents",
    "parse_graph",
    "sample_sem",
    "same_skeleton",
    "separation_substrate",
    "serialize_graph",
    "skeleton",
    "spanned_subgraph",
    "terminal_components",
    "udg_separated",
    "undirected_part",
]
