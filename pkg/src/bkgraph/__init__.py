"""Exact coloring tools for (P6, apple, torch)-free graphs and the
Borodin-Kostochka bound chi <= max(Delta - 1, omega)."""

from bkgraph._core import BACKEND
from bkgraph.generators import (
    SamplerConfig,
    SamplerInfeasible,
    are_isomorphic,
    canonical_form,
    construct,
    enumerate_all,
    sample_class_member,
)
from bkgraph.graph import (
    Coloring,
    Graph,
    Graph6Error,
    GraphError,
    from_graph6,
    induced_subgraph,
    is_proper,
    max_degree,
    to_graph6,
)
from bkgraph.kempe import (
    CriticalConfig,
    RuleOutcome,
    Status,
    apply_rules,
    bk_color,
    color_profile,
    extract_config,
    kempe_component,
    kempe_swap,
)
from bkgraph.recognizers import (
    APPLE,
    CLAW,
    P6,
    TORCH,
    Pattern,
    find_hole,
    find_induced,
    is_class_member,
    recognize,
)
from bkgraph.solvers import (
    VerificationRecord,
    chromatic_number,
    clique_number,
    is_k_colorable,
    is_vertex_critical,
    verify_bk,
)

__version__ = "0.1.0"
