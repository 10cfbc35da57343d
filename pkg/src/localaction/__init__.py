"""Local action diagrams: P-closed groups acting on trees, computed at desk scale."""

from .classify import catalog, dedup_by_iso, orbit_pairings, pair_classes
from .constructors import SymbolicGroup, box_product, burger_mozes, from_pair
from .correspondence import recompute_lad
from .deltatree import ball_group, build_ball, check_independence, local_action_of
from .diagram import (
    INF,
    Arc,
    ConcreteAction,
    DiagramError,
    LocalActionDiagram,
    SymbolicAction,
    dumps,
    loads,
    validate,
)
from .isomorphism import iso
from .perm import FinitePermGroup, action_flags, group_order, orbits, perm_isomorphic, point_stabilizer
from .properties import (
    compact_generation,
    g_plus_trivial,
    irreducible,
    is_geometrically_dense,
    local_compactness,
    property_report,
    simplicity_report,
    std_membership,
)
from .scopo import cotree_scopo, scopo_features, scopos, smallest_cotree

__all__ = [
    "INF", "Arc", "ConcreteAction", "DiagramError", "FinitePermGroup", "LocalActionDiagram", "SymbolicAction",
    "SymbolicGroup", "action_flags", "ball_group", "box_product", "build_ball", "burger_mozes", "catalog",
    "check_independence", "compact_generation", "cotree_scopo", "dedup_by_iso", "dumps", "from_pair",
    "g_plus_trivial", "group_order", "irreducible", "is_geometrically_dense", "iso", "loads", "local_action_of",
    "local_compactness", "orbit_pairings", "orbits", "pair_classes", "perm_isomorphic", "point_stabilizer",
    "property_report", "recompute_lad", "scopo_features", "scopos", "simplicity_report", "smallest_cotree",
    "std_membership", "validate",
]
