"""Property predicates of the universal group, read off the diagram.

Every predicate returns a :class:`Verdict`.  Concrete local actions are
decided by computation.  Symbolic ones are decided by their declared flags,
and a missing flag makes the verdict ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .diagram import ConcreteAction, LocalActionDiagram, SymbolicAction
from .perm import action_flags
from .scopo import (
    all_cotrees,
    cotree_scopo,
    is_cycle_graph,
    leaves,
    scopo_features,
    scopos,
    smallest_cotree,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    value: str
    reasons: tuple[str, ...] = ()
    witness: Any = None

    def __post_init__(self):
        if self.value not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict {self.value!r}")

    def __bool__(self) -> bool:
        return self.value == YES

    def to_json_obj(self) -> dict:
        obj: dict[str, Any] = {"value": self.value}
        if self.reasons:
            obj["reasons"] = list(self.reasons)
        if self.witness is not None:
            obj["witness"] = self.witness
        return obj


def _conjunction(parts: Iterable[tuple[bool | None, str]]) -> Verdict:
    """``yes`` when every part holds; failing parts name themselves as reasons."""
    failed, unknown = [], []
    for holds, reason in parts:
        if holds is False:
            failed.append(reason)
        elif holds is None:
            unknown.append(reason)
    if failed:
        return Verdict(NO, tuple(failed))
    if unknown:
        return Verdict(UNKNOWN, tuple(f"undeclared: {r}" for r in unknown))
    return Verdict(YES)


def vertex_property(d: LocalActionDiagram, v: str, name: str) -> bool | None:
    """Whether ``G(v)`` has property ``name``; ``None`` when undeclared."""
    act = d.actions[v]
    if isinstance(act, SymbolicAction):
        return act.flag(name)
    group = d.group(v)
    if name in ("closed", "compactly_generated", "subdegree_finite", "stabilizer_orbits_finite"):
        return True
    flags = action_flags(group)
    if name == "semiregular":
        return flags.semiregular
    if name == "nontrivial":
        return flags.nontrivial
    if name == "generated_by_point_stabilizers":
        # The trivial group is generated by its (trivial) point stabilizers.
        return flags.generated_by_point_stabilizers or not flags.nontrivial
    raise KeyError(name)


# -- structure -----------------------------------------------------------------


def irreducible(d: LocalActionDiagram) -> Verdict:
    found = scopos(d)
    if found == [frozenset()]:
        return Verdict(YES, witness={"scopos": [[]]})
    other = next(s for s in found if s)
    return Verdict(NO, ("a nonempty scopo exists",), {"scopo": sorted(other)})


def is_geometrically_dense(d: LocalActionDiagram) -> Verdict:
    feats = scopo_features(d)
    if feats.empty:
        return Verdict(YES, witness=feats.to_json_obj())
    reasons = []
    if feats.stray_leaves:
        reasons.append(f"stray leaf {', '.join(feats.stray_leaves)}")
    if feats.is_focal_cycle:
        reasons.append("Δ is a focal cycle")
    if feats.stray_half_trees:
        reasons.append(f"stray half-tree beyond {', '.join(feats.stray_half_trees)}")
    return Verdict(NO, tuple(reasons), feats.to_json_obj())


def no_stray_leaf_shortcut(d: LocalActionDiagram) -> bool | None:
    """For a finite graph that is not a cycle, density is equivalent to having
    no stray leaves.  ``None`` when the shortcut does not apply."""
    if is_cycle_graph(d):
        return None
    return not scopo_features(d).stray_leaves


# -- group properties ----------------------------------------------------------


def g_plus_trivial(d: LocalActionDiagram) -> Verdict:
    """The subgroup generated by arc stabilizers is trivial iff every local
    action is semiregular."""
    return _conjunction((vertex_property(d, v, "semiregular"), f"G({v}) is not semiregular") for v in d.vertices)


def simplicity_report(d: LocalActionDiagram) -> Verdict:
    """Whether the universal group is nondiscrete, abstractly simple and acts
    with translation.

    The criterion quantifies over invariant subtrees.  When the diagram is
    irreducible the whole tree is the only candidate, so it is decided here;
    otherwise the verdict is ``unknown``.
    """
    irr = irreducible(d)
    if irr.value != YES:
        return Verdict(UNKNOWN, ("not decided: Δ is reducible, so a proper invariant subtree must be examined",),
                       irr.witness)
    parts: list[tuple[bool | None, str]] = [(d.is_tree(), "Γ is not a tree")]
    for v in d.vertices:
        parts.append((vertex_property(d, v, "closed"), f"G({v}) is not closed"))
        parts.append((vertex_property(d, v, "generated_by_point_stabilizers"),
                      f"G({v}) is not generated by point stabilizers"))
    nontrivial = [vertex_property(d, v, "nontrivial") for v in d.vertices]
    some = True if any(n is True for n in nontrivial) else (None if None in nontrivial else False)
    parts.append((some, "every G(v) is trivial"))
    return _conjunction(parts)


def local_compactness(d: LocalActionDiagram) -> Verdict:
    """Point stabilizers of ``G(o(a))`` have finite orbits, for every arc ``a``
    whose reverse is not in the scopo of the smallest cotree."""
    cotree = smallest_cotree(d)
    oc = cotree_scopo(d, cotree)
    relevant = sorted({d.origin(a) for a in d.arcs if d.reverse(a) not in oc})
    v = _conjunction(
        (vertex_property(d, x, "stabilizer_orbits_finite"), f"point stabilizers of G({x}) have infinite orbits")
        for x in relevant
    )
    return Verdict(v.value, v.reasons, {"cotree": sorted(cotree.vertices), "checked_vertices": relevant})


def compact_generation(d: LocalActionDiagram) -> Verdict:
    """Every vertex of some smallest cotree carries a compactly generated
    local action.  When the graph is a tree the smallest cotree is not unique
    and every minimal one is tried."""
    lc = local_compactness(d)
    if lc.value != YES:
        return Verdict(UNKNOWN, ("not applicable: local compactness is not established",))
    if d.is_tree():
        candidates = [c for c in all_cotrees(d) if len(c.vertices) == 1]
    else:
        candidates = [smallest_cotree(d)]
    best: Verdict | None = None
    for c in candidates:
        v = _conjunction((vertex_property(d, x, "compactly_generated"), f"G({x}) is not compactly generated")
                         for x in sorted(c.vertices))
        v = Verdict(v.value, v.reasons, {"cotree": sorted(c.vertices)})
        if v.value == YES:
            return v
        if best is None or (best.value == NO and v.value == UNKNOWN):
            best = v
    assert best is not None
    return best


def std_membership(d: LocalActionDiagram) -> dict[str, Verdict]:
    """Two tests tied to the class of nondiscrete compactly generated simple
    t.d.l.c. groups.

    ``dense_cg_lc``: irreducible with subdegree-finite, compactly generated
    local actions (the universal group is then compactly generated, locally
    compact and geometrically dense).  ``no_fixed_vertex``: the tree-shaped
    criterion, applied to the diagram as given.
    """
    first = [(irreducible(d).value == YES, "Δ is not irreducible")]
    for v in d.vertices:
        first.append((vertex_property(d, v, "subdegree_finite"), f"G({v}) is not subdegree-finite"))
        first.append((vertex_property(d, v, "compactly_generated"), f"G({v}) is not compactly generated"))
    second: list[tuple[bool | None, str]] = [(d.is_tree(), "Γ is not a tree")]
    for v in d.vertices:
        for name, text in (
            ("closed", "closed"),
            ("compactly_generated", "compactly generated"),
            ("subdegree_finite", "subdegree-finite"),
            ("generated_by_point_stabilizers", "generated by point stabilizers"),
        ):
            second.append((vertex_property(d, v, name), f"G({v}) is not {text}"))
    for v in leaves(d):
        second.append((vertex_property(d, v, "nontrivial"), f"leaf {v} has trivial local action"))
    return {"dense_cg_lc": _conjunction(first), "no_fixed_vertex": _conjunction(second)}


# -- report --------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Verdict:
        return self.verdicts[key]

    def to_json_obj(self) -> dict:
        return {k: v.to_json_obj() for k, v in self.verdicts.items()}

    def to_text(self) -> str:
        lines = []
        for k, v in self.verdicts.items():
            line = f"{k}: {v.value}"
            if v.reasons:
                line += " (" + "; ".join(v.reasons) + ")"
            lines.append(line)
        return "\n".join(lines)


def property_report(d: LocalActionDiagram) -> PropertyReport:
    std = std_membership(d)
    return PropertyReport({
        "irreducible": irreducible(d),
        "geometrically_dense": is_geometrically_dense(d),
        "g_plus_trivial": g_plus_trivial(d),
        "simple_nondiscrete_with_translation": simplicity_report(d),
        "locally_compact": local_compactness(d),
        "compactly_generated": compact_generation(d),
        "in_class_Std": std["dense_cg_lc"],
        "in_class_Std_no_fixed_vertex": std["no_fixed_vertex"],
    })


__all__ = [
    "NO", "UNKNOWN", "YES", "PropertyReport", "Verdict", "compact_generation", "g_plus_trivial", "irreducible",
    "is_geometrically_dense", "local_compactness", "no_stray_leaf_shortcut", "property_report",
    "simplicity_report", "std_membership", "vertex_property",
]
