"""Local action diagrams of the standard families of universal groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .diagram import INF, Arc, ConcreteAction, DiagramError, LocalActionDiagram, SymbolicAction
from .perm import FinitePermGroup, format_cycles


@dataclass(frozen=True)
class SymbolicGroup:
    """A permutation group described only by its orbits and declared properties.

    Each orbit is ``(size, colours)``; ``colours`` may be empty when the orbit
    is infinite or unnamed.
    """

    orbits: Sequence[tuple[float, tuple[str, ...]]]
    flags: Mapping[str, bool] = field(default_factory=dict)
    description: str = ""


def _loop_ids(count: int) -> list[str]:
    return [f"a{i}" for i in range(1, count + 1)]


def burger_mozes(group: FinitePermGroup | SymbolicGroup, vertex: str = "v") -> LocalActionDiagram:
    """One vertex carrying ``group`` and one self-paired loop per orbit."""
    if isinstance(group, SymbolicGroup):
        ids = _loop_ids(len(group.orbits))
        arcs = [Arc(a, vertex, vertex, a, tuple(cols)) for a, (_, cols) in zip(ids, group.orbits)]
        action = SymbolicAction({a: size for a, (size, _) in zip(ids, group.orbits)}, dict(group.flags),
                                group.description)
        return LocalActionDiagram.build([vertex], arcs, {vertex: action})
    if group.degree < 1:
        raise DiagramError("the local action needs at least one point")
    return from_pair(group, {})


def from_pair(
    group: FinitePermGroup, pairing: Mapping[int, int] | Sequence[int], vertex: str = "v"
) -> LocalActionDiagram:
    """The one-vertex diagram of an orbit pairing.

    Orbits of ``group`` are numbered in canonical order from 0.  ``pairing`` is
    either the full involution as a sequence, or a mapping listing only the
    orbits that move.  Fixed orbits become self-paired loops; a swapped pair of
    orbits becomes a loop and its reverse.
    """
    orbits = group.orbits()
    n = len(orbits)
    if isinstance(pairing, Mapping):
        r = list(range(n))
        for i, j in pairing.items():
            r[i] = j
    else:
        r = list(pairing)
    if sorted(r) != list(range(n)):
        raise DiagramError(f"pairing {r} is not a permutation of the {n} orbits")
    if any(r[r[i]] != i for i in range(n)):
        raise DiagramError(f"pairing {r} is not an involution")
    ids = _loop_ids(n)
    arcs = [Arc(ids[i], vertex, vertex, ids[r[i]], orbits[i]) for i in range(n)]
    return LocalActionDiagram.build([vertex], arcs, {vertex: ConcreteAction(tuple(group.cycles()))})


def box_product(f1: FinitePermGroup, f2: FinitePermGroup) -> LocalActionDiagram:
    """The complete bipartite diagram of the box product of ``f1`` and ``f2``.

    Part one has a vertex per orbit of ``f2`` and each carries ``f1``; part two
    has a vertex per orbit of ``f1`` and each carries ``f2``.  The arc from the
    part-one vertex of orbit ``j`` to the part-two vertex of orbit ``i`` is
    coloured by the ``i``-th orbit of ``f1``.  Colours keep their names when each
    part is a single vertex and the two domains are disjoint; otherwise they
    are prefixed with the id of the vertex carrying them.
    """
    if f1.is_trivial() and f2.is_trivial():
        raise DiagramError("at least one factor of a box product must be nontrivial")
    orbits1, orbits2 = f1.orbits(), f2.orbits()
    n1, n2 = len(orbits1), len(orbits2)
    part1 = ["v"] if n2 == 1 else [f"v{j}" for j in range(n2)]
    part2 = ["w"] if n1 == 1 else [f"w{i}" for i in range(n1)]
    keep = n1 == 1 and n2 == 1 and not set(f1.domain) & set(f2.domain)

    def tag(vertex: str, colours) -> tuple[str, ...]:
        return tuple(colours) if keep else tuple(f"{vertex}:{c}" for c in colours)

    def arc_id(x: str, y: str) -> str:
        return f"{x}-{y}"

    arcs = []
    for j, v in enumerate(part1):
        for i, w in enumerate(part2):
            arcs.append(Arc(arc_id(v, w), v, w, arc_id(w, v), tag(v, orbits1[i])))
            arcs.append(Arc(arc_id(w, v), w, v, arc_id(v, w), tag(w, orbits2[j])))

    def copy(group: FinitePermGroup, vertex: str) -> ConcreteAction:
        if keep:
            return ConcreteAction(tuple(group.cycles()))
        names = tag(vertex, group.domain)
        return ConcreteAction(tuple(format_cycles(g, names) for g in group.generators))

    actions = {v: copy(f1, v) for v in part1}
    actions.update({w: copy(f2, w) for w in part2})
    return LocalActionDiagram.build(part1 + part2, arcs, actions)


__all__ = ["INF", "SymbolicGroup", "box_product", "burger_mozes", "from_pair"]
