"""Strongly confluent partial orientations, their shapes, and cotrees."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .diagram import DiagramError, LocalActionDiagram


def is_scopo(d: LocalActionDiagram, arcs) -> bool:
    chosen = set(arcs)
    for a in chosen:
        if d.reverse(a) in chosen or d.colour_set_size(a) != 1:
            return False
        for b in d.in_arcs(d.origin(a)):
            if b != d.reverse(a) and b not in chosen:
                return False
    return True


def _requirements(d: LocalActionDiagram, a: str) -> set[str]:
    return {b for b in d.in_arcs(d.origin(a)) if b != d.reverse(a)}


def scopos(d: LocalActionDiagram) -> list[frozenset[str]]:
    """Every scopo of ``d``, the empty one first, then by size and arc names.

    Candidates are the arcs with a singleton colour set.  Including an arc
    forces its requirement closure; a closure that reaches a non-candidate or
    contains an arc together with its reverse rules the arc out.  The search
    branches include/exclude over the remaining candidates.
    """
    candidates = sorted(a for a in d.arcs if d.colour_set_size(a) == 1 and d.reverse(a) != a)
    closure: dict[str, frozenset[str] | None] = {}
    for a in candidates:
        seen = {a}
        stack = [a]
        ok = True
        while stack and ok:
            x = stack.pop()
            if x not in closure and x not in candidates:
                ok = False
                break
            for y in _requirements(d, x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if ok and any(d.reverse(x) in seen for x in seen):
            ok = False
        if ok and not all(d.colour_set_size(x) == 1 and d.reverse(x) != x for x in seen):
            ok = False
        closure[a] = frozenset(seen) if ok else None
    live = [a for a in candidates if closure[a] is not None]
    found: list[frozenset[str]] = []

    def search(i: int, chosen: frozenset[str], banned: frozenset[str]) -> None:
        if i == len(live):
            found.append(chosen)
            return
        a = live[i]
        if a in chosen:
            search(i + 1, chosen, banned)
            return
        # exclude a
        search(i + 1, chosen, banned | {a})
        # include a together with everything it forces
        forced = closure[a]
        if forced & banned:
            return
        merged = chosen | forced
        if any(d.reverse(x) in merged for x in forced):
            return
        search(i + 1, merged, banned)

    search(0, frozenset(), frozenset())
    return sorted(set(found), key=lambda s: (len(s), sorted(s)))


def is_irreducible(d: LocalActionDiagram) -> bool:
    return scopos(d) == [frozenset()]


# -- the four shapes -----------------------------------------------------------


def leaves(d: LocalActionDiagram) -> list[str]:
    """Vertices with exactly one edge, that edge not a loop."""
    return [v for v in d.vertices if len(d.out_arcs(v)) == 1 and not d.arcs[d.out_arcs(v)[0]].is_loop]


def stray_leaves(d: LocalActionDiagram) -> list[str]:
    return [v for v in leaves(d) if d.vertex_colour_count(v) == 1]


def is_cycle_graph(d: LocalActionDiagram) -> bool:
    if not d.is_connected() or any(a.self_paired for a in d.arcs.values()):
        return False
    return len(d.edges()) == len(d.vertices) and all(len(d.out_arcs(v)) == 2 for v in d.vertices)


def cyclic_orientations(d: LocalActionDiagram) -> list[frozenset[str]]:
    """The two orientations of a cycle graph that form a directed cycle."""
    if not is_cycle_graph(d):
        return []
    result = []
    start = d.vertices[0]
    for first in d.out_arcs(start):
        arcs = [first]
        v = d.target(first)
        prev = first
        while v != start:
            nxt = next(a for a in d.out_arcs(v) if a != d.reverse(prev))
            arcs.append(nxt)
            prev = nxt
            v = d.target(nxt)
        result.append(frozenset(arcs))
    return sorted(set(result), key=sorted)


def focal_orientation(d: LocalActionDiagram) -> frozenset[str] | None:
    for orient in cyclic_orientations(d):
        if all(d.colour_set_size(a) == 1 for a in orient):
            return orient
    return None


def _component_without_edge(d: LocalActionDiagram, a: str) -> set[str] | None:
    """Vertices reachable from ``t(a)`` once the edge of ``a`` is removed, or
    ``None`` if the removal leaves the graph connected."""
    drop = {a, d.reverse(a)}
    seen = {d.target(a)}
    stack = [d.target(a)]
    while stack:
        v = stack.pop()
        for b in d.out_arcs(v):
            if b in drop:
                continue
            w = d.target(b)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if d.origin(a) in seen:
        return None
    return seen


def stray_half_trees(d: LocalActionDiagram) -> list[str]:
    """Arcs ``a`` whose far side is a stray half-tree."""
    leafset = set(leaves(d))
    found = []
    for a in sorted(d.arcs):
        if d.arcs[a].is_loop:
            continue
        part = _component_without_edge(d, a)
        if part is None or part & leafset:
            continue
        inner = [b for b in d.arcs.values() if b.origin in part and b.target in part]
        sub_edges = {frozenset({b.id, b.reverse}) for b in inner}
        pairs = [frozenset({b.origin, b.target}) for b in inner]
        if any(b.is_loop for b in inner) or len(set(pairs)) != len(sub_edges) or len(sub_edges) != len(part) - 1:
            continue
        # within the part, arcs pointing towards t(a) need singleton colours
        dist = {d.target(a): 0}
        stack = [d.target(a)]
        while stack:
            v = stack.pop()
            for b in inner:
                if b.origin == v and b.target not in dist:
                    dist[b.target] = dist[v] + 1
                    stack.append(b.target)
        toward = [b.id for b in inner if dist[b.target] < dist[b.origin]]
        if all(d.colour_set_size(b) == 1 for b in toward):
            found.append(a)
    return found


@dataclass(frozen=True)
class ScopoFeatures:
    stray_leaves: tuple[str, ...]
    is_focal_cycle: bool
    focal_orientation: tuple[str, ...]
    stray_half_trees: tuple[str, ...]
    horocyclic_ends: tuple = ()
    note: str = "a finite quotient graph has no ends, so no horocyclic ends occur"

    @property
    def empty(self) -> bool:
        return not (self.stray_leaves or self.is_focal_cycle or self.stray_half_trees or self.horocyclic_ends)

    def to_json_obj(self) -> dict:
        return {
            "stray_leaves": list(self.stray_leaves),
            "is_focal_cycle": self.is_focal_cycle,
            "focal_orientation": list(self.focal_orientation),
            "stray_half_trees": list(self.stray_half_trees),
            "horocyclic_ends": list(self.horocyclic_ends),
            "note": self.note,
        }


def horocyclic_ends(d: LocalActionDiagram) -> tuple:
    # Only trees can carry one, and a finite tree has no ends.
    return ()


def scopo_features(d: LocalActionDiagram) -> ScopoFeatures:
    orient = focal_orientation(d)
    return ScopoFeatures(
        stray_leaves=tuple(stray_leaves(d)),
        is_focal_cycle=orient is not None,
        focal_orientation=tuple(sorted(orient or ())),
        stray_half_trees=tuple(stray_half_trees(d)),
        horocyclic_ends=horocyclic_ends(d),
    )


# -- cotrees -------------------------------------------------------------------


@dataclass(frozen=True)
class Cotree:
    vertices: frozenset[str]
    projecting_paths: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "projecting_paths": {v: list(p) for v, p in sorted(self.projecting_paths.items())},
        }


def projecting_paths(d: LocalActionDiagram, inside: frozenset[str], v: str, limit: int = 2) -> list[tuple[str, ...]]:
    """Up to ``limit`` projecting paths (as arc sequences) from ``v`` to ``inside``.

    A nonbacktracking walk longer than twice the number of (previous, current)
    vertex states must repeat a state and could be pumped, so longer walks are
    never needed to decide whether the count is 0, 1 or more.
    """
    cap = 2 * len(d.vertices) ** 2 + 2
    found: list[tuple[str, ...]] = []

    def walk(path: list[str], prev: str | None, cur: str) -> None:
        if len(found) >= limit or len(path) >= cap:
            return
        for a in d.out_arcs(cur):
            nxt = d.target(a)
            if prev is not None and nxt == prev:
                continue
            path.append(a)
            if nxt in inside:
                found.append(tuple(path))
            else:
                walk(path, cur, nxt)
            path.pop()
            if len(found) >= limit:
                return

    if v in inside:
        return [()]
    walk([], None, v)
    return found


def _count_paths(d: LocalActionDiagram, inside: frozenset[str]) -> dict[str, int]:
    """Number of projecting paths from each outside vertex, capped at 2."""
    cap = 2 * len(d.vertices) ** 2 + 2
    states = [(p, c) for p in d.vertices for c in d.vertices if c not in inside]
    count = {s: 0 for s in states}
    for _ in range(cap):
        new = {}
        for p, c in states:
            total = 0
            for a in d.out_arcs(c):
                n = d.target(a)
                if n == p:
                    continue
                total += 1 if n in inside else count[(c, n)]
            new[(p, c)] = min(total, 2)
        if new == count:
            break
        count = new
    result = {}
    for v in d.vertices:
        if v in inside:
            continue
        total = 0
        for a in d.out_arcs(v):
            n = d.target(a)
            total += 1 if n in inside else count[(v, n)]
        result[v] = min(total, 2)
    return result


def is_cotree(d: LocalActionDiagram, vertices) -> bool:
    inside = frozenset(vertices)
    if not inside or not inside <= set(d.vertices):
        return False
    return all(n == 1 for n in _count_paths(d, inside).values())


def make_cotree(d: LocalActionDiagram, vertices) -> Cotree:
    inside = frozenset(vertices)
    if not is_cotree(d, inside):
        raise DiagramError(f"{sorted(inside)} is not a cotree")
    paths = {}
    for v in d.vertices:
        if v in inside:
            continue
        found = projecting_paths(d, inside, v)
        if len(found) != 1:
            raise AssertionError(f"projecting path from {v} is not unique")
        paths[v] = found[0]
    return Cotree(inside, paths)


def all_cotrees(d: LocalActionDiagram) -> list[Cotree]:
    result = []
    verts = list(d.vertices)
    for size in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, size):
            if is_cotree(d, combo):
                result.append(make_cotree(d, combo))
    return result


def smallest_cotree(d: LocalActionDiagram) -> Cotree:
    """The smallest cotree; ties (possible only when the graph is a tree) are
    broken by the sorted vertex names."""
    verts = list(d.vertices)
    for size in range(1, len(verts) + 1):
        hits = [combo for combo in itertools.combinations(verts, size) if is_cotree(d, combo)]
        if hits:
            if len(hits) > 1 and not d.is_tree():
                raise AssertionError("smallest cotree of a non-tree is not unique")
            return make_cotree(d, min(hits))
    raise AssertionError("the whole graph is always a cotree")


def cotree_scopo(d: LocalActionDiagram, cotree: Cotree) -> frozenset[str]:
    """Arcs leaving outside vertices along their projecting paths."""
    if not is_cotree(d, cotree.vertices):
        raise DiagramError(f"{sorted(cotree.vertices)} is not a cotree")
    arcs = set()
    for v in d.vertices:
        if v in cotree.vertices:
            continue
        path = cotree.projecting_paths.get(v) or projecting_paths(d, cotree.vertices, v)[0]
        arcs.add(path[0])
    return frozenset(arcs)
