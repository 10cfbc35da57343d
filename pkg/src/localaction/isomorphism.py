"""Isomorphism of local action diagrams by backtracking over graph maps."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .diagram import ConcreteAction, LocalActionDiagram, SymbolicAction
from .perm import perm_isomorphic, verify_conjugation


@dataclass(frozen=True)
class DiagramIsomorphism:
    vertex_map: dict[str, str]
    arc_map: dict[str, str]
    colour_maps: dict[str, dict[str, str]]

    def to_json_obj(self) -> dict:
        return {
            "vertex_map": dict(sorted(self.vertex_map.items())),
            "arc_map": dict(sorted(self.arc_map.items())),
            "colour_maps": {v: dict(sorted(m.items())) for v, m in sorted(self.colour_maps.items())},
        }


def _vertex_signature(d: LocalActionDiagram, v: str) -> tuple:
    act = d.actions[v]
    sizes = tuple(sorted((d.colour_set_size(a), d.arcs[a].is_loop, d.arcs[a].self_paired) for a in d.out_arcs(v)))
    if isinstance(act, ConcreteAction):
        return ("concrete", sizes, d.group(v).order())
    return ("symbolic", sizes, tuple(sorted(act.flags.items())))


def _local_match(
    d1: LocalActionDiagram, d2: LocalActionDiagram, v: str, w: str, arc_map: dict[str, str]
) -> dict[str, str] | None:
    a1, a2 = d1.actions[v], d2.actions[w]
    if isinstance(a1, SymbolicAction) or isinstance(a2, SymbolicAction):
        # Symbolic actions are compared only by their orbit sizes and flags.
        if not (isinstance(a1, SymbolicAction) and isinstance(a2, SymbolicAction)):
            return None
        if dict(a1.flags) != dict(a2.flags):
            return None
        if any(d1.colour_set_size(a) != d2.colour_set_size(arc_map[a]) for a in d1.out_arcs(v)):
            return None
        cmap: dict[str, str] = {}
        for a in d1.out_arcs(v):
            src, dst = d1.arcs[a].colours, d2.arcs[arc_map[a]].colours
            if len(src) != len(dst):
                return None
            cmap.update(zip(src, dst))
        return cmap
    allowed = {c: d2.arcs[arc_map[a]].colours for a in d1.out_arcs(v) for c in d1.arcs[a].colours}
    return perm_isomorphic(d1.group(v), d2.group(w), allowed)


def iso(d1: LocalActionDiagram, d2: LocalActionDiagram) -> DiagramIsomorphism | None:
    """Find an isomorphism ``d1 -> d2`` or return ``None`` after exhausting the search."""
    if len(d1.vertices) != len(d2.vertices) or len(d1.arcs) != len(d2.arcs):
        return None
    sig1 = {v: _vertex_signature(d1, v) for v in d1.vertices}
    sig2 = {w: _vertex_signature(d2, w) for w in d2.vertices}
    if sorted(map(repr, sig1.values())) != sorted(map(repr, sig2.values())):
        return None

    start = d1.vertices[0]
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in d1.out_arcs(v):
            t = d1.target(a)
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)

    vmap: dict[str, str] = {}
    vused: set[str] = set()
    amap: dict[str, str] = {}
    aused: set[str] = set()
    cmaps: dict[str, dict[str, str]] = {}

    def arc_ok(a: str, b: str) -> bool:
        x, y = d1.arcs[a], d2.arcs[b]
        if d1.colour_set_size(a) != d2.colour_set_size(b):
            return False
        if x.is_loop != y.is_loop or x.self_paired != y.self_paired:
            return False
        if x.reverse in amap and amap[x.reverse] != y.reverse:
            return False
        if y.reverse in aused and amap.get(x.reverse) != y.reverse:
            return False
        t = x.target
        if t in vmap:
            return vmap[t] == y.target
        return y.target not in vused and sig1[t] == sig2[y.target]

    def assign_arcs(k: int, pos: int, arcs1: list[str], arcs2: list[str]) -> bool:
        if pos == len(arcs1):
            v = order[k]
            cmap = _local_match(d1, d2, v, vmap[v], amap)
            if cmap is None:
                return False
            cmaps[v] = cmap
            if visit(k + 1):
                return True
            del cmaps[v]
            return False
        a = arcs1[pos]
        for b in arcs2:
            if b in aused or not arc_ok(a, b):
                continue
            t, added = d1.target(a), False
            if t not in vmap:
                vmap[t] = d2.target(b)
                vused.add(vmap[t])
                added = True
            amap[a] = b
            aused.add(b)
            if assign_arcs(k, pos + 1, arcs1, arcs2):
                return True
            del amap[a]
            aused.discard(b)
            if added:
                vused.discard(vmap.pop(t))
        return False

    def visit(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        arcs1 = list(d1.out_arcs(v))
        arcs2 = list(d2.out_arcs(vmap[v]))
        if len(arcs1) != len(arcs2):
            return False
        return assign_arcs(k, 0, arcs1, arcs2)

    for w in d2.vertices:
        if sig2[w] != sig1[start]:
            continue
        vmap[start] = w
        vused.add(w)
        if visit(0):
            result = DiagramIsomorphism(dict(vmap), dict(amap), {v: dict(m) for v, m in cmaps.items()})
            if not verify_isomorphism(d1, d2, result):
                raise AssertionError("isomorphism search produced an invalid witness")
            return result
        vmap.clear()
        vused.clear()
    return None


def verify_isomorphism(d1: LocalActionDiagram, d2: LocalActionDiagram, witness: DiagramIsomorphism) -> bool:
    """Independent check that ``witness`` is an isomorphism of local action diagrams."""
    vm, am = witness.vertex_map, witness.arc_map
    if sorted(vm) != list(d1.vertices) or sorted(vm.values()) != list(d2.vertices):
        return False
    if sorted(am) != sorted(d1.arcs) or sorted(am.values()) != sorted(d2.arcs):
        return False
    for a, arc in d1.arcs.items():
        img = d2.arcs[am[a]]
        if vm[arc.origin] != img.origin or vm[arc.target] != img.target or am[arc.reverse] != img.reverse:
            return False
        if d1.colour_set_size(a) != d2.colour_set_size(am[a]):
            return False
    for v in d1.vertices:
        cmap = witness.colour_maps.get(v, {})
        for a in d1.out_arcs(v):
            if sorted(cmap.get(c) for c in d1.arcs[a].colours) != sorted(d2.arcs[am[a]].colours):
                return False
        a1, a2 = d1.actions[v], d2.actions[vm[v]]
        if isinstance(a1, ConcreteAction) and isinstance(a2, ConcreteAction):
            if not verify_conjugation(d1.group(v), d2.group(vm[v]), cmap):
                return False
        elif isinstance(a1, SymbolicAction) and isinstance(a2, SymbolicAction):
            if dict(a1.flags) != dict(a2.flags):
                return False
        else:
            return False
    return True


def dedup_by_iso(diagrams: Iterable[LocalActionDiagram]) -> list[list[int]]:
    """Partition diagram indices into isomorphism classes (first-seen order)."""
    classes: list[list[int]] = []
    reps: list[LocalActionDiagram] = []
    keys: list[tuple] = []
    for i, d in enumerate(diagrams):
        key = tuple(sorted(repr(_vertex_signature(d, v)) for v in d.vertices)) + (len(d.arcs),)
        for k, rep in enumerate(reps):
            if keys[k] == key and iso(d, rep) is not None:
                classes[k].append(i)
                break
        else:
            reps.append(d)
            keys.append(key)
            classes.append([i])
    return classes
