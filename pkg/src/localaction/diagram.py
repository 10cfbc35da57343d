"""Local action diagrams: the decorated graph, its validation and its JSON form."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Union

from .perm import FinitePermGroup, PermError, format_cycles

INF = math.inf

FLAG_NAMES = (
    "closed",
    "compactly_generated",
    "subdegree_finite",
    "semiregular",
    "generated_by_point_stabilizers",
    "nontrivial",
    "stabilizer_orbits_finite",
)


class DiagramError(ValueError):
    """A diagram is malformed or is not usable for the requested operation."""


class DiagramFormatError(DiagramError):
    """The JSON document does not follow the diagram schema."""


@dataclass(frozen=True)
class Arc:
    id: str
    origin: str
    target: str
    reverse: str
    colours: tuple[str, ...]

    @property
    def is_loop(self) -> bool:
        return self.origin == self.target

    @property
    def self_paired(self) -> bool:
        return self.reverse == self.id


@dataclass(frozen=True)
class ConcreteAction:
    """A finite local action given by generators in cycle notation over ``X_v``."""

    generators: tuple[str, ...] = ()
    kind = "concrete"


@dataclass(frozen=True)
class SymbolicAction:
    """A local action known only through orbit cardinalities and declared flags.

    ``orbits`` maps each arc leaving the vertex to the size of its colour set,
    which may be ``INF``.  Flags that are absent are unknown.
    """

    orbits: Mapping[str, float]
    flags: Mapping[str, bool] = field(default_factory=dict)
    description: str = ""
    kind = "symbolic"

    def flag(self, name: str) -> bool | None:
        return self.flags.get(name)


LocalAction = Union[ConcreteAction, SymbolicAction]


@dataclass(frozen=True)
class LocalActionDiagram:
    vertices: tuple[str, ...]
    arcs: Mapping[str, Arc]
    actions: Mapping[str, LocalAction]

    @classmethod
    def build(
        cls, vertices: Iterable[str], arcs: Iterable[Arc], actions: Mapping[str, LocalAction]
    ) -> "LocalActionDiagram":
        arcs = list(arcs)
        ids = [a.id for a in arcs]
        if len(set(ids)) != len(ids):
            raise DiagramError("arc ids must be unique")
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise DiagramError("vertex ids must be unique")
        normalized = {
            a.id: Arc(a.id, a.origin, a.target, a.reverse, tuple(sorted(a.colours)))
            for a in sorted(arcs, key=lambda a: a.id)
        }
        return cls(tuple(sorted(verts)), normalized, {v: actions[v] for v in sorted(actions)})

    # -- structure ---------------------------------------------------------

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arcs.values():
            out.setdefault(a.origin, []).append(a.id)
        return {v: tuple(ids) for v, ids in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        into: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arcs.values():
            into.setdefault(a.target, []).append(a.id)
        return {v: tuple(ids) for v, ids in into.items()}

    def out_arcs(self, v: str) -> tuple[str, ...]:
        return self._out.get(v, ())

    def in_arcs(self, v: str) -> tuple[str, ...]:
        return self._in.get(v, ())

    def reverse(self, a: str) -> str:
        return self.arcs[a].reverse

    def origin(self, a: str) -> str:
        return self.arcs[a].origin

    def target(self, a: str) -> str:
        return self.arcs[a].target

    def is_concrete(self) -> bool:
        return all(isinstance(act, ConcreteAction) for act in self.actions.values())

    def colour_set_size(self, a: str) -> float:
        act = self.actions.get(self.arcs[a].origin)
        if isinstance(act, SymbolicAction) and a in act.orbits:
            return act.orbits[a]
        return len(self.arcs[a].colours)

    def vertex_colour_count(self, v: str) -> float:
        return sum(self.colour_set_size(a) for a in self.out_arcs(v))

    def vertex_colours(self, v: str) -> tuple[str, ...]:
        return tuple(sorted(c for a in self.out_arcs(v) for c in self.arcs[a].colours))

    @cached_property
    def colour_type(self) -> dict[str, str]:
        """The arc whose colour set contains each colour."""
        return {c: a.id for a in self.arcs.values() for c in a.colours}

    @cached_property
    def _groups(self) -> dict[str, FinitePermGroup]:
        return {}

    def group(self, v: str) -> FinitePermGroup:
        """The concrete local action at ``v`` as a permutation group on ``X_v``."""
        if v in self._groups:
            return self._groups[v]
        act = self.actions[v]
        if not isinstance(act, ConcreteAction):
            raise DiagramError(f"local action at {v!r} is symbolic; concrete diagrams only")
        group = FinitePermGroup.from_cycles(self.vertex_colours(v), act.generators)
        self._groups[v] = group
        return group

    def neighbours(self, v: str) -> set[str]:
        return {self.arcs[a].target for a in self.out_arcs(v)}

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def edges(self) -> list[tuple[str, ...]]:
        """Edges as sorted tuples of their one or two arc ids."""
        return sorted({tuple(sorted({a.id, a.reverse})) for a in self.arcs.values()})

    def is_tree(self) -> bool:
        """Simple, connected and acyclic."""
        if any(a.is_loop for a in self.arcs.values()):
            return False
        pairs = [frozenset({self.origin(e[0]), self.target(e[0])}) for e in self.edges()]
        if len(set(pairs)) != len(pairs):
            return False
        return self.is_connected() and len(pairs) == len(self.vertices) - 1

    def distances_from(self, v: str) -> dict[str, int]:
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in sorted(self.neighbours(x)):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def diameter(self) -> int:
        return max(max(self.distances_from(v).values()) for v in self.vertices)

    # -- derived copies ----------------------------------------------------

    def rename_colours(self, mapping: Mapping[str, str]) -> "LocalActionDiagram":
        """Copy with colours renamed; concrete generators are rewritten to match."""
        arcs = [
            Arc(a.id, a.origin, a.target, a.reverse, tuple(mapping.get(c, c) for c in a.colours))
            for a in self.arcs.values()
        ]
        actions: dict[str, LocalAction] = {}
        for v, act in self.actions.items():
            if isinstance(act, ConcreteAction):
                group = self.group(v)
                cycles = []
                for g in group.generators:
                    images = {mapping.get(x, x): mapping.get(y, y) for x, y in group.as_mapping(g).items()}
                    names = tuple(sorted(images))
                    idx = {n: i for i, n in enumerate(names)}
                    cycles.append(format_cycles(tuple(idx[images[n]] for n in names), names))
                actions[v] = ConcreteAction(tuple(cycles))
            else:
                actions[v] = act
        return LocalActionDiagram.build(self.vertices, arcs, actions)


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(self.violations)


def _fmt_set(items: Iterable[str]) -> str:
    return "{" + ",".join(items) + "}"


def validate(diagram: LocalActionDiagram) -> ValidationReport:
    """Check every structural invariant of a local action diagram."""
    problems: list[str] = []
    verts = set(diagram.vertices)
    arcs = diagram.arcs
    if not verts:
        problems.append("graph: the vertex set is empty")
    for a in arcs.values():
        for end, v in (("origin", a.origin), ("target", a.target)):
            if v not in verts:
                problems.append(f"arc {a.id}: {end} {v!r} is not a vertex")
        if a.reverse not in arcs:
            problems.append(f"arc {a.id}: reverse {a.reverse!r} is not an arc")
            continue
        r = arcs[a.reverse]
        if r.reverse != a.id:
            problems.append(f"arc {a.id}: reversal is not an involution ({a.reverse} reverses to {r.reverse})")
        if r.origin != a.target or r.target != a.origin:
            problems.append(f"arc {a.id}: reverse {r.id} does not run from {a.target} to {a.origin}")
    if verts and not problems and not diagram.is_connected():
        problems.append("graph: not connected")
    for v in diagram.vertices:
        if v not in diagram.actions:
            problems.append(f"vertex {v}: no local action")
    for v in diagram.actions:
        if v not in verts:
            problems.append(f"local action given for unknown vertex {v!r}")

    owner: dict[str, str] = {}
    for a in arcs.values():
        if len(set(a.colours)) != len(a.colours):
            problems.append(f"arc {a.id}: repeated colour in its colour set")
        for c in a.colours:
            if not c or any(ch.isspace() or ch in "()" for ch in c):
                problems.append(f"arc {a.id}: colour name {c!r} is not a plain token")
            if c in owner and owner[c] != a.id:
                problems.append(f"arcs {owner[c]} and {a.id}: colour sets are not disjoint (share {c!r})")
            owner.setdefault(c, a.id)

    for v in diagram.vertices:
        act = diagram.actions.get(v)
        out = diagram.out_arcs(v)
        if isinstance(act, SymbolicAction):
            if set(act.orbits) != set(out):
                problems.append(
                    f"vertex {v}: symbolic orbits {_fmt_set(sorted(act.orbits))} "
                    f"do not match the arcs leaving it {_fmt_set(out)}"
                )
            for a, size in act.orbits.items():
                if not (size == INF or (isinstance(size, int) and size >= 1)):
                    problems.append(f"arc {a}: symbolic colour-set size {size!r} is not a positive cardinal")
                elif a in arcs and size != INF and arcs[a].colours and len(arcs[a].colours) != size:
                    problems.append(f"arc {a}: {len(arcs[a].colours)} colours listed but size {size} declared")
            for name in act.flags:
                if name not in FLAG_NAMES:
                    problems.append(f"vertex {v}: unknown flag {name!r}")
        else:
            for a in out:
                if not arcs[a].colours:
                    problems.append(f"arc {a}: colour set is empty")
        if isinstance(act, ConcreteAction):
            try:
                group = diagram.group(v)
            except PermError as exc:
                problems.append(f"vertex {v}: bad generator ({exc})")
                continue
            got = group.orbits()
            want = sorted(arcs[a].colours for a in out if arcs[a].colours)
            if got != want:
                problems.append(
                    f"vertex {v}: orbit partition {','.join(_fmt_set(o) for o in got)} "
                    f"differs from colour partition {','.join(_fmt_set(o) for o in want)}"
                )
    return ValidationReport(tuple(problems))


def require_valid(diagram: LocalActionDiagram) -> None:
    report = validate(diagram)
    if not report.ok:
        raise DiagramError("invalid local action diagram: " + "; ".join(report.violations))


# -- JSON ---------------------------------------------------------------------


def _size_to_json(size: float) -> int | str:
    return "inf" if size == INF else int(size)


def _size_from_json(value: Any) -> float:
    if value == "inf":
        return INF
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise DiagramFormatError(f"bad cardinality {value!r}")


def to_json_obj(diagram: LocalActionDiagram) -> dict[str, Any]:
    vertices = []
    for v in diagram.vertices:
        act = diagram.actions.get(v)
        if isinstance(act, SymbolicAction):
            body: dict[str, Any] = {
                "kind": "symbolic",
                "orbits": {a: _size_to_json(s) for a, s in sorted(act.orbits.items())},
                "flags": dict(sorted(act.flags.items())),
            }
            if act.description:
                body["description"] = act.description
        elif isinstance(act, ConcreteAction):
            body = {"kind": "concrete", "generators": list(act.generators)}
        else:
            body = None
        vertices.append({"id": v, "local_action": body})
    arcs = [
        {"id": a.id, "origin": a.origin, "target": a.target, "reverse": a.reverse, "colours": list(a.colours)}
        for a in diagram.arcs.values()
    ]
    return {"vertices": vertices, "arcs": arcs}


def dumps(diagram: LocalActionDiagram) -> str:
    return json.dumps(to_json_obj(diagram), indent=2, sort_keys=True) + "\n"


def from_json_obj(obj: Any) -> LocalActionDiagram:
    try:
        arcs = [
            Arc(str(a["id"]), str(a["origin"]), str(a["target"]), str(a["reverse"]),
                tuple(str(c) for c in a.get("colours", [])))
            for a in obj["arcs"]
        ]
        vertices = []
        actions: dict[str, LocalAction] = {}
        for item in obj["vertices"]:
            vid = str(item["id"])
            vertices.append(vid)
            body = item["local_action"]
            if body["kind"] == "concrete":
                actions[vid] = ConcreteAction(tuple(str(g) for g in body.get("generators", [])))
            elif body["kind"] == "symbolic":
                flags = body.get("flags", {})
                if not all(isinstance(x, bool) for x in flags.values()):
                    raise DiagramFormatError(f"vertex {vid}: flags must be booleans")
                actions[vid] = SymbolicAction(
                    {str(a): _size_from_json(s) for a, s in body["orbits"].items()},
                    dict(flags),
                    str(body.get("description", "")),
                )
            else:
                raise DiagramFormatError(f"vertex {vid}: unknown local action kind {body['kind']!r}")
    except (KeyError, TypeError, AttributeError) as exc:
        raise DiagramFormatError(f"malformed diagram document: {exc!r}") from exc
    return LocalActionDiagram.build(vertices, arcs, actions)


def loads(text: str) -> LocalActionDiagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramFormatError(f"not JSON: {exc}") from exc
    return from_json_obj(obj)
