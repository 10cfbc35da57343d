"""Finite balls in the Δ-tree and the action of the universal group on them.

A ball vertex is identified by its coloured path from the root.  Each vertex
also records the colour of the arc back to its parent (the last entry of its
reverse label); that colour is always the least element of the relevant
colour set, so balls are deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .diagram import DiagramError, LocalActionDiagram
from .perm import Perm, StabilizerChain, identity, orbit_partition

DEFAULT_MAX_BALL = 50_000


class BallTooLarge(DiagramError):
    """The requested ball exceeds the vertex cap."""


def max_ball_size() -> int:
    value = os.environ.get("LAD_MAX_BALL")
    return int(value) if value else DEFAULT_MAX_BALL


def _require_concrete(d: LocalActionDiagram) -> None:
    if not d.is_concrete():
        raise DiagramError("concrete diagrams only")


def ball_size(d: LocalActionDiagram, v0: str, r: int) -> int:
    """Vertex count predicted from valencies: the root has ``|X_v0|`` children
    and every other vertex one fewer than its valency."""
    if r == 0:
        return 1
    layer: dict[str, int] = {}
    for a in d.out_arcs(v0):
        layer[a] = layer.get(a, 0) + len(d.arcs[a].colours)
    total = 1 + sum(layer.values())
    for _ in range(r - 1):
        nxt: dict[str, int] = {}
        for a, count in layer.items():
            for b in d.out_arcs(d.target(a)):
                n = len(d.arcs[b].colours) - (b == d.reverse(a))
                if n:
                    nxt[b] = nxt.get(b, 0) + count * n
        layer = nxt
        total += sum(layer.values())
    return total


@dataclass
class DeltaTreeBall:
    diagram: LocalActionDiagram
    root_vertex: str
    radius: int
    labels: list[tuple[str, ...]] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)
    pi: list[str] = field(default_factory=list)
    back: list[str | None] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[tuple[str, ...], int]:
        return {label: i for i, label in enumerate(self.labels)}

    def depth(self, x: int) -> int:
        return len(self.labels[x])

    def is_interior(self, x: int) -> bool:
        return self.depth(x) < self.radius

    @cached_property
    def neighbours_by_colour(self) -> list[dict[str, int]]:
        """For each vertex, the colour of each arc leaving it mapped to the arc's far end."""
        table: list[dict[str, int]] = [{} for _ in self.labels]
        for x, label in enumerate(self.labels):
            if label:
                table[x][self.back[x]] = self.parent[x]
                table[self.parent[x]][label[-1]] = x
        return table

    def arc_colour(self, x: int, y: int) -> str:
        """The colour of the ball arc from ``x`` to the adjacent ``y``."""
        if self.parent[y] == x:
            return self.labels[y][-1]
        if self.parent[x] == y:
            return self.back[x]
        raise DiagramError(f"ball vertices {x} and {y} are not adjacent")

    def arc_projection(self, x: int, y: int) -> str:
        return self.diagram.colour_type[self.arc_colour(x, y)]

    def arcs(self) -> list[tuple[int, int]]:
        result = []
        for y in range(1, len(self.labels)):
            result.append((self.parent[y], y))
            result.append((y, self.parent[y]))
        return result

    def reverse_label(self, x: int) -> tuple[str, ...]:
        out = []
        while self.labels[x]:
            out.append(self.back[x])
            x = self.parent[x]
        return tuple(reversed(out))

    def subtree(self, x: int) -> list[int]:
        out, stack = [], [x]
        while stack:
            y = stack.pop()
            out.append(y)
            stack.extend(self.children[y])
        return sorted(out)

    def to_json_obj(self) -> dict:
        return {
            "root": self.root_vertex,
            "radius": self.radius,
            "vertices": [
                {"label": list(self.labels[x]), "reverse_label": list(self.reverse_label(x)), "projection": self.pi[x]}
                for x in range(len(self.labels))
            ],
        }


def build_ball(d: LocalActionDiagram, v0: str, r: int, max_size: int | None = None) -> DeltaTreeBall:
    """All coloured paths of length at most ``r`` from ``v0``.

    The children of a vertex use every colour at its projection except the
    one on the arc back to its parent.
    """
    _require_concrete(d)
    if v0 not in d.actions:
        raise DiagramError(f"unknown vertex {v0!r}")
    if r < 0:
        raise DiagramError("radius must be nonnegative")
    cap = max_ball_size() if max_size is None else max_size
    expected = ball_size(d, v0, r)
    if expected > cap:
        raise BallTooLarge(f"ball of radius {r} at {v0} has {expected} vertices; the cap is {cap} (set LAD_MAX_BALL)")
    ctype = d.colour_type
    ball = DeltaTreeBall(d, v0, r, [()], [-1], [v0], [None], [[]])
    frontier = [0]
    for _ in range(r):
        nxt = []
        for x in frontier:
            for c in d.vertex_colours(ball.pi[x]):
                if c == ball.back[x]:
                    continue
                arc = ctype[c]
                y = len(ball.labels)
                ball.labels.append(ball.labels[x] + (c,))
                ball.parent.append(x)
                ball.pi.append(d.target(arc))
                ball.back.append(min(d.arcs[d.reverse(arc)].colours))
                ball.children.append([])
                ball.children[x].append(y)
                nxt.append(y)
        frontier = nxt
    return ball


def check_label(ball: DeltaTreeBall, x: int) -> list[str]:
    """Violations of the coloured-path conditions for vertex ``x`` (empty if fine)."""
    d = ball.diagram
    ctype = d.colour_type
    forward, rev = ball.labels[x], ball.reverse_label(x)
    problems = []
    if len(forward) != len(rev):
        problems.append("label and reverse label differ in length")
    for i, c in enumerate(forward):
        if i > 0 and d.origin(ctype[c]) != d.target(ctype[forward[i - 1]]):
            problems.append(f"colour {c} does not continue the path")
        if i == 0 and d.origin(ctype[c]) != ball.root_vertex:
            problems.append(f"colour {c} does not start at the root")
        if i > 0 and c == rev[i - 1]:
            problems.append(f"colour {c} backtracks")
        if ctype[rev[i]] != d.reverse(ctype[c]):
            problems.append(f"reverse colour {rev[i]} is not on the reverse arc")
    if forward:
        parent = ball.parent[x]
        if ball.labels[parent] != forward[:-1] or ball.reverse_label(parent) != rev[:-1]:
            problems.append("prefix is not coherent")
    return problems


# -- local actions --------------------------------------------------------------


def local_action_of(ball: DeltaTreeBall, g: Sequence[int], v: int) -> dict[str, str]:
    """The permutation of ``X_{π(v)}`` induced by ``g`` at ``v``, read through the colouring."""
    gv = g[v]
    if not (ball.is_interior(v) and ball.is_interior(gv)):
        raise DiagramError(f"star incomplete at ball vertex {v}")
    if ball.pi[v] != ball.pi[gv]:
        raise DiagramError(f"g does not preserve the projection at ball vertex {v}")
    return {c: ball.arc_colour(gv, g[y]) for c, y in ball.neighbours_by_colour[v].items()}


def is_legal(ball: DeltaTreeBall, g: Sequence[int]) -> bool:
    """Whether ``g`` is an automorphism of the ball respecting projection and
    with every interior local action in the prescribed group."""
    d = ball.diagram
    n = len(ball)
    if sorted(g) != list(range(n)):
        return False
    for x in range(1, n):
        p = ball.parent[x]
        gx, gp = g[x], g[p]
        if ball.parent[gx] != gp and ball.parent[gp] != gx:
            return False
        if ball.pi[x] != ball.pi[gx] or ball.arc_projection(p, x) != ball.arc_projection(gp, gx):
            return False
    if ball.pi[0] != ball.pi[g[0]]:
        return False
    for v in range(n):
        if not ball.is_interior(v) or not ball.is_interior(g[v]):
            continue
        sigma = local_action_of(ball, g, v)
        group = d.group(ball.pi[v])
        perm = tuple(group.index[sigma[c]] for c in group.domain)
        if not group.contains(perm):
            return False
    return True


# -- the ball group -------------------------------------------------------------


@dataclass(frozen=True)
class BallGroup:
    ball: DeltaTreeBall
    generators: tuple[Perm, ...]
    order: int
    predicted_order: int
    orbits: tuple[tuple[int, ...], ...]

    def orbit_summary(self) -> list[dict]:
        return [
            {"size": len(orb), "depth": self.ball.depth(orb[0]), "projection": self.ball.pi[orb[0]]}
            for orb in self.orbits
        ]

    def to_json_obj(self) -> dict:
        return {
            "root": self.ball.root_vertex,
            "radius": self.ball.radius,
            "ball_vertices": len(self.ball),
            "order": self.order,
            "generators": len(self.generators),
            "orbits": self.orbit_summary(),
        }


def _lift(ball: DeltaTreeBall, v: int, sigma: dict[str, str]) -> Perm:
    """The ball map acting as ``sigma`` at ``v`` and carrying every subtree
    below ``v`` along without changing the rest of its label."""
    n = len(ball)
    g = list(identity(n))
    prefix = len(ball.labels[v])
    for child in ball.children[v]:
        c = ball.labels[child][-1]
        image = sigma[c]
        if image == c:
            continue
        for y in ball.subtree(child):
            label = ball.labels[y]
            g[y] = ball.index[label[:prefix] + (image,) + label[prefix + 1:]]
    return tuple(g)


def _local_generators(ball: DeltaTreeBall, v: int) -> list[dict[str, str]]:
    group = ball.diagram.group(ball.pi[v])
    if v == 0:
        gens = group.generators
    else:
        gens = group.point_stabilizer(ball.back[v]).generators
    return [group.as_mapping(s) for s in gens]


def ball_group(d: LocalActionDiagram, v0: str, r: int, max_size: int | None = None) -> BallGroup:
    """Generators and order of the root-fixing legal maps of the radius-``r`` ball.

    Such a map is a choice, at each interior vertex, of a local permutation
    (fixing the parent colour away from the root), made independently in
    every subtree.  The order is therefore the product of those local
    choices; it is confirmed with a stabilizer chain on the generators.
    """
    if r < 1:
        raise DiagramError("the ball group needs radius at least 1")
    ball = build_ball(d, v0, r, max_size)
    gens: list[Perm] = []
    predicted = 1
    for v in range(len(ball)):
        if not ball.is_interior(v):
            continue
        group = d.group(ball.pi[v])
        predicted *= group.order() if v == 0 else group.point_stabilizer(ball.back[v]).order()
        gens.extend(_lift(ball, v, sigma) for sigma in _local_generators(ball, v))
    chain = StabilizerChain(len(ball), gens)
    order = chain.order()
    if order != predicted:
        raise AssertionError(f"ball group order {order} disagrees with the product of local orders {predicted}")
    orbits = tuple(tuple(o) for o in orbit_partition(len(ball), gens))
    return BallGroup(ball, tuple(gens), order, predicted, orbits)


# -- independence ---------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceResult:
    arc: str
    radius: int
    edge: tuple[int, int]
    stabilizer_order: int
    near_order: int
    far_order: int

    @property
    def holds(self) -> bool:
        return self.stabilizer_order == self.near_order * self.far_order

    def to_json_obj(self) -> dict:
        return {
            "arc": self.arc,
            "radius": self.radius,
            "edge": list(self.edge),
            "stabilizer_order": self.stabilizer_order,
            "near_side_order": self.near_order,
            "far_side_order": self.far_order,
            "independent": self.holds,
        }


def _restricted_order(gens: Sequence[Perm], points: list[int]) -> int:
    pos = {p: i for i, p in enumerate(points)}
    restricted = [tuple(pos[g[p]] for p in points) for g in gens]
    return StabilizerChain(len(points), restricted).order()


def independence_report(
    d: LocalActionDiagram,
    a: str,
    r: int,
    generators: Sequence[Perm] | None = None,
    group: BallGroup | None = None,
) -> IndependenceResult:
    """Compare the pointwise stabilizer of a ball edge over ``a`` with the
    product of its actions on the two sides of that edge.

    ``generators`` replaces the ball group, so a test can feed in a subgroup
    that is known not to factor.
    """
    _require_concrete(d)
    if a not in d.arcs:
        raise DiagramError(f"unknown arc {a!r}")
    if r < 2:
        raise DiagramError("independence is checked at radius 2 or more")
    bg = group if group is not None else ball_group(d, d.origin(a), r)
    if bg.ball.root_vertex != d.origin(a) or bg.ball.radius != r:
        raise DiagramError("ball group does not match the arc and radius")
    ball = bg.ball
    gens = list(bg.generators if generators is None else generators)
    child = ball.index[(min(d.arcs[a].colours),)]
    chain = StabilizerChain(len(ball), gens, base=[child])
    stab = chain.level_generators(1) if chain.base and chain.base[0] == child else gens
    far = ball.subtree(child)
    near = sorted(set(range(len(ball))) - set(far))
    order = StabilizerChain(len(ball), stab).order()
    return IndependenceResult(a, r, (0, child), order, _restricted_order(stab, near), _restricted_order(stab, far))


def check_independence(
    d: LocalActionDiagram, a: str, r: int, generators: Sequence[Perm] | None = None
) -> bool:
    return independence_report(d, a, r, generators).holds


def check_all_edges(d: LocalActionDiagram, r: int) -> dict[str, bool]:
    """``check_independence`` for every arc, sharing one ball group per vertex."""
    groups = {v: ball_group(d, v, r) for v in d.vertices}
    return {a: independence_report(d, a, r, group=groups[d.origin(a)]).holds for a in sorted(d.arcs)}
