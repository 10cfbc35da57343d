"""Recover a local action diagram from the universal group's action on a ball.

Two ball vertices are taken to lie in one orbit when a legal map between
their ``k``-neighbourhoods exists (π-preserving, every interior local action
in the prescribed group).  Such a map is found branch by branch: after a
local permutation is fixed at a vertex, the subtrees hanging off it can be
matched independently.  The quotient of these orbits, with the local actions
induced at orbit representatives, is the recovered diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .deltatree import DeltaTreeBall, build_ball
from .diagram import Arc, ConcreteAction, DiagramError, LocalActionDiagram
from .isomorphism import DiagramIsomorphism, iso
from .perm import FinitePermGroup, format_cycles


@dataclass(frozen=True)
class RecomputeResult:
    diagram: LocalActionDiagram
    witness: DiagramIsomorphism | None
    radius: int
    depth_checked: int

    @property
    def isomorphic(self) -> bool:
        return self.witness is not None

    def to_json_obj(self) -> dict:
        return {
            "radius": self.radius,
            "depth_checked": self.depth_checked,
            "isomorphic": self.isomorphic,
            "witness": self.witness.to_json_obj() if self.witness else None,
        }


def minimum_radius(d: LocalActionDiagram) -> int:
    return d.diameter() + 2


class _Matcher:
    def __init__(self, ball: DeltaTreeBall):
        self.ball = ball
        d = ball.diagram
        self.elements: dict[str, list[dict[str, str]]] = {}
        for v in d.vertices:
            group = d.group(v)
            self.elements[v] = [group.as_mapping(g) for g in group.elements()]
        self.branch = lru_cache(maxsize=None)(self._branch)

    def _extends(self, x: int, y: int, sigma: dict[str, str], k: int, skip: str | None) -> bool:
        """Every branch at ``x`` other than the one through colour ``skip``
        matches the branch at ``y`` that ``sigma`` names."""
        nx, ny = self.ball.neighbours_by_colour[x], self.ball.neighbours_by_colour[y]
        for c, u in nx.items():
            if c == skip:
                continue
            u2 = ny[sigma[c]]
            if not self.branch(u, u2, k - 1, self.ball.arc_colour(u, x), self.ball.arc_colour(u2, y)):
                return False
        return True

    def _branch(self, x: int, y: int, k: int, pin_from: str | None, pin_to: str | None) -> bool:
        ball = self.ball
        if ball.pi[x] != ball.pi[y]:
            return False
        if k == 0:
            return True
        if pin_from is not None and ball.diagram.colour_type[pin_from] != ball.diagram.colour_type[pin_to]:
            return False
        for sigma in self.elements[ball.pi[x]]:
            if pin_from is not None and sigma[pin_from] != pin_to:
                continue
            if self._extends(x, y, sigma, k, pin_from):
                return True
        return False

    def vertices_match(self, x: int, y: int, k: int) -> bool:
        return self.branch(x, y, k, None, None)

    def realized(self, x: int, y: int, k: int) -> list[dict[str, str]]:
        """Local permutations at ``x`` carried by legal maps sending ``x`` to ``y``."""
        if self.ball.pi[x] != self.ball.pi[y]:
            return []
        return [s for s in self.elements[self.ball.pi[x]] if self._extends(x, y, s, k, None)]


def recompute_lad(d: LocalActionDiagram, r: int | None = None) -> RecomputeResult:
    """Rebuild the diagram from the legal maps on the radius-``r`` ball and
    compare it with ``d``.

    The ball is rooted at the first vertex.  Every vertex of the quotient has
    a representative within distance ``D`` of the root and every arc one
    within ``D + 1``, where ``D`` is the diameter; neighbourhoods of depth
    ``r - D - 1`` around those representatives fit inside the ball.
    """
    if not d.is_concrete():
        raise DiagramError("concrete diagrams only")
    bound = minimum_radius(d)
    if r is None:
        r = bound
    if r < bound:
        raise DiagramError(f"increase radius: at least {bound} is needed, got {r}")
    ball = build_ball(d, d.vertices[0], r)
    D = d.diameter()
    k = r - (D + 1)
    m = _Matcher(ball)
    pool = [x for x in range(len(ball)) if ball.depth(x) <= D + 1]

    reps: list[int] = []
    cls: dict[int, int] = {}
    for x in pool:
        for i, rep in enumerate(reps):
            if m.vertices_match(x, rep, k):
                cls[x] = i
                break
        else:
            cls[x] = len(reps)
            reps.append(x)
    if any(ball.depth(x) > D for x in reps):
        raise AssertionError("a vertex orbit has no representative near the root")
    names = [f"u{i}" for i in range(len(reps))]

    # arc orbits at each representative: orbits of the realized local permutations
    groups: dict[int, FinitePermGroup] = {}
    arc_of_colour: dict[tuple[int, str], str] = {}
    arcs_out: dict[int, list[tuple[str, tuple[str, ...]]]] = {}
    for i, x in enumerate(reps):
        colours = sorted(ball.neighbours_by_colour[x])
        new = {c: f"{names[i]}:{c}" for c in colours}
        realized = m.realized(x, x, k)
        gens = [format_cycles(tuple(colours.index(s[c]) for c in colours), [new[c] for c in colours]) for s in realized]
        group = FinitePermGroup.from_cycles([new[c] for c in colours], gens)
        groups[i] = group
        arcs_out[i] = []
        for j, orbit in enumerate(group.orbits()):
            arc_id = f"{names[i]}>{j}"
            arcs_out[i].append((arc_id, orbit))
            for nc in orbit:
                arc_of_colour[(i, nc.split(":", 1)[1])] = arc_id

    def arc_class(x: int, u: int) -> str:
        """The recovered arc containing the ball arc ``x -> u`` (``x`` in the pool)."""
        i = cls[x]
        rep = reps[i]
        c = ball.arc_colour(x, u)
        for s in m.realized(x, rep, k):
            return arc_of_colour[(i, s[c])]
        raise AssertionError("pool vertex does not map onto its representative")

    arcs = []
    for i, x in enumerate(reps):
        for arc_id, orbit in arcs_out[i]:
            u = ball.neighbours_by_colour[x][orbit[0].split(":", 1)[1]]
            if u not in cls:
                raise AssertionError("arc target fell outside the pool")
            arcs.append(Arc(arc_id, names[i], names[cls[u]], arc_class(u, x), orbit))
    actions = {names[i]: ConcreteAction(tuple(groups[i].cycles())) for i in range(len(reps))}
    recovered = LocalActionDiagram.build(names, arcs, actions)
    return RecomputeResult(recovered, iso(recovered, d), r, k)
