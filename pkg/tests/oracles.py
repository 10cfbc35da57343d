"""Brute-force oracles, written without the package's search code.

They are slow and only meant for small inputs.  ``python tests/oracles.py``
recomputes the frozen values in ``oracle_values.json``.
"""

from __future__ import annotations

import itertools
import json
import random
from pathlib import Path

from localaction.diagram import Arc, ConcreteAction, LocalActionDiagram

FROZEN = Path(__file__).with_name("oracle_values.json")


# -- groups as explicit element sets --------------------------------------------


def compose(p, q):
    return tuple(p[i] for i in q)


def closure(gens, n):
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def all_subgroups(n):
    """Every subgroup of S_n, from closures of all pairs (enough for n <= 4)."""
    sym = list(itertools.permutations(range(n)))
    return {closure([a, b], n) for a in sym for b in sym}


def conjugacy_classes_of_subgroups(n):
    subs = all_subgroups(n)
    sym = list(itertools.permutations(range(n)))
    classes = []
    seen = set()
    for h in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if h in seen:
            continue
        orbit = set()
        for g in sym:
            inv = tuple(sorted(range(n), key=lambda i: g[i]))
            orbit.add(frozenset(compose(compose(g, x), inv) for x in h))
        seen |= orbit
        classes.append((h, len(orbit)))
    return subs, classes


def group_elements_by_name(d: LocalActionDiagram, v: str) -> set[tuple[tuple[str, str], ...]]:
    """All elements of G(v) as sorted (colour, image) tuples."""
    group = d.group(v)
    n = group.degree
    elems = closure(list(group.generators), n) if group.generators else frozenset({tuple(range(n))})
    return {tuple(sorted((group.domain[i], group.domain[g[i]]) for i in range(n))) for g in elems}


# -- scopos ---------------------------------------------------------------------


def brute_scopos(d: LocalActionDiagram):
    cands = sorted(a for a in d.arcs if d.colour_set_size(a) == 1)
    found = []
    for k in range(len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            chosen = set(combo)
            ok = True
            for a in chosen:
                rev = d.arcs[a].reverse
                if rev in chosen:
                    ok = False
                    break
                for b in d.arcs.values():
                    if b.target == d.arcs[a].origin and b.id != rev and b.id not in chosen:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(frozenset(chosen))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# -- ball maps ------------------------------------------------------------------


def brute_ball_maps(ball) -> list[tuple[int, ...]]:
    """All root-fixing maps of the ball that preserve the tree, vertex and arc
    projections and have every interior local action in the prescribed group."""
    d = ball.diagram
    groups = {v: group_elements_by_name(d, v) for v in d.vertices}

    def extend(g: dict[int, int], pending: list[tuple[int, int]]):
        if not pending:
            yield dict(g)
            return
        (x, y), rest = pending[0], pending[1:]
        kids_x, kids_y = ball.children[x], ball.children[y]
        if len(kids_x) != len(kids_y):
            return
        for perm in itertools.permutations(kids_y):
            if any(
                ball.pi[a] != ball.pi[b] or ball.arc_projection(x, a) != ball.arc_projection(y, b)
                for a, b in zip(kids_x, perm)
            ):
                continue
            for a, b in zip(kids_x, perm):
                g[a] = b
            yield from extend(g, rest + list(zip(kids_x, perm)))
            for a in kids_x:
                del g[a]

    maps = []
    for g in extend({0: 0}, [(0, 0)]):
        legal = True
        for v in range(len(ball)):
            if not ball.is_interior(v):
                continue
            gv = g[v]
            sigma = []
            for c, u in ball.neighbours_by_colour[v].items():
                sigma.append((c, ball.arc_colour(gv, g[u])))
            if tuple(sorted(sigma)) not in groups[ball.pi[v]]:
                legal = False
                break
        if legal:
            maps.append(tuple(g[i] for i in range(len(ball))))
    return maps


# -- random diagrams ------------------------------------------------------------


def random_diagram(seed: int, max_vertices: int = 6, max_arcs: int = 16) -> LocalActionDiagram:
    """A random valid concrete diagram; singleton colour sets are common so
    that scopos occur often."""
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    edges: list[tuple[str, str, bool]] = []
    for i in range(1, n):
        edges.append((verts[rng.randrange(i)], verts[i], False))
    budget = max_arcs - 2 * len(edges)
    while budget > 0 and rng.random() < 0.6:
        x, y = rng.choice(verts), rng.choice(verts)
        self_paired = x == y and rng.random() < 0.5
        cost = 1 if self_paired else 2
        if cost > budget:
            break
        edges.append((x, y, self_paired))
        budget -= cost
    arcs: list[Arc] = []
    counter = itertools.count()
    for k, (x, y, self_paired) in enumerate(edges):
        a, b = f"e{k}", f"e{k}r"
        size = lambda: rng.choice([1, 1, 1, 2, 3])  # noqa: E731
        if self_paired:
            arcs.append(Arc(a, x, x, a, tuple(f"c{next(counter)}" for _ in range(size()))))
        else:
            arcs.append(Arc(a, x, y, b, tuple(f"c{next(counter)}" for _ in range(size()))))
            arcs.append(Arc(b, y, x, a, tuple(f"c{next(counter)}" for _ in range(size()))))
    actions = {}
    for v in verts:
        gens = []
        for arc in arcs:
            if arc.origin != v or len(arc.colours) < 2:
                continue
            cols = arc.colours
            gens.append("(" + " ".join(cols) + ")")
            if len(cols) > 2 and rng.random() < 0.5:
                gens.append(f"({cols[0]} {cols[1]})")
        actions[v] = ConcreteAction(tuple(gens))
    return LocalActionDiagram.build(verts, arcs, actions)


# -- frozen values ----------------------------------------------------------------


def compute_frozen() -> dict:
    from localaction.deltatree import build_ball
    from localaction.library import biregular_24, burger_mozes_s3

    values: dict = {"subgroup_classes": {}, "subgroup_totals": {}, "ball_group_orders": {}}
    for n in range(1, 5):
        subs, classes = conjugacy_classes_of_subgroups(n)
        values["subgroup_classes"][str(n)] = len(classes)
        values["subgroup_totals"][str(n)] = len(subs)
    for name, build in (("bm_s3", burger_mozes_s3), ("fig3", biregular_24)):
        d = build()
        for r in (1, 2):
            values["ball_group_orders"][f"{name}/r{r}"] = len(brute_ball_maps(build_ball(d, d.vertices[0], r)))
    return values


if __name__ == "__main__":
    FROZEN.write_text(json.dumps(compute_frozen(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(FROZEN.read_text())
