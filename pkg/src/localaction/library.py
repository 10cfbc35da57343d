"""Bundled example diagrams shared by the tests, the docs and the CLI."""

from __future__ import annotations

from typing import Callable

from .constructors import SymbolicGroup, box_product, burger_mozes, from_pair
from .diagram import INF, Arc, ConcreteAction, LocalActionDiagram, SymbolicAction
from .perm import FinitePermGroup


def _two_vertex(colours: dict[str, tuple[str, ...]], gv, gw) -> LocalActionDiagram:
    """Vertices v, w with arcs a, b from v to w and their reverses."""
    arcs = [
        Arc("a", "v", "w", "abar", colours["a"]),
        Arc("abar", "w", "v", "a", colours["abar"]),
        Arc("b", "v", "w", "bbar", colours["b"]),
        Arc("bbar", "w", "v", "b", colours["bbar"]),
    ]
    return LocalActionDiagram.build(["v", "w"], arcs, {"v": gv, "w": gw})


def mundane() -> LocalActionDiagram:
    return _two_vertex(
        {"a": ("1", "2", "3"), "abar": ("4", "5"), "bbar": ("6", "7"), "b": ("8", "9")},
        ConcreteAction(("(1 2 3)(8 9)",)),
        ConcreteAction(("(4 5)(6 7)",)),
    )


def fancy() -> LocalActionDiagram:
    """The automorphism group of the 3-regular tree, acting on its vertices,
    as one orbit of the local action at v."""
    gv = SymbolicAction(
        {"a": INF, "b": 2},
        {
            "closed": True,
            "compactly_generated": True,
            "subdegree_finite": True,
            "semiregular": False,
            "generated_by_point_stabilizers": True,
            "nontrivial": True,
            "stabilizer_orbits_finite": True,
        },
        "Aut(T_3) x <(8 9)>",
    )
    return _two_vertex(
        {"a": (), "abar": ("4", "5"), "bbar": ("6", "7"), "b": ("8", "9")},
        gv,
        ConcreteAction(("(4 5)(6 7)",)),
    )


def biregular_24() -> LocalActionDiagram:
    """The quotient of a group with two vertex orbits on the (2,4)-biregular tree."""
    return _two_vertex(
        {"a": ("1",), "b": ("2",), "abar": ("3", "4"), "bbar": ("5", "6")},
        ConcreteAction(()),
        ConcreteAction(("(3 4)", "(5 6)")),
    )


def two_loops(stabilizer_orbits_finite: bool = True) -> LocalActionDiagram:
    """Burger-Mozes diagram of Aut(T_3) x S_3 acting on VT_3 and {1,2,3}."""
    flags = {
        "closed": True,
        "compactly_generated": True,
        "subdegree_finite": True,
        "semiregular": False,
        "generated_by_point_stabilizers": True,
        "nontrivial": True,
        "stabilizer_orbits_finite": stabilizer_orbits_finite,
    }
    return burger_mozes(SymbolicGroup([(INF, ()), (3, ("1", "2", "3"))], flags, "Aut(T_3) x S_3"))


def alternating(points: list[str]) -> FinitePermGroup:
    p = points
    gens = [f"({p[0]} {p[1]} {p[2]})", "(" + " ".join(p[2:]) + ")" if len(p) % 2 else "(" + " ".join(p[1:]) + ")"]
    return FinitePermGroup.from_cycles(p, gens)


def dihedral(points: list[str]) -> FinitePermGroup:
    n = len(points)
    rotation = "(" + " ".join(points) + ")"
    reflection = "".join(f"({points[i]} {points[n - i]})" for i in range(1, (n + 1) // 2))
    return FinitePermGroup.from_cycles(points, [rotation, reflection])


def simple_edge() -> LocalActionDiagram:
    """A finite stand-in for the simple box products: A_5 and S_3 on an edge."""
    a5 = alternating([str(i) for i in range(4, 9)])
    s3 = FinitePermGroup.symmetric(["1", "2", "3"])
    return box_product(a5, s3)


def exercise() -> LocalActionDiagram:
    """Box product of D_7 and D_5: local actions that are neither S_7 nor S_5."""
    d7 = dihedral([str(i) for i in range(1, 8)])
    d5 = dihedral([str(i) for i in range(8, 13)])
    return box_product(d7, d5)


def stray_leaf() -> LocalActionDiagram:
    """A leaf v with a single colour attached to a vertex carrying S_2 x S_3."""
    arcs = [
        Arc("a", "v", "w", "abar", ("1",)),
        Arc("abar", "w", "v", "a", ("2", "3")),
        Arc("c", "w", "w", "c", ("4", "5", "6")),
    ]
    actions = {"v": ConcreteAction(()), "w": ConcreteAction(("(2 3)", "(4 5 6)", "(4 5)"))}
    return LocalActionDiagram.build(["v", "w"], arcs, actions)


def focal_cycle() -> LocalActionDiagram:
    """One vertex, trivial group on two points, the two orbits swapped."""
    return from_pair(FinitePermGroup.from_cycles(["1", "2"]), [1, 0])


def burger_mozes_s3() -> LocalActionDiagram:
    return burger_mozes(FinitePermGroup.symmetric(["1", "2", "3"]))


def swapped_d3() -> LocalActionDiagram:
    """Degree 3, H = <(1 2)>, its two orbits paired with each other."""
    return from_pair(FinitePermGroup.from_cycles(["1", "2", "3"], ["(1 2)"]), [1, 0])


def path_leaf() -> LocalActionDiagram:
    """Two vertices on one edge, v a leaf with a single colour."""
    arcs = [Arc("a", "v", "w", "abar", ("c",)), Arc("abar", "w", "v", "a", ("x", "y"))]
    return LocalActionDiagram.build(["v", "w"], arcs, {"v": ConcreteAction(()), "w": ConcreteAction(("(x y)",))})


EXAMPLES: dict[str, Callable[[], LocalActionDiagram]] = {
    "fig1": mundane,
    "fig2": fancy,
    "fig3": biregular_24,
    "fig4": two_loops,
    "fig5": simple_edge,
    "exercise": exercise,
    "stray_leaf": stray_leaf,
    "focal_cycle": focal_cycle,
    "bm_s3": burger_mozes_s3,
    "d3_swap": swapped_d3,
    "path_leaf": path_leaf,
}


def example(name: str) -> LocalActionDiagram:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(EXAMPLES)}") from None


def all_examples() -> dict[str, LocalActionDiagram]:
    return {name: build() for name, build in EXAMPLES.items()}


def concrete_examples() -> dict[str, LocalActionDiagram]:
    return {name: d for name, d in all_examples().items() if d.is_concrete()}
