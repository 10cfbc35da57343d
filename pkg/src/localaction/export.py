"""DOT export for diagrams and balls."""

from __future__ import annotations

from .deltatree import DeltaTreeBall
from .diagram import ConcreteAction, LocalActionDiagram


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _action_label(d: LocalActionDiagram, v: str) -> str:
    act = d.actions[v]
    if isinstance(act, ConcreteAction):
        gens = ", ".join(act.generators) if act.generators else "1"
        return f"G({v}) = <{gens}>"
    return f"G({v}) = {act.description or 'symbolic'}"


def _colour_label(d: LocalActionDiagram, a: str) -> str:
    cols = d.arcs[a].colours
    if not cols:
        size = d.colour_set_size(a)
        return f"|X_{a}| = {'inf' if size == float('inf') else int(size)}"
    return f"X_{a} = {{{','.join(cols)}}}"


def diagram_to_dot(d: LocalActionDiagram) -> str:
    lines = ["digraph lad {"]
    for v in d.vertices:
        lines.append(f"  {_quote(v)} [label={_quote(v + chr(10) + _action_label(d, v))}];")
    for a in sorted(d.arcs):
        arc = d.arcs[a]
        lines.append(f"  {_quote(arc.origin)} -> {_quote(arc.target)} [label={_quote(_colour_label(d, a))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ball_to_dot(ball: DeltaTreeBall) -> str:
    lines = ["digraph ball {"]
    for x in range(len(ball)):
        lines.append(f"  n{x} [label={_quote(ball.pi[x])}];")
    for x, y in ball.arcs():
        lines.append(f"  n{x} -> n{y} [label={_quote(ball.arc_colour(x, y))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(value) -> str:
    if isinstance(value, DeltaTreeBall):
        return ball_to_dot(value)
    if isinstance(value, LocalActionDiagram):
        return diagram_to_dot(value)
    raise TypeError(f"cannot export {type(value).__name__} to DOT")
