import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localaction.diagram import (
    Arc,
    ConcreteAction,
    DiagramFormatError,
    LocalActionDiagram,
    SymbolicAction,
    dumps,
    from_json_obj,
    loads,
    to_json_obj,
    validate,
)
from localaction.library import mundane

from oracles import random_diagram


def replace_action(d, v, action):
    actions = dict(d.actions)
    actions[v] = action
    return LocalActionDiagram.build(d.vertices, d.arcs.values(), actions)


def test_figure_one_validates():
    assert validate(mundane()).ok


def test_trivial_group_breaks_orbit_condition():
    d = replace_action(mundane(), "v", ConcreteAction(()))
    report = validate(d)
    assert not report.ok
    assert any("orbit partition {1},{2},{3},{8},{9}" in line for line in report.violations)
    assert any("{1,2,3},{8,9}" in line for line in report.violations)


def test_shared_colour_is_reported():
    arcs = [Arc("a", "v", "v", "a", ("1",)), Arc("b", "v", "v", "b", ("1",))]
    d = LocalActionDiagram.build(["v"], arcs, {"v": ConcreteAction(())})
    assert any("disjoint" in line for line in validate(d).violations)


def test_structural_violations():
    arcs = [Arc("a", "v", "w", "b", ("1",)), Arc("b", "v", "v", "a", ("2",))]
    d = LocalActionDiagram.build(["v", "w"], arcs, {"v": ConcreteAction(()), "w": ConcreteAction(())})
    text = str(validate(d))
    assert "b" in text and text != "ok"
    empty = LocalActionDiagram.build(["v"], [Arc("a", "v", "v", "a", ())], {"v": ConcreteAction(())})
    assert not validate(empty).ok


def test_disconnected_graph_is_reported():
    arcs = [Arc("a", "v", "v", "a", ("1",)), Arc("b", "w", "w", "b", ("2",))]
    d = LocalActionDiagram.build(["v", "w"], arcs, {"v": ConcreteAction(()), "w": ConcreteAction(())})
    assert any("connected" in line for line in validate(d).violations)


def test_symbolic_orbits_must_cover_the_arcs(examples):
    d = examples["fig2"]
    assert validate(d).ok
    broken = replace_action(d, "v", SymbolicAction({"a": float("inf")}, dict(d.actions["v"].flags)))
    assert not validate(broken).ok


def test_every_bundled_example_validates(examples):
    for name, d in examples.items():
        assert validate(d).ok, name


def test_json_round_trip_is_bit_exact(examples):
    for d in examples.values():
        text = dumps(d)
        assert dumps(loads(text)) == text
        assert loads(text) == d


def test_malformed_json_is_rejected():
    with pytest.raises(DiagramFormatError):
        loads("[]")
    with pytest.raises(DiagramFormatError):
        loads('{"vertices": [{"id": "v"}], "arcs": []}')
    with pytest.raises(DiagramFormatError):
        loads("not json")


def test_symbolic_infinity_serializes_as_text(examples):
    obj = to_json_obj(examples["fig4"])
    sizes = obj["vertices"][0]["local_action"]["orbits"]
    assert sorted(sizes.values(), key=str) == [3, "inf"]
    assert from_json_obj(json.loads(json.dumps(obj))) == examples["fig4"]


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=50, deadline=None)
def test_random_diagrams_validate_and_round_trip(seed):
    d = random_diagram(seed)
    assert validate(d).ok
    assert loads(dumps(d)) == d
