from hypothesis import given, settings
from hypothesis import strategies as st

from localaction.constructors import from_pair
from localaction.isomorphism import dedup_by_iso, iso, verify_isomorphism
from localaction.library import biregular_24, burger_mozes_s3
from localaction.perm import FinitePermGroup

from oracles import random_diagram


def renamed(d, prefix="z"):
    return d.rename_colours({c: f"{prefix}{c}" for c in d.colour_type})


def test_identity():
    d = biregular_24()
    w = iso(d, d)
    assert w is not None and w.vertex_map == {"v": "v", "w": "w"}


def test_colour_renamed_copy():
    d = biregular_24()
    names = dict(zip("123456", "xyzuvw"))
    e = d.rename_colours(names)
    w = iso(d, e)
    assert w is not None and verify_isomorphism(d, e, w)
    assert w.vertex_map == {"v": "v", "w": "w"}
    assert w.colour_maps["v"] == {"1": "x", "2": "y"}


def test_reversal_structure_matters():
    self_paired = burger_mozes_s3()
    swapped = from_pair(FinitePermGroup.from_cycles(["1", "2", "3"], ["(1 2)"]), [1, 0])
    assert iso(self_paired, swapped) is None


def test_non_isomorphic_groups():
    a = from_pair(FinitePermGroup.from_cycles("123", ["(1 2 3)"]), {})
    b = from_pair(FinitePermGroup.symmetric("123"), {})
    assert iso(a, b) is None


def test_symbolic_comparison(examples):
    d = examples["fig4"]
    assert iso(d, d) is not None
    assert iso(d, examples["fig1"]) is None


def test_dedup():
    d = biregular_24()
    assert dedup_by_iso([d, renamed(d)]) == [[0, 1]]


@given(st.integers(min_value=0, max_value=5_000))
@settings(max_examples=40, deadline=None)
def test_random_diagram_vs_renamed_copy(seed):
    d = random_diagram(seed, max_vertices=4, max_arcs=10)
    e = renamed(d)
    w = iso(d, e)
    assert w is not None and verify_isomorphism(d, e, w)
