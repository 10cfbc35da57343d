import json

import pytest

from localaction.classify import (
    OrbitPairing,
    catalog,
    dual_count,
    equivalence_witness,
    orbit_pairings,
    pair_classes,
    verify_witness,
)
from localaction.diagram import loads, validate
from localaction.isomorphism import dedup_by_iso
from localaction.perm import DegreeLimitError, FinitePermGroup
from localaction.scopo import scopo_features

# Counts fixed after pair equivalence and diagram isomorphism agreed.
EXPECTED_COUNTS = {0: 0, 1: 1, 2: 3, 3: 6, 4: 19, 5: 40}


def test_orbit_pairings():
    assert [p.pairing for p in orbit_pairings(FinitePermGroup.symmetric("123"))] == [(0,)]
    assert len(orbit_pairings(FinitePermGroup.from_cycles("12"))) == 2
    assert len(orbit_pairings(FinitePermGroup.from_cycles("123"))) == 4
    assert len(orbit_pairings(FinitePermGroup.from_cycles("1234"))) == 10


def test_pairing_must_be_involution():
    with pytest.raises(ValueError):
        OrbitPairing(FinitePermGroup.from_cycles("123"), (1, 2, 0))


def test_small_degrees():
    two = pair_classes(2)
    assert [(c.pairing.base.order(), c.pairing.pairing) for c in two] == [(1, (0, 1)), (1, (1, 0)), (2, (0,))]
    three = pair_classes(3)
    assert len(three) == 6
    assert sorted(c.pairing.base.order() for c in three) == [1, 1, 2, 2, 3, 6]


@pytest.mark.parametrize("d", sorted(EXPECTED_COUNTS))
def test_dual_count(d):
    assert dual_count(d) == (EXPECTED_COUNTS[d], EXPECTED_COUNTS[d])


def test_degree_bound():
    with pytest.raises(DegreeLimitError):
        pair_classes(7)


def test_witnesses_between_equivalent_pairs():
    h = FinitePermGroup.from_cycles("123")
    p1, p2 = OrbitPairing(h, (1, 0, 2)), OrbitPairing(h, (0, 2, 1))
    g = equivalence_witness(p1, p2)
    assert g is not None and verify_witness(p1, p2, g)
    assert equivalence_witness(p1, OrbitPairing(h, (0, 1, 2))) is None
    classes = pair_classes(4)
    for a in classes:
        for b in classes:
            if a.index < b.index and a.pairing.base.order() == b.pairing.base.order():
                assert equivalence_witness(a.pairing, b.pairing) is None


def test_emitted_diagrams(tmp_path):
    for d in (1, 2, 3, 4):
        diagrams = [c.diagram() for c in pair_classes(d)]
        assert all(validate(x).ok and len(x.vertices) == 1 for x in diagrams)
        assert len(dedup_by_iso(diagrams)) == len(diagrams)


def test_catalog_degree_three(tmp_path):
    summary = catalog(3, tmp_path)
    folder = tmp_path / "d3"
    assert summary["count"] == 6
    assert sorted(p.name for p in folder.iterdir()) == sorted(
        [f"class{i}.lad.json" for i in range(6)] + [f"class{i}.report.json" for i in range(6)] + ["summary.json"]
    )
    assert any(not c["burger_mozes"] for c in summary["classes"])
    on_disk = json.loads((folder / "summary.json").read_text())
    assert on_disk == summary
    for i in range(6):
        assert validate(loads((folder / f"class{i}.lad.json").read_text())).ok


def test_catalog_degree_two_focal_cycles(tmp_path):
    summary = catalog(2, tmp_path)
    assert summary["count"] == 3
    focal = [
        c["id"] for c in summary["classes"]
        if scopo_features(loads((tmp_path / "d2" / f"class{c['id']}.lad.json").read_text())).is_focal_cycle
    ]
    assert focal == [1]
    assert summary["classes"][1]["pairing"] == [1, 0] and summary["classes"][1]["subgroup_order"] == 1


def test_catalog_degree_zero_and_one(tmp_path):
    assert catalog(0, tmp_path)["count"] == 0
    one = catalog(1, tmp_path)
    assert one["count"] == 1 and one["classes"][0]["burger_mozes"]


def test_catalog_is_deterministic_across_jobs(tmp_path):
    catalog(4, tmp_path / "a", jobs=1)
    catalog(4, tmp_path / "b", jobs=2)
    a, b = tmp_path / "a" / "d4", tmp_path / "b" / "d4"
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()
