"""Vertex-transitive P-closed actions on the d-regular tree, up to conjugacy.

Such actions correspond to pairs ``(H, r)``: a subgroup ``H`` of ``S_d`` up to
conjugacy and an involution ``r`` of its orbit set, where ``(H, r)`` and
``(gHg^-1, r')`` are identified when the orbit map induced by ``g``
intertwines ``r`` and ``r'``.  Each class yields a one-vertex diagram.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .constructors import from_pair
from .diagram import LocalActionDiagram, dumps
from .isomorphism import dedup_by_iso
from .perm import MAX_CLASS_DEGREE, DegreeLimitError, FinitePermGroup, Perm, conjugate, subgroup_classes
from .properties import property_report


@dataclass(frozen=True)
class OrbitPairing:
    base: FinitePermGroup
    pairing: tuple[int, ...]

    def __post_init__(self):
        r = self.pairing
        if sorted(r) != list(range(len(self.base.orbits()))) or any(r[r[i]] != i for i in range(len(r))):
            raise ValueError(f"{r} is not an involution of the orbit set")

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.pairing))

    def diagram(self) -> LocalActionDiagram:
        return from_pair(self.base, self.pairing)


def involutions(n: int) -> list[tuple[int, ...]]:
    """All involutions of ``range(n)``, identity first, in lexicographic order."""
    return sorted(
        (p for p in itertools.permutations(range(n)) if all(p[p[i]] == i for i in range(n))),
    )


def orbit_pairings(group: FinitePermGroup) -> list[OrbitPairing]:
    return [OrbitPairing(group, r) for r in involutions(len(group.orbits()))]


def _orbit_action(group: FinitePermGroup, g: Perm) -> tuple[int, ...]:
    """The permutation of the orbit list of ``group`` induced by ``g``."""
    orbits = group.orbits()
    where = {}
    for i, orb in enumerate(orbits):
        for x in orb:
            where[group.index[x]] = i
    return tuple(where[g[group.index[orb[0]]]] for orb in orbits)


def normalizer_elements(group: FinitePermGroup) -> list[Perm]:
    """Elements of the full symmetric group normalizing ``group``."""
    n = group.degree
    return [g for g in itertools.permutations(range(n)) if all(group.contains(conjugate(h, g)) for h in group.generators)]


def _conj_pairing(theta: Sequence[int], r: Sequence[int]) -> tuple[int, ...]:
    """``theta r theta^-1`` on orbit indices."""
    out = [0] * len(r)
    for i, j in enumerate(r):
        out[theta[i]] = theta[j]
    return tuple(out)


@dataclass(frozen=True)
class PairClass:
    index: int
    pairing: OrbitPairing
    size: int

    @property
    def is_burger_mozes(self) -> bool:
        return self.pairing.is_identity

    def diagram(self) -> LocalActionDiagram:
        return self.pairing.diagram()


def equivalence_witness(p1: OrbitPairing, p2: OrbitPairing) -> Perm | None:
    """An element ``g`` of the symmetric group with ``g H1 g^-1 = H2`` whose
    induced orbit map carries ``r1`` to ``r2``, or ``None``."""
    h1, h2 = p1.base, p2.base
    if h1.degree != h2.degree or h1.order() != h2.order():
        return None
    for g in itertools.permutations(range(h1.degree)):
        if not all(h2.contains(conjugate(h, g)) for h in h1.generators):
            continue
        theta = _induced_orbit_map(h1, h2, g)
        if _conj_pairing(theta, p1.pairing) == p2.pairing:
            return g
    return None


def _induced_orbit_map(h1: FinitePermGroup, h2: FinitePermGroup, g: Perm) -> tuple[int, ...]:
    where = {}
    for i, orb in enumerate(h2.orbits()):
        for x in orb:
            where[h2.index[x]] = i
    return tuple(where[g[h1.index[orb[0]]]] for orb in h1.orbits())


def verify_witness(p1: OrbitPairing, p2: OrbitPairing, g: Perm) -> bool:
    h1, h2 = p1.base, p2.base
    if not all(h2.contains(conjugate(h, g)) for h in h1.generators):
        return False
    if h1.order() != h2.order():
        return False
    return _conj_pairing(_induced_orbit_map(h1, h2, g), p1.pairing) == p2.pairing


def _classes_for_subgroup(group: FinitePermGroup) -> list[tuple[tuple[int, ...], int]]:
    """Representatives of pairings up to the normalizer, with orbit sizes."""
    thetas = sorted({_orbit_action(group, g) for g in normalizer_elements(group)})
    seen: set[tuple[int, ...]] = set()
    result = []
    for r in involutions(len(group.orbits())):
        if r in seen:
            continue
        orbit = {_conj_pairing(t, r) for t in thetas}
        seen |= orbit
        result.append((r, len(orbit)))
    return result


def _check_degree(d: int, max_degree: int) -> None:
    if d > max_degree:
        raise DegreeLimitError(f"degree {d} exceeds the classification bound {max_degree}")
    if d < 0:
        raise ValueError("degree must be nonnegative")


def pair_classes(d: int, max_degree: int = MAX_CLASS_DEGREE, jobs: int = 1) -> list[PairClass]:
    """One representative per equivalence class of pairs ``(H, r)`` with ``H <= S_d``.

    Degree 0 has no points and no tree, so it has no classes.
    """
    _check_degree(d, max_degree)
    if d == 0:
        return []
    groups = subgroup_classes(d, max_degree)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_group = list(pool.map(_classes_for_subgroup, groups))
    else:
        per_group = [_classes_for_subgroup(g) for g in groups]
    out = []
    for group, reps in zip(groups, per_group):
        for r, size in reps:
            out.append(PairClass(len(out), OrbitPairing(group, r), size))
    return out


# -- catalog -------------------------------------------------------------------


def _class_entry(pc: PairClass) -> dict:
    d = pc.diagram()
    report = property_report(d)
    group = pc.pairing.base
    return {
        "id": pc.index,
        "subgroup_order": group.order(),
        "subgroup_generators": group.cycles(),
        "orbit_sizes": [len(o) for o in group.orbits()],
        "pairing": list(pc.pairing.pairing),
        "burger_mozes": pc.is_burger_mozes,
        "verdicts": {
            "geometrically_dense": report["geometrically_dense"].value,
            "g_plus_trivial": report["g_plus_trivial"].value,
            "simple_nondiscrete_with_translation": report["simple_nondiscrete_with_translation"].value,
        },
        "_diagram": dumps(d),
        "_report": json.dumps(report.to_json_obj(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
    }


def catalog(d: int, out: str | Path, jobs: int = 1, max_degree: int = MAX_CLASS_DEGREE) -> dict:
    """Write one diagram and one property report per class plus a summary.

    Files go to ``out/d<d>/``; the returned summary is also written there.
    """
    classes = pair_classes(d, max_degree, jobs)
    if jobs > 1 and classes:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_class_entry, classes))
    else:
        entries = [_class_entry(pc) for pc in classes]
    folder = Path(out) / f"d{d}"
    folder.mkdir(parents=True, exist_ok=True)
    for e in entries:
        (folder / f"class{e['id']}.lad.json").write_text(e.pop("_diagram"), encoding="utf-8")
        (folder / f"class{e['id']}.report.json").write_text(e.pop("_report"), encoding="utf-8")
    summary = {"degree": d, "count": len(entries), "classes": entries}
    if d == 0:
        summary["note"] = "degree 0 has no points, so there is no tree and no class"
    (folder / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return summary


def dual_count(d: int, max_degree: int = MAX_CLASS_DEGREE) -> tuple[int, int]:
    """Class counts from pair equivalence and from diagram isomorphism."""
    if d == 0:
        return 0, 0
    classes = pair_classes(d, max_degree)
    diagrams = [p.diagram() for g in subgroup_classes(d, max_degree) for p in orbit_pairings(g)]
    return len(classes), len(dedup_by_iso(diagrams))


__all__ = [
    "OrbitPairing", "PairClass", "catalog", "dedup_by_iso", "dual_count", "equivalence_witness", "involutions",
    "normalizer_elements", "orbit_pairings", "pair_classes", "verify_witness",
]
