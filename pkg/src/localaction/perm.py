"""Finite permutation groups acting on named colour domains.

Permutations are stored as tuples of point indices into a sorted domain of
colour names; ``p[i]`` is the image of point ``i``.  The stabilizer chain is a
deterministic Schreier-Sims, good enough for the small degrees used by local
action diagrams and for the permutation groups induced on finite tree balls.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

Perm = tuple[int, ...]

MAX_DEGREE = 12
MAX_CLASS_DEGREE = 6

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class PermError(ValueError):
    """Raised for malformed permutations or out-of-domain points."""


class DegreeLimitError(PermError):
    """Raised when an operation is asked to work above its configured degree."""


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Return the permutation ``x -> p[q[x]]`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def check_perm(p: Sequence[int], n: int) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise PermError(f"not a bijection of a {n}-point domain: {tuple(p)!r}")


def parse_cycles(text: str, index: Mapping[str, int]) -> Perm:
    """Parse cycle notation such as ``(a b c)(d e)`` over the named points.

    The empty string (or only whitespace) is the identity.
    """
    n = len(index)
    image = list(range(n))
    leftover = _CYCLE_RE.sub(" ", text)
    if leftover.strip():
        raise PermError(f"unexpected text outside cycles in {text!r}")
    seen: set[str] = set()
    for body in _CYCLE_RE.findall(text):
        names = body.split()
        for name in names:
            if name not in index:
                raise PermError(f"colour {name!r} is not in the domain")
            if name in seen:
                raise PermError(f"colour {name!r} appears twice in {text!r}")
            seen.add(name)
        for a, b in zip(names, names[1:] + names[:1]):
            image[index[a]] = index[b]
    return tuple(image)


def format_cycles(p: Perm, names: Sequence[str]) -> str:
    """Cycle notation with fixed points omitted; ``""`` for the identity."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cycle = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p[j]
        out.append("(" + " ".join(names[k] for k in cycle) + ")")
    return "".join(out)


def orbit_partition(n: int, gens: Iterable[Perm]) -> list[list[int]]:
    gens = list(gens)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    queue.append(y)
        orbits.append(sorted(orbit))
    return orbits


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    ``base`` may be given to force a prefix of base points; ``level_generators(1)``
    then generates the stabilizer of ``base[0]``.
    """

    def __init__(self, degree: int, generators: Iterable[Perm], base: Sequence[int] = ()):
        self.degree = degree
        gens = [g for g in dict.fromkeys(tuple(g) for g in generators) if not is_identity(g)]
        for g in gens:
            check_perm(g, degree)
        base = list(base)
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i in range(degree) if g[i] != i))
        self.base = base
        self._dist = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
        self._trans = [self._transversal(base[i], self._dist[i]) for i in range(len(base))]
        self._build()

    def _transversal(self, point: int, gens: list[Perm]) -> dict[int, Perm]:
        trans = {point: identity(self.degree)}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = compose(s, ux)
                    queue.append(y)
        return trans

    def _sift(self, g: Perm, start: int) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            b = g[self.base[level]]
            trans = self._trans[level]
            if b not in trans:
                return g, level
            g = compose(invert(trans[b]), g)
        return g, len(self.base)

    def _build(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            trans = self._trans[i]
            for b in list(trans):
                ub = trans[b]
                for s in self._dist[i]:
                    h = compose(invert(trans[s[b]]), compose(s, ub))
                    h, j = self._sift(h, i + 1)
                    if j < len(self.base) or not is_identity(h):
                        if j == len(self.base):
                            self.base.append(next(x for x in range(self.degree) if h[x] != x))
                            self._dist.append([])
                            self._trans.append({})
                        for level in range(i + 1, j + 1):
                            self._dist[level].append(h)
                            self._trans[level] = self._transversal(self.base[level], self._dist[level])
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        total = 1
        for trans in self._trans:
            total *= len(trans)
        return total

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        h, level = self._sift(tuple(g), 0)
        return level == len(self.base) and is_identity(h)

    def level_generators(self, level: int) -> list[Perm]:
        """Strong generators fixing ``base[:level]`` (they generate that stabilizer)."""
        if level >= len(self.base):
            return []
        return list(self._dist[level])

    def elements(self) -> Iterator[Perm]:
        levels = [list(t.values()) for t in self._trans]
        if not levels:
            yield identity(self.degree)
            return
        for choice in itertools.product(*levels):
            g = choice[-1]
            for u in reversed(choice[:-1]):
                g = compose(u, g)
            yield g


@dataclass(frozen=True)
class FinitePermGroup:
    """A permutation group given by generators on a sorted domain of colour names."""

    domain: tuple[str, ...]
    generators: tuple[Perm, ...] = ()

    def __post_init__(self):
        if list(self.domain) != sorted(set(self.domain)):
            raise PermError("domain must be sorted and free of repeats")
        for g in self.generators:
            check_perm(g, len(self.domain))

    @classmethod
    def from_cycles(cls, domain: Iterable[str], generators: Iterable[str] = ()) -> "FinitePermGroup":
        names = tuple(sorted(set(domain)))
        index = {name: i for i, name in enumerate(names)}
        gens = tuple(parse_cycles(text, index) for text in generators)
        return cls(names, _reduce_gens(gens))

    @classmethod
    def symmetric(cls, domain: Iterable[str]) -> "FinitePermGroup":
        names = tuple(sorted(set(domain)))
        n = len(names)
        gens = []
        if n >= 2:
            gens.append(tuple([1, 0] + list(range(2, n))))
        if n >= 3:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls(names, tuple(gens))

    @property
    def degree(self) -> int:
        return len(self.domain)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.domain)}

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self.degree, self.generators)

    def cycles(self) -> list[str]:
        return [format_cycles(g, self.domain) for g in self.generators]

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators or all(is_identity(g) for g in self.generators)

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def orbits(self) -> list[tuple[str, ...]]:
        return sorted(
            tuple(self.domain[i] for i in orbit) for orbit in orbit_partition(self.degree, self.generators)
        )

    def orbit_of(self, x: str) -> tuple[str, ...]:
        for orbit in self.orbits():
            if x in orbit:
                return orbit
        raise PermError(f"colour {x!r} is not in the domain")

    def elements(self) -> Iterator[Perm]:
        return self.chain.elements()

    def point_stabilizer(self, x: str) -> "FinitePermGroup":
        if x not in self.index:
            raise PermError(f"colour {x!r} is not in the domain")
        chain = StabilizerChain(self.degree, self.generators, base=[self.index[x]])
        return FinitePermGroup(self.domain, _reduce_gens(chain.level_generators(1)))

    def as_mapping(self, g: Perm) -> dict[str, str]:
        return {self.domain[i]: self.domain[j] for i, j in enumerate(g)}


def _reduce_gens(gens: Iterable[Perm]) -> tuple[Perm, ...]:
    """Drop identities and duplicates, then generators that do not grow the group."""
    gens = [g for g in dict.fromkeys(gens) if not is_identity(g)]
    if len(gens) <= 2:
        return tuple(gens)
    kept: list[Perm] = []
    order = 1
    for g in gens:
        chain = StabilizerChain(len(g), kept + [g])
        if chain.order() > order:
            kept.append(g)
            order = chain.order()
    return tuple(kept)


def orbits(group: FinitePermGroup) -> list[tuple[str, ...]]:
    return group.orbits()


def group_order(group: FinitePermGroup, max_degree: int = MAX_DEGREE) -> int:
    if group.degree > max_degree:
        raise DegreeLimitError(f"degree {group.degree} exceeds the limit of {max_degree}")
    return group.order()


def point_stabilizer(group: FinitePermGroup, x: str) -> FinitePermGroup:
    return group.point_stabilizer(x)


@dataclass(frozen=True)
class ActionFlags:
    transitive: bool
    semiregular: bool
    generated_by_point_stabilizers: bool
    nontrivial: bool


def action_flags(group: FinitePermGroup) -> ActionFlags:
    order = group.order()
    stabs = [group.point_stabilizer(x) for x in group.domain]
    semiregular = all(s.is_trivial() for s in stabs)
    stab_gens = [g for s in stabs for g in s.generators]
    # The trivial group counts as *not* generated by point stabilizers: the
    # condition is only meaningful for nontrivial local actions.
    by_stabs = order > 1 and StabilizerChain(group.degree, stab_gens).order() == order
    return ActionFlags(
        transitive=len(group.orbits()) <= 1,
        semiregular=semiregular,
        generated_by_point_stabilizers=by_stabs,
        nontrivial=order > 1,
    )


def conjugate(g: Perm, theta: Perm) -> Perm:
    """``theta g theta^-1``."""
    return compose(theta, compose(g, invert(theta)))


def _orbitals(group: FinitePermGroup) -> list[list[int]]:
    """Orbital id of each ordered pair, plus orbital sizes at the end."""
    n = group.degree
    ids = [[-1] * n for _ in range(n)]
    sizes = []
    for i in range(n):
        for j in range(n):
            if ids[i][j] >= 0:
                continue
            oid = len(sizes)
            ids[i][j] = oid
            queue = deque([(i, j)])
            count = 0
            while queue:
                x, y = queue.popleft()
                count += 1
                for g in group.generators:
                    u, v = g[x], g[y]
                    if ids[u][v] < 0:
                        ids[u][v] = oid
                        queue.append((u, v))
            sizes.append(count)
    return ids + [sizes]


def _point_invariant(group: FinitePermGroup, x: int) -> tuple:
    name = group.domain[x]
    stab = group.point_stabilizer(name)
    return (len(group.orbit_of(name)), stab.order(), tuple(sorted(len(o) for o in stab.orbits())))


def perm_isomorphic(
    g1: FinitePermGroup,
    g2: FinitePermGroup,
    allowed: Mapping[str, Iterable[str]] | None = None,
) -> dict[str, str] | None:
    """Find a bijection ``theta`` of domains with ``theta g1 theta^-1 = g2``.

    ``allowed`` optionally restricts the image of each point of ``g1``.  The
    returned witness has been verified by conjugating every generator.
    """
    n = g1.degree
    if n != g2.degree or g1.order() != g2.order():
        return None
    if sorted(len(o) for o in g1.orbits()) != sorted(len(o) for o in g2.orbits()):
        return None
    inv1 = [_point_invariant(g1, x) for x in range(n)]
    inv2 = [_point_invariant(g2, y) for y in range(n)]
    orb1, orb2 = _orbitals(g1), _orbitals(g2)
    sizes1, sizes2 = orb1[-1], orb2[-1]
    cands = []
    for x in range(n):
        ok = {y for y in range(n) if inv2[y] == inv1[x]}
        if allowed is not None:
            ok &= {g2.index[c] for c in allowed.get(g1.domain[x], ())}
        if not ok:
            return None
        cands.append(sorted(ok))
    # Assign points orbit by orbit in breadth-first order so orbital
    # constraints apply as early as possible.
    order = [x for orbit in orbit_partition(n, g1.generators) for x in orbit]
    theta = [-1] * n
    used = [False] * n
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    counts: dict[int, int] = {}

    def bind(o1: int, o2: int, trail: list[int]) -> bool:
        if sizes1[o1] != sizes2[o2]:
            return False
        if o1 in fwd:
            if fwd[o1] != o2:
                return False
        elif o2 in back:
            return False
        else:
            fwd[o1] = o2
            back[o2] = o1
        counts[o1] = counts.get(o1, 0) + 1
        trail.append(o1)
        return True

    def unbind(trail: list[int]) -> None:
        for o1 in reversed(trail):
            counts[o1] -= 1
            if counts[o1] == 0:
                del counts[o1]
                del back[fwd.pop(o1)]

    def search(k: int) -> bool:
        if k == n:
            t = tuple(theta)
            return all(g2.contains(conjugate(g, t)) for g in g1.generators)
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            trail: list[int] = []
            ok = bind(orb1[x][x], orb2[y][y], trail)
            for prev in order[:k]:
                if not ok:
                    break
                py = theta[prev]
                ok = bind(orb1[prev][x], orb2[py][y], trail) and bind(orb1[x][prev], orb2[y][py], trail)
            if ok:
                theta[x] = y
                used[y] = True
                if search(k + 1):
                    return True
                used[y] = False
                theta[x] = -1
            unbind(trail)
        return False

    if not search(0):
        return None
    return {g1.domain[x]: g2.domain[theta[x]] for x in range(n)}


def verify_conjugation(g1: FinitePermGroup, g2: FinitePermGroup, theta: Mapping[str, str]) -> bool:
    if sorted(theta) != list(g1.domain) or sorted(theta.values()) != list(g2.domain):
        return False
    t = tuple(g2.index[theta[name]] for name in g1.domain)
    return g1.order() == g2.order() and all(g2.contains(conjugate(g, t)) for g in g1.generators)


# -- subgroup classes of symmetric groups ------------------------------------


def _closure(gens: Sequence[Perm], n: int) -> frozenset[Perm]:
    elems = {identity(n)}
    queue = deque(elems)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in elems:
                elems.add(y)
                queue.append(y)
    return frozenset(elems)


def _small_generating_set(elems: frozenset[Perm], n: int) -> tuple[Perm, ...]:
    gens: list[Perm] = []
    span = frozenset({identity(n)})
    for g in sorted(elems):
        if g not in span:
            gens.append(g)
            span = _closure(gens, n)
            if len(span) == len(elems):
                break
    return tuple(gens)


def _cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted(len(o) for o in orbit_partition(len(p), [p])))


def _class_invariant(elems: frozenset[Perm], gens: Sequence[Perm], n: int) -> tuple:
    types: dict[tuple[int, ...], int] = {}
    for g in elems:
        t = _cycle_type(g)
        types[t] = types.get(t, 0) + 1
    orbit_sizes = tuple(sorted(len(o) for o in orbit_partition(n, gens)))
    return len(elems), orbit_sizes, tuple(sorted(types.items()))


def conjugating_element(
    gens1: Sequence[Perm], elems2: frozenset[Perm], size1: int, n: int
) -> Perm | None:
    """An element ``g`` of ``S_n`` with ``g H1 g^-1 = H2`` by exhaustive search."""
    if size1 != len(elems2):
        return None
    for g in itertools.permutations(range(n)):
        if all(conjugate(h, g) in elems2 for h in gens1):
            return g
    return None


def subgroup_classes(d: int, max_degree: int = MAX_CLASS_DEGREE) -> list[FinitePermGroup]:
    """One representative for each conjugacy class of subgroups of ``S_d``.

    Cyclic extension: every class representative is extended by one further
    element (one per coset), closed, and kept if it is new up to conjugacy.
    """
    if d < 0:
        raise PermError("degree must be nonnegative")
    if d > max_degree:
        raise DegreeLimitError(f"degree {d} exceeds the subgroup-class limit of {max_degree}")
    names = tuple(str(i) for i in range(1, d + 1))
    if d <= 1:
        return [FinitePermGroup(names, ())]
    n = d
    everything = list(itertools.permutations(range(n)))
    trivial = frozenset({identity(n)})
    reps: list[tuple[frozenset[Perm], tuple[Perm, ...]]] = [(trivial, ())]
    by_invariant: dict[tuple, list[int]] = {_class_invariant(trivial, (), n): [0]}
    queue = deque([0])
    seen_groups: set[frozenset[Perm]] = {trivial}
    while queue:
        elems, gens = reps[queue.popleft()]
        seen_cosets: set[Perm] = set()
        for g in everything:
            if g in elems:
                continue
            coset = min(compose(h, g) for h in elems)
            if coset in seen_cosets:
                continue
            seen_cosets.add(coset)
            new_gens = gens + (g,)
            bigger = _closure(new_gens, n)
            if bigger in seen_groups:
                continue
            seen_groups.add(bigger)
            key = _class_invariant(bigger, new_gens, n)
            known = by_invariant.setdefault(key, [])
            if any(
                conjugating_element(new_gens, reps[k][0], len(bigger), n) is not None for k in known
            ):
                continue
            known.append(len(reps))
            reps.append((bigger, _small_generating_set(bigger, n)))
            queue.append(len(reps) - 1)
    groups = [FinitePermGroup(names, gens) for _, gens in reps]
    groups.sort(key=lambda G: (G.order(), sorted(len(o) for o in G.orbits()), G.cycles()))
    return groups
