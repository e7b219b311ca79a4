"""Concrete overgroup intervals [H, G] and full subgroup lattices.

Enumeration closes {<H, g> : g in G} under pairwise join, which yields every
overgroup of H: any K >= H is the join of its single-element extensions.
That is far cheaper than enumerating all subgroups of G when the interval is
small.  All set arithmetic runs over element indices of the ambient group
with a cached multiplication table.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import lattice as lat
from .errors import CapExceeded, NotASubgroup, NotDistributive, OreViolation
from .perm import FiniteGroup, Permutation, normal_core, trivial_group

DEFAULT_MEMBER_CAP = 10_000


class _Ambient:
    """Multiplication table and closure helpers over one ambient group."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.n = group.order
        self.elems = group.elements
        self.index = {p.images: i for i, p in enumerate(group.elements)}
        images = [p.images for p in group.elements]
        self.mul = [
            [self.index[tuple(a[x] for x in b)] for b in images] for a in images
        ]
        self.identity = self.index[group.identity.images]

    def idx_of(self, perm: Permutation) -> int:
        return self.index[perm.images]

    def subgroup_indices(self, sub: FiniteGroup) -> frozenset:
        try:
            return frozenset(self.index[p.images] for p in sub.elements)
        except KeyError as exc:
            raise NotASubgroup("subgroup has elements outside the ambient group") from exc

    def closure(self, gens: Sequence[int]) -> frozenset:
        mul = self.mul
        seen = {self.identity}
        stack = [self.identity]
        while stack:
            x = stack.pop()
            row = mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def small_gens(self, members: frozenset) -> tuple:
        """A short generating tuple for an index-set already closed under the product."""
        gens: list = []
        current = {self.identity}
        for x in sorted(members):
            if x not in current:
                gens.append(x)
                current = set(self.closure(gens))
                if len(current) == len(members):
                    break
        return tuple(gens)

    def to_group(self, members: frozenset) -> FiniteGroup:
        return FiniteGroup(self.group.degree, [], [self.elems[i] for i in members])


@lru_cache(maxsize=32)
def _ambient(group: FiniteGroup) -> _Ambient:
    return _Ambient(group)


class GroupInterval:
    """The lattice of all subgroups K with H <= K <= G, with index labels."""

    __slots__ = ("ambient", "base", "members", "lattice", "index_of", "_amb", "_member_sets", "_set_to_id")

    def __init__(self, ambient: FiniteGroup, base: FiniteGroup, members: Sequence[FiniteGroup],
                 lattice: lat.FiniteLattice, index_of: Sequence[int],
                 amb: _Ambient, member_sets: Sequence[frozenset]):
        self.ambient = ambient
        self.base = base
        self.members = tuple(members)
        self.lattice = lattice
        self.index_of = tuple(index_of)
        self._amb = amb
        self._member_sets = tuple(member_sets)
        self._set_to_id = {s: i for i, s in enumerate(member_sets)}

    def __len__(self) -> int:
        return len(self.members)

    def member_id(self, sub: FiniteGroup) -> int:
        key = self._amb.subgroup_indices(sub)
        if key not in self._set_to_id:
            raise NotASubgroup("group is not a member of this interval")
        return self._set_to_id[key]

    def rank(self) -> int:
        return self.lattice.height()

    def __repr__(self) -> str:
        return (
            f"GroupInterval(|G|={self.ambient.order}, |H|={self.base.order}, "
            f"members={len(self.members)})"
        )


def _build_interval(amb: _Ambient, base_set: frozenset, member_sets: Iterable[frozenset]) -> GroupInterval:
    ordered = sorted(member_sets, key=lambda s: (len(s), tuple(sorted(s))))
    groups = [amb.to_group(s) for s in ordered]
    k = len(ordered)
    leq = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            leq[i, j] = a <= b
    lattice = lat.build_lattice(leq)
    index_of = [amb.n // len(s) for s in ordered]
    base = groups[0]
    assert frozenset(ordered[0]) == base_set and lattice.bottom == 0
    return GroupInterval(amb.group, base, groups, lattice, index_of, amb, ordered)


def overgroup_interval(group: FiniteGroup, sub: FiniteGroup, cap: int = DEFAULT_MEMBER_CAP) -> GroupInterval:
    """Enumerate every K with sub <= K <= group and build the labelled lattice."""
    amb = _ambient(group)
    h_set = amb.subgroup_indices(sub)
    h_gens = amb.small_gens(h_set)
    found = {h_set: h_gens}
    for g in range(amb.n):
        if g in h_set:
            continue
        k = amb.closure(h_gens + (g,))
        if k not in found:
            found[k] = h_gens + (g,)
            if len(found) > cap:
                raise CapExceeded(f"interval has more than {cap} members")
    ordered = list(found)
    i = 0
    while i < len(ordered):
        a = ordered[i]
        for j in range(i):
            b = ordered[j]
            if a >= b or a <= b:
                continue
            k = amb.closure(found[a] + found[b])
            if k not in found:
                gens = found[a] + found[b]
                if len(gens) > 8:
                    gens = amb.small_gens(k)
                found[k] = gens
                ordered.append(k)
                if len(found) > cap:
                    raise CapExceeded(f"interval has more than {cap} members")
        i += 1
    return _build_interval(amb, h_set, found)


def full_subgroup_lattice(group: FiniteGroup, cap: int = DEFAULT_MEMBER_CAP) -> GroupInterval:
    """The whole subgroup lattice, as the interval over the trivial subgroup."""
    return overgroup_interval(group, trivial_group(group.degree), cap)


def minimal_overgroups(interval: GroupInterval) -> list:
    """The atoms of the interval, as member groups."""
    return [interval.members[a] for a in lat.atoms(interval.lattice)]


def sub_interval(interval: GroupInterval, lo: int, hi: int) -> GroupInterval:
    """The interval [members[lo], members[hi]] re-rooted with its own labels."""
    ids = lat.members_between(interval.lattice, lo, hi)
    sets = [interval._member_sets[i] for i in ids]
    sub_lat = lat.interval(interval.lattice, lo, hi)
    top_size = len(interval._member_sets[hi])
    index_of = [top_size // len(s) for s in sets]
    return GroupInterval(
        interval.members[hi],
        interval.members[lo],
        [interval.members[i] for i in ids],
        sub_lat,
        index_of,
        interval._amb,
        sets,
    )


def is_bottom_boolean(interval: GroupInterval) -> bool:
    return lat.is_bottom_boolean(interval.lattice)


def _bb_edge_table(interval: GroupInterval) -> dict:
    """Memoized bottom-boolean test over pairs of member ids."""
    cache: dict = {}

    def edge(u: int, v: int) -> bool:
        key = (u, v)
        if key not in cache:
            cache[key] = lat.is_bottom_boolean(lat.interval(interval.lattice, u, v))
        return cache[key]

    return edge


def _shortest_bb_chain(interval: GroupInterval, start: int) -> int:
    """Length of the shortest chain start < ... < top with bottom-boolean steps."""
    top = interval.lattice.top
    if start == top:
        return 0
    edge = _bb_edge_table(interval)
    leq = interval.lattice.leq
    dist = {start: 0}
    frontier = [start]
    steps = 0
    while frontier:
        steps += 1
        nxt = []
        for u in frontier:
            for v in range(interval.lattice.n):
                if v in dist or not leq[u, v] or u == v:
                    continue
                if edge(u, v):
                    if v == top:
                        return steps
                    dist[v] = steps
                    nxt.append(v)
        frontier = nxt
    raise AssertionError("a maximal chain of rank-1 steps always reaches the top")


def bbl_between(group: FiniteGroup, sub: FiniteGroup, cap: int = DEFAULT_MEMBER_CAP) -> int:
    """Minimal number of bottom-boolean steps from sub up to group."""
    interval = overgroup_interval(group, sub, cap)
    return _shortest_bb_chain(interval, interval.lattice.bottom)


def bbl(group: FiniteGroup, cap: int = DEFAULT_MEMBER_CAP) -> int:
    return bbl_between(group, trivial_group(group.degree), cap)


def cfl(group: FiniteGroup, cap: int = DEFAULT_MEMBER_CAP) -> int:
    """Minimum of bbl_between(group, H) over core-free subgroups H."""
    full = full_subgroup_lattice(group, cap)
    best: Optional[int] = None
    for i, member in enumerate(full.members):
        if normal_core(group, member).order != 1:
            continue
        steps = _shortest_bb_chain(full, i)
        if best is None or steps < best:
            best = steps
    assert best is not None, "the trivial subgroup is always core-free"
    return best


def verify_ore(interval: GroupInterval) -> Permutation:
    """A witness g with <H union {g}> = G; exists for every distributive interval."""
    if not lat.is_distributive(interval.lattice):
        raise NotDistributive("the Ore property is only guaranteed on distributive intervals")
    amb = interval._amb
    h_set = interval._member_sets[interval.lattice.bottom]
    h_gens = amb.small_gens(h_set)
    full = len(amb.elems)
    for g in _coset_rep_indices(amb, h_set):
        if len(amb.closure(h_gens + (g,))) == full:
            return amb.elems[g]
    raise OreViolation("no generating coset found on a distributive interval")


def generating_coset_count(interval: GroupInterval) -> int:
    """Brute-force number of cosets Hg whose union generates the whole group."""
    amb = interval._amb
    h_set = interval._member_sets[interval.lattice.bottom]
    h_gens = amb.small_gens(h_set)
    full = len(amb.elems)
    return sum(
        1 for g in _coset_rep_indices(amb, h_set)
        if len(amb.closure(h_gens + (g,))) == full
    )


def _coset_rep_indices(amb: _Ambient, h_set: frozenset) -> list:
    mul = amb.mul
    remaining = set(range(amb.n))
    reps = []
    for g in range(amb.n):
        if g in remaining:
            coset = {mul[h][g] for h in h_set}
            reps.append(g)
            remaining -= coset
    return reps
