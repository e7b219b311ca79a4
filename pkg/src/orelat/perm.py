"""Exact permutation-group arithmetic at desk scale.

Groups are stored with their full element sets (every target here has small
order), canonically sorted, so subgroup equality is plain set equality and
lattice deduplication is deterministic.  Points are 0-based; cycle notation
is accepted only at the I/O boundary (`Permutation.from_cycles`).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DegreeMismatch,
    ElementOutsideGroup,
    NotASubgroup,
    ParseError,
)

DEFAULT_CAP = 100_000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection on {0, ..., degree-1}, stored as its tuple of images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        if sorted(imgs) != list(range(n)):
            raise ParseError(f"images {imgs} are not a bijection on 0..{n - 1}")
        self.images = imgs
        self._hash = hash(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(x) = p(q(x))."""
        if len(self.images) != len(other.images):
            raise DegreeMismatch("cannot compose permutations of different degree")
        s = self.images
        p = Permutation.__new__(Permutation)
        imgs = tuple(s[x] for x in other.images)
        p.images = imgs
        p._hash = hash(imgs)
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        k = 1
        p = self
        ident = Permutation.identity(self.degree)
        while p != ident:
            p = p * self
            k += 1
        return k

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(text: str, degree: int, one_based: bool = True) -> "Permutation":
        """Parse whitespace-separated cycles like ``(1 2 3)(4 5)``.

        Entries may be separated by spaces or commas; 1-based by default,
        matching the notation groups are usually published in.
        """
        stripped = text.strip()
        if stripped in ("", "()"):
            return Permutation.identity(degree)
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", stripped):
            raise ParseError(f"malformed cycle string: {text!r}")
        images = list(range(degree))
        offset = 1 if one_based else 0
        for body in _CYCLE_RE.findall(stripped):
            entries = [e for e in re.split(r"[\s,]+", body.strip()) if e]
            if not entries:
                continue
            try:
                points = [int(e) - offset for e in entries]
            except ValueError as exc:
                raise ParseError(f"non-integer entry in cycle {body!r}") from exc
            if any(p < 0 or p >= degree for p in points):
                raise ParseError(f"cycle {body!r} out of range for degree {degree}")
            if len(set(points)) != len(points):
                raise ParseError(f"repeated point in cycle {body!r}")
            for a, b in zip(points, points[1:] + points[:1]):
                if images[a] != a:
                    raise ParseError(f"point {a + offset} occurs in two cycles")
                images[a] = b
        return Permutation(images)

    def to_cycles(self, one_based: bool = True) -> str:
        """Render in cycle notation, fixed points omitted; ``()`` for identity."""
        offset = 1 if one_based else 0
        seen = [False] * self.degree
        parts = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            parts.append("(" + " ".join(str(p + offset) for p in cyc) + ")")
        return "".join(parts) if parts else "()"

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles(one_based=False)!r} deg={self.degree})"


class FiniteGroup:
    """A permutation group given by its full, lexicographically sorted element set."""

    __slots__ = ("degree", "generators", "elements", "order", "_element_set")

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Iterable[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.order = len(self.elements)
        self._element_set = frozenset(self.elements)

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._element_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteGroup)
            and self.degree == other.degree
            and self._element_set == other._element_set
        )

    def __hash__(self) -> int:
        return hash((self.degree, self._element_set))

    def __le__(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and self._element_set <= other._element_set

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def element_set(self) -> frozenset:
        return self._element_set

    def is_abelian(self) -> bool:
        gens = self.generators if self.generators else self.elements
        return all(a * b == b * a for a in gens for b in gens)

    def is_trivial(self) -> bool:
        return self.order == 1


def _closure(degree: int, generators: Sequence[Permutation], cap: int) -> set:
    ident = Permutation.identity(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(
                            f"group closure exceeded cap of {cap} elements"
                        )
        frontier = nxt
    return elements


def generate(degree: int, generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Close a generating set into a full group, deterministically ordered."""
    gens = list(generators)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(
                f"generator of degree {g.degree} in a degree-{degree} group"
            )
    return FiniteGroup(degree, gens, _closure(degree, gens, cap))


def subgroup_generated(group: FiniteGroup, seed: Sequence[Permutation], cap: int = DEFAULT_CAP) -> FiniteGroup:
    """The subgroup of `group` generated by `seed` elements."""
    for s in seed:
        if s not in group:
            raise ElementOutsideGroup(f"seed element {s} lies outside the group")
    return FiniteGroup(group.degree, list(seed), _closure(group.degree, list(seed), cap))


def intersect(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    if a.degree != b.degree:
        raise DegreeMismatch("cannot intersect groups of different degree")
    common = a.element_set() & b.element_set()
    return FiniteGroup(a.degree, [], common)


def join(a: FiniteGroup, b: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Smallest group containing both: closure of the union of element sets."""
    if a.degree != b.degree:
        raise DegreeMismatch("cannot join groups of different degree")
    if a.element_set() >= b.element_set():
        return a
    if b.element_set() >= a.element_set():
        return b
    gens = list(a.generators or a.elements) + list(b.generators or b.elements)
    closed = _closure(a.degree, gens, cap)
    return FiniteGroup(a.degree, gens, closed)


def _require_subgroup(group: FiniteGroup, sub: FiniteGroup) -> None:
    if group.degree != sub.degree or not sub.element_set() <= group.element_set():
        raise NotASubgroup("second argument is not a subgroup of the first")


def index(group: FiniteGroup, sub: FiniteGroup) -> int:
    _require_subgroup(group, sub)
    assert group.order % sub.order == 0
    return group.order // sub.order


def conjugate(group: FiniteGroup, sub: FiniteGroup, g: Permutation) -> FiniteGroup:
    """The conjugate subgroup g H g^-1."""
    _require_subgroup(group, sub)
    if g not in group:
        raise ElementOutsideGroup("conjugating element lies outside the group")
    ginv = g.inverse()
    return FiniteGroup(group.degree, [], {g * h * ginv for h in sub.elements})


def is_normal(group: FiniteGroup, sub: FiniteGroup) -> bool:
    _require_subgroup(group, sub)
    members = sub.element_set()
    gens = group.generators or group.elements
    for g in gens:
        ginv = g.inverse()
        if any(g * h * ginv not in members for h in sub.elements):
            return False
    return True


def normal_core(group: FiniteGroup, sub: FiniteGroup) -> FiniteGroup:
    """Largest normal subgroup of `group` inside `sub`: the intersection of all conjugates."""
    _require_subgroup(group, sub)
    members = sub.element_set()
    core = set()
    for h in sub.elements:
        if all((g * h) * g.inverse() in members for g in group.elements):
            core.add(h)
    return FiniteGroup(group.degree, [], core)


def right_cosets(group: FiniteGroup, sub: FiniteGroup) -> list:
    """Representatives of the cosets Hg, each the minimal element of its coset."""
    _require_subgroup(group, sub)
    remaining = set(group.elements)
    reps = []
    for g in group.elements:
        if g in remaining:
            coset = {h * g for h in sub.elements}
            reps.append(min(coset))
            remaining -= coset
    assert len(reps) == group.order // sub.order
    return reps


def product_set_size(a: FiniteGroup, b: FiniteGroup) -> int:
    """|AB| for the element-wise product set AB = {xy : x in A, y in B}."""
    if a.degree != b.degree:
        raise DegreeMismatch("groups act on different point sets")
    return len({x * y for x in a.elements for y in b.elements})


def element_orders(group: FiniteGroup) -> dict:
    """Map order -> count over the element set."""
    counts: dict = {}
    for g in group.elements:
        k = g.order()
        counts[k] = counts.get(k, 0) + 1
    return counts


def trivial_group(degree: int) -> FiniteGroup:
    return FiniteGroup(degree, [], [Permutation.identity(degree)])
