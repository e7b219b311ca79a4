"""Abstract finite lattices over element ids 0..n-1.

The order relation is held as a read-only boolean matrix.  Meet and join
tables are precomputed and their existence/uniqueness verified eagerly at
construction, so every downstream operation may assume the lattice axioms.
Rank is longest-path depth over the Hasse diagram; gradedness is only
enforced where an operation needs it.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from typing import Optional

import numpy as np

from .errors import (
    NotAPartialOrder,
    NotALattice,
    NotBoolean,
    NotComparable,
    NotGraded,
)


class FiniteLattice:
    """Validated finite lattice: order matrix plus meet/join tables.

    Instances are immutable; the numpy arrays are marked read-only.
    """

    __slots__ = (
        "n", "leq", "meet", "join", "bottom", "top", "covers",
        "_down", "_up", "_ranks", "_graded", "_distributive", "_boolean",
    )

    def __init__(self, leq: np.ndarray, meet: np.ndarray, join: np.ndarray, bottom: int, top: int):
        self.n = leq.shape[0]
        for arr in (leq, meet, join):
            arr.flags.writeable = False
        self.leq = leq
        self.meet = meet
        self.join = join
        self.bottom = bottom
        self.top = top
        lt = leq.copy()
        np.fill_diagonal(lt, False)
        covers = lt & ~(lt @ lt)
        covers.flags.writeable = False
        self.covers = covers
        # Bitmask per element of its down-set / up-set, for fast subset logic.
        packed_cols = np.packbits(leq, axis=0, bitorder="little")
        packed_rows = np.packbits(leq, axis=1, bitorder="little")
        self._down = tuple(
            int.from_bytes(packed_cols[:, x].tobytes(), "little") for x in range(self.n)
        )
        self._up = tuple(
            int.from_bytes(packed_rows[x, :].tobytes(), "little") for x in range(self.n)
        )
        ranks = np.zeros(self.n, dtype=np.int64)
        for x in _linear_extension(leq):
            below = np.flatnonzero(covers[:, x])
            if below.size:
                ranks[x] = int(ranks[below].max()) + 1
        self._ranks = tuple(int(r) for r in ranks)
        xs, ys = np.nonzero(covers)
        self._graded = bool((ranks[ys] == ranks[xs] + 1).all())
        self._distributive: Optional[bool] = None
        self._boolean: Optional[bool] = None

    # -- basic queries ---------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def is_graded(self) -> bool:
        return self._graded

    def ranks(self) -> tuple:
        """Longest-chain depth of every element, bottom at 0."""
        return self._ranks

    def height(self) -> int:
        return self._ranks[self.top]

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n})"


def _mask_from_bools(col) -> int:
    mask = 0
    for i, flag in enumerate(col):
        if flag:
            mask |= 1 << i
    return mask


def _linear_extension(leq: np.ndarray) -> list:
    order = np.argsort(leq.sum(axis=0), kind="stable")
    return [int(x) for x in order]


def _find_extremum(leq: np.ndarray, rows: bool) -> Optional[int]:
    """Row-all gives the bottom (below everything), column-all the top."""
    axis = leq.all(axis=1 if rows else 0)
    hits = np.flatnonzero(axis)
    return int(hits[0]) if len(hits) else None


def build_lattice(leq) -> FiniteLattice:
    """Validate a relation and precompute meet/join tables.

    Raises NotAPartialOrder for a broken order and NotALattice when some
    pair has no unique infimum or supremum.
    """
    mat = np.asarray(leq, dtype=bool)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise NotAPartialOrder("relation must be a nonempty square matrix")
    n = mat.shape[0]
    if not mat.diagonal().all():
        raise NotAPartialOrder("relation is not reflexive")
    if (mat & mat.T & ~np.eye(n, dtype=bool)).any():
        raise NotAPartialOrder("relation is not antisymmetric")
    closure = mat @ mat
    if (closure & ~mat).any():
        raise NotAPartialOrder("relation is not transitive")

    down = [_mask_from_bools(mat[:, x]) for x in range(n)]
    up = [_mask_from_bools(mat[x, :]) for x in range(n)]
    meet = np.zeros((n, n), dtype=np.int32)
    join = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(a, n):
            m = _unique_bound(down, down[a] & down[b])
            if m is None:
                raise NotALattice(f"elements {a} and {b} have no unique meet")
            j = _unique_bound(up, up[a] & up[b])
            if j is None:
                raise NotALattice(f"elements {a} and {b} have no unique join")
            meet[a, b] = meet[b, a] = m
            join[a, b] = join[b, a] = j
    bottom = _find_extremum(mat, rows=True)
    top = _find_extremum(mat, rows=False)
    assert bottom is not None and top is not None
    return FiniteLattice(mat.copy(), meet, join, bottom, top)


def _unique_bound(masks, candidates: int) -> Optional[int]:
    """The element of `candidates` whose mask covers all of them, if any."""
    rest = candidates
    while rest:
        low = rest & -rest
        x = low.bit_length() - 1
        if candidates & ~masks[x] == 0:
            return x
        rest ^= low
    return None


def atoms(lat: FiniteLattice) -> list:
    return [x for x in range(lat.n) if lat.covers[lat.bottom, x]]


def coatoms(lat: FiniteLattice) -> list:
    return [x for x in range(lat.n) if lat.covers[x, lat.top]]


def is_distributive(lat: FiniteLattice) -> bool:
    """Exhaustive check of a v (b ^ c) == (a v b) ^ (a v c); cached per lattice."""
    if lat._distributive is None:
        lat._distributive = _distributive_scan(lat)
    return lat._distributive


def _distributive_scan(lat: FiniteLattice) -> bool:
    meet, join = lat.meet, lat.join
    for a in range(lat.n):
        left = join[a][meet]
        row = join[a]
        right = meet[row[:, None], row[None, :]]
        if not np.array_equal(left, right):
            return False
    return True


def complement_of(lat: FiniteLattice, x: int) -> Optional[int]:
    """Some complement of x, or None."""
    hits = np.flatnonzero((lat.meet[x] == lat.bottom) & (lat.join[x] == lat.top))
    return int(hits[0]) if len(hits) else None


def is_boolean(lat: FiniteLattice) -> bool:
    """Distributive with every element complemented; cached per lattice.

    When true the complement is automatically unique, the size is a power
    of two, and every element is the join of the atoms below it; these are
    asserted rather than searched.
    """
    if lat._boolean is None:
        lat._boolean = _boolean_scan(lat)
    return lat._boolean


def _boolean_scan(lat: FiniteLattice) -> bool:
    if not is_distributive(lat):
        return False
    comps = (lat.meet == lat.bottom) & (lat.join == lat.top)
    counts = comps.sum(axis=1)
    if not (counts >= 1).all():
        return False
    assert (counts == 1).all(), "complement not unique in a distributive lattice"
    ats = atoms(lat)
    assert lat.n == 1 << len(ats)
    for x in range(lat.n):
        below = [a for a in ats if lat.leq[a, x]]
        joined = reduce(lambda u, v: int(lat.join[u, v]), below, lat.bottom)
        assert joined == x, "element is not the join of the atoms below it"
    return True


def complement(lat: FiniteLattice, x: int) -> int:
    if not is_boolean(lat):
        raise NotBoolean("complements are only defined on boolean lattices")
    c = complement_of(lat, x)
    assert c is not None
    return c


def members_between(lat: FiniteLattice, a: int, b: int) -> list:
    """Ids of the closed interval [a, b], ascending."""
    if not lat.leq[a, b]:
        raise NotComparable(f"{a} is not below {b}")
    return [x for x in range(lat.n) if lat.leq[a, x] and lat.leq[x, b]]


def interval(lat: FiniteLattice, a: int, b: int) -> FiniteLattice:
    """The induced sublattice on [a, b].

    Meet/join tables are sliced from the parent (an interval of a lattice is
    closed under both), so only closure needs re-checking here.
    """
    ids = members_between(lat, a, b)
    sel = np.array(ids)
    lookup = np.full(lat.n, -1, dtype=np.int64)
    lookup[sel] = np.arange(len(ids))
    sub_leq = lat.leq[np.ix_(sel, sel)].copy()
    sub_meet = lookup[lat.meet[np.ix_(sel, sel)]]
    sub_join = lookup[lat.join[np.ix_(sel, sel)]]
    assert (sub_meet >= 0).all() and (sub_join >= 0).all(), "interval not closed under meet/join"
    return FiniteLattice(
        sub_leq,
        sub_meet.astype(np.int32),
        sub_join.astype(np.int32),
        int(lookup[a]),
        int(lookup[b]),
    )


def top_interval(lat: FiniteLattice) -> FiniteLattice:
    """[t, top] with t the meet of all coatoms."""
    t = reduce(lambda u, v: int(lat.meet[u, v]), coatoms(lat), lat.top)
    return interval(lat, t, lat.top)


def bottom_interval(lat: FiniteLattice) -> FiniteLattice:
    """[bottom, b] with b the join of all atoms."""
    b = reduce(lambda u, v: int(lat.join[u, v]), atoms(lat), lat.bottom)
    return interval(lat, lat.bottom, b)


def top_interval_base(lat: FiniteLattice) -> int:
    return reduce(lambda u, v: int(lat.meet[u, v]), coatoms(lat), lat.top)


def bottom_interval_join(lat: FiniteLattice) -> int:
    return reduce(lambda u, v: int(lat.join[u, v]), atoms(lat), lat.bottom)


def rank(lat: FiniteLattice, x: int) -> int:
    """Maximal chain length from bottom to x; requires a graded lattice."""
    if not lat.is_graded():
        raise NotGraded("rank is only defined on graded lattices")
    return lat._ranks[x]


def is_bottom_boolean(lat: FiniteLattice) -> bool:
    return is_boolean(bottom_interval(lat))


def maximal_chains(lat: FiniteLattice) -> list:
    """All maximal chains bottom..top as id lists."""
    chains = []
    stack = [[lat.bottom]]
    while stack:
        chain = stack.pop()
        x = chain[-1]
        if x == lat.top:
            chains.append(chain)
            continue
        for y in np.flatnonzero(lat.covers[x]):
            stack.append(chain + [int(y)])
    return chains


@lru_cache(maxsize=16)
def subset_lattice(n: int) -> FiniteLattice:
    """The boolean lattice of subsets of an n-set; element ids are bitmasks."""
    size = 1 << n
    ids = np.arange(size)
    leq = (ids[:, None] & ~ids[None, :]) == 0
    meet = ids[:, None] & ids[None, :]
    join = ids[:, None] | ids[None, :]
    return FiniteLattice(leq, meet.astype(np.int32), join.astype(np.int32), 0, size - 1)
