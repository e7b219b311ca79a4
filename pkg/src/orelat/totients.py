"""Euler totient and dual Euler totient of indexed intervals.

All arithmetic is exact (Python integers and fractions); the alternating
sums cancel catastrophically in floating point.  Synthetic boolean index
models are first-class inputs so the closed formulas can be exercised
without building any group.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lattice as lat
from .errors import (
    InvalidParameters,
    NotACoatom,
    NotBoolean,
    NotDistributive,
    NotGraded,
    SplitConditionFails,
)
from .intervals import GroupInterval


class IndexedInterval:
    """A graded-capable lattice with a positive integer label per element.

    For concrete intervals the label of K is the index |G:K|; synthetic
    models carry abstract labels.  Labels divide along the order: the top is
    1 and every cover strictly divides downward.
    """

    __slots__ = ("lattice", "idx")

    def __init__(self, lattice: lat.FiniteLattice, idx: Sequence[int]):
        idx = tuple(int(v) for v in idx)
        if len(idx) != lattice.n:
            raise InvalidParameters("one label per lattice element is required")
        if idx[lattice.top] != 1:
            raise InvalidParameters("the top element must have label 1")
        if any(v <= 0 for v in idx):
            raise InvalidParameters("labels must be positive")
        xs, ys = np.nonzero(lattice.covers)
        arr = np.array(idx, dtype=np.int64)
        if ((arr[xs] % arr[ys]) != 0).any() or (arr[xs] // arr[ys] < 2).any():
            raise InvalidParameters("labels must strictly divide downward along covers")
        self.lattice = lattice
        self.idx = idx

    @property
    def total_index(self) -> int:
        return self.idx[self.lattice.bottom]

    def edge_index(self, x: int, y: int) -> int:
        """Relative index across the cover x -> y."""
        assert self.lattice.covers[x, y]
        return self.idx[x] // self.idx[y]

    def below_index(self, x: int) -> int:
        """Relative index of x over the bottom element."""
        return self.idx[self.lattice.bottom] // self.idx[x]

    def __repr__(self) -> str:
        return f"IndexedInterval(n={self.lattice.n}, index={self.total_index})"


def from_group_interval(interval: GroupInterval) -> IndexedInterval:
    return IndexedInterval(interval.lattice, interval.index_of)


def sub_model(model: IndexedInterval, a: int, b: int) -> IndexedInterval:
    """The interval [a, b] relabelled relative to its own top b."""
    ids = lat.members_between(model.lattice, a, b)
    sub = lat.interval(model.lattice, a, b)
    base = model.idx[b]
    labels = []
    for x in ids:
        assert model.idx[x] % base == 0
        labels.append(model.idx[x] // base)
    return IndexedInterval(sub, labels)


def _require_graded(model: IndexedInterval) -> tuple:
    if not model.lattice.is_graded():
        raise NotGraded("totients are only defined on graded intervals")
    return model.lattice.ranks()


def dual_totient(model: IndexedInterval) -> int:
    """Alternating sum of labels, sign by rank above the bottom."""
    ranks = _require_graded(model)
    return sum(
        (-1) ** ranks[x] * model.idx[x] for x in range(model.lattice.n)
    )


def euler_totient(model: IndexedInterval) -> int:
    """Alternating sum of indices over the bottom, sign by corank."""
    ranks = _require_graded(model)
    height = model.lattice.height()
    total = 0
    for x in range(model.lattice.n):
        assert model.total_index % model.idx[x] == 0
        total += (-1) ** (height - ranks[x]) * (model.total_index // model.idx[x])
    return total


def euler_totient_distributive(model: IndexedInterval) -> int:
    """Totient of a distributive interval via its boolean top interval.

    Equals the direct sum when the interval is boolean, and counts the
    generating cosets in general (the direct alternating sum does not).
    """
    if not lat.is_distributive(model.lattice):
        raise NotDistributive("the top-interval extension needs a distributive lattice")
    t = lat.top_interval_base(model.lattice)
    factor = model.total_index // model.idx[t]
    return factor * euler_totient(sub_model(model, t, model.lattice.top))


def dual_totient_distributive(model: IndexedInterval) -> int:
    """Dual totient of a distributive interval via its boolean bottom interval."""
    if not lat.is_distributive(model.lattice):
        raise NotDistributive("the bottom-interval extension needs a distributive lattice")
    b = lat.bottom_interval_join(model.lattice)
    return model.idx[b] * dual_totient(sub_model(model, model.lattice.bottom, b))


def closed_form_p_n(p: int, n: int) -> int:
    """Dual totient of a rank-n boolean interval with every cover of index p."""
    if p < 2 or n < 1:
        raise InvalidParameters("need p >= 2 and n >= 1")
    return (p - 1) ** n


def closed_form_p_n_q(p: int, q: int, n: int, m: int) -> int:
    """Dual totient at rank n when every maximal chain has type (p, ..., p, q).

    `m` counts the coatoms whose index over the top... relative index q; the
    value is (p-1)^n * [1 + ((q-p)/p) (1 - 1/(1-p)^m)], always a positive
    integer at least (p-1)^n.
    """
    if not (2 <= p <= q) or n < 1 or not (0 <= m <= n):
        raise InvalidParameters("need 2 <= p <= q, n >= 1 and 0 <= m <= n")
    value = (p - 1) ** n * (
        1 + Fraction(q - p, p) * (1 - Fraction(1, (1 - p) ** m))
    )
    assert value.denominator == 1
    result = int(value)
    assert result >= (p - 1) ** n
    return result


def closed_form_p_n_p2(p: int, n: int, m: int) -> int:
    """Dual totient at rank n and total index p^(n+1), for 1 <= m <= n."""
    if p < 2 or n < 1 or not (1 <= m <= n):
        raise InvalidParameters("need p >= 2, n >= 1 and 1 <= m <= n")
    result = (p - 1) ** (n + 1) + (p - 1) ** n - (-1) ** m * (p - 1) ** (n + 1 - m)
    assert result >= (p - 1) ** (n + 1)
    return result


def _require_boolean(model: IndexedInterval) -> None:
    if not lat.is_boolean(model.lattice):
        raise NotBoolean("operation requires a boolean interval")


def dual_totient_coatom_split(model: IndexedInterval, coatom: int) -> int:
    """Recursion phihat(H,G) = q phihat(H,L) - phihat(A,G) for a coatom L.

    q is the relative index of the top over L and A the complement of L.
    Agrees with the direct sum on every boolean model.
    """
    _require_boolean(model)
    top = model.lattice.top
    if not model.lattice.covers[coatom, top]:
        raise NotACoatom(f"element {coatom} is not a coatom")
    q = model.idx[coatom]
    a = lat.complement(model.lattice, coatom)
    lower = sub_model(model, model.lattice.bottom, coatom)
    upper = sub_model(model, a, top)
    return q * dual_totient(lower) - dual_totient(upper)


def dual_totient_allsplit(model: IndexedInterval) -> int:
    """Product formula over atoms, valid under the all-split condition.

    The condition: for every atom A and every K in [H, complement(A)], the
    edge K -> K v A has the same index as A over the bottom.
    """
    _require_boolean(model)
    lattice = model.lattice
    bottom = lattice.bottom
    product = 1
    for a in lat.atoms(lattice):
        v = model.below_index(a)
        ca = lat.complement(lattice, a)
        for k in lat.members_between(lattice, bottom, ca):
            kva = int(lattice.join[k, a])
            if model.idx[k] // model.idx[kva] != v:
                raise SplitConditionFails(
                    f"atom {a}: edge over {k} has index {model.idx[k] // model.idx[kva]} != {v}"
                )
        product *= v - 1
    return product


def boolean_index_model(p: int, n: int, specials: Sequence = ()) -> IndexedInterval:
    """A boolean rank-n model whose chains have type (p, ..., p, q1, ..., qk).

    `specials` is a sequence of (q, block_size) pairs assigned to disjoint
    blocks of atoms; crossing the last missing atom of a block costs q, every
    other cover costs p.  With one special (q, m) this realizes every chain
    type (p, ..., p, q) with exactly m coatoms of relative index q; with
    single-atom blocks it realizes fully split models.
    """
    if p < 2 or n < 1:
        raise InvalidParameters("need p >= 2 and n >= 1")
    blocks = []
    start = 0
    for q, size in specials:
        if q < 2 or size < 1:
            raise InvalidParameters("special blocks need q >= 2 and size >= 1")
        blocks.append((int(q), frozenset(range(start, start + size))))
        start += size
    if start > n:
        raise InvalidParameters("special blocks exceed the number of atoms")
    lattice = lat.subset_lattice(n)
    labels = []
    for s in range(1 << n):
        missing = n - bin(s).count("1")
        value = 1
        incomplete = 0
        for q, block in blocks:
            if any(not (s >> b) & 1 for b in block):
                value *= q
                incomplete += 1
        labels.append(p ** (missing - incomplete) * value)
    return IndexedInterval(lattice, labels)


def uniform_model(p: int, n: int) -> IndexedInterval:
    """Boolean rank-n model with every cover of index p."""
    return boolean_index_model(p, n)


def pq_model(p: int, q: int, n: int, m: int) -> IndexedInterval:
    """Boolean rank-n model, all chains of type (p, ..., p, q), m coatoms of index q."""
    if not (0 <= m <= n):
        raise InvalidParameters("need 0 <= m <= n")
    if m == 0:
        return uniform_model(p, n)
    return boolean_index_model(p, n, [(q, m)])


def allsplit_model(values: Sequence[int]) -> IndexedInterval:
    """Fully multiplicative model: atom i contributes factor values[i]."""
    vals = [int(v) for v in values]
    if any(v < 2 for v in vals):
        raise InvalidParameters("atom values must be at least 2")
    return boolean_index_model(2, len(vals), [(v, 1) for v in vals])
