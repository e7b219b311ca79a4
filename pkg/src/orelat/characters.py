"""Exact conjugacy classes, character tables and linear-primitivity decisions.

Tables are computed by splitting the common eigenvectors of the class-sum
multiplication matrices.  The linear algebra is numeric, but every quantity
consumed downstream (degrees, fixed-space dimensions, orthogonality sums)
must pass an exact-integer validation gate; the table is rejected otherwise.
Splitting is deterministically seeded so runs are reproducible.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from . import lattice as lat
from .errors import NotAnInteger, NotASubgroup, ValidationFailed
from .intervals import GroupInterval, _ambient
from .perm import FiniteGroup

TOLERANCE = 1e-6


class ConjugacyClasses:
    """Partition of a group into conjugation orbits, identity class first."""

    __slots__ = ("group", "classes", "representatives", "sizes", "class_of")

    def __init__(self, group: FiniteGroup, classes: Sequence, class_of: Sequence[int]):
        self.group = group
        self.classes = tuple(tuple(c) for c in classes)
        self.representatives = tuple(c[0] for c in self.classes)
        self.sizes = tuple(len(c) for c in self.classes)
        self.class_of = tuple(class_of)

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    """Conjugation orbits over element indices, ordered by first representative."""
    amb = _ambient(group)
    n = amb.n
    mul = amb.mul
    inv = [0] * n
    for i in range(n):
        row = mul[i]
        for j in range(n):
            if row[j] == amb.identity:
                inv[i] = j
                break
    class_of = [-1] * n
    classes = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in range(n):
                z = mul[mul[g][y]][inv[g]]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        cid = len(classes)
        members = sorted(orbit)
        classes.append(members)
        for y in members:
            class_of[y] = cid
    assert sum(len(c) for c in classes) == n
    assert classes[0] == [amb.identity] and len(classes[0]) == 1
    return ConjugacyClasses(group, classes, class_of)


class CharacterTable:
    """Irreducible character values per conjugacy class, rows sorted by degree."""

    __slots__ = ("group", "classes", "values", "degrees", "_fixed_counts")

    def __init__(self, group: FiniteGroup, classes: ConjugacyClasses, values: np.ndarray, degrees: Sequence[int]):
        self.group = group
        self.classes = classes
        values.flags.writeable = False
        self.values = values
        self.degrees = tuple(int(d) for d in degrees)
        self._fixed_counts: dict = {}

    def __len__(self) -> int:
        return len(self.degrees)

    def character(self, row: int) -> np.ndarray:
        return self.values[row]

    def _class_counts(self, sub: FiniteGroup) -> np.ndarray:
        """Number of elements of the subgroup in each conjugacy class."""
        amb = _ambient(self.group)
        key = amb.subgroup_indices(sub)
        if key not in self._fixed_counts:
            counts = np.zeros(len(self.classes), dtype=np.int64)
            for i in key:
                counts[self.classes.class_of[i]] += 1
            self._fixed_counts[key] = counts
        return self._fixed_counts[key]

    def __repr__(self) -> str:
        return f"CharacterTable(|G|={self.group.order}, degrees={self.degrees})"


def _class_matrices(classes: ConjugacyClasses, amb) -> list:
    """Matrices A_i with (A_i)[j, k] = #{x in C_i : x^-1 z_k in C_j}."""
    n = amb.n
    mul = amb.mul
    inv = [0] * n
    for i in range(n):
        row = mul[i]
        for j in range(n):
            if row[j] == amb.identity:
                inv[i] = j
                break
    r = len(classes)
    reps = classes.representatives
    mats = []
    for i in range(r):
        mat = np.zeros((r, r), dtype=np.int64)
        for k in range(r):
            zk = reps[k]
            for x in classes.classes[i]:
                mat[classes.class_of[mul[inv[x]][zk]], k] += 1
        mats.append(mat)
    return mats


def character_table(group: FiniteGroup, seed: int = 0, retries: int = 12) -> CharacterTable:
    """Burnside-style table from common eigenvectors of the class matrices."""
    classes = conjugacy_classes(group)
    amb = _ambient(group)
    r = len(classes)
    mats = _class_matrices(classes, amb)
    sizes = np.array(classes.sizes, dtype=np.float64)
    order = group.order
    rng = np.random.default_rng(seed)
    last_error: Optional[str] = None
    for _ in range(retries):
        coeffs = rng.normal(size=r)
        combo = sum(c * m for c, m in zip(coeffs, mats)).astype(np.complex128)
        _, vecs = np.linalg.eig(combo)
        try:
            table = _table_from_eigenvectors(group, classes, vecs, sizes, order)
        except ValidationFailed as exc:
            last_error = str(exc)
            continue
        return table
    raise ValidationFailed(
        f"character table of a group of order {order} failed validation: {last_error}"
    )


def _table_from_eigenvectors(group, classes, vecs, sizes, order) -> CharacterTable:
    r = len(classes)
    rows = []
    for j in range(r):
        v = vecs[:, j]
        if abs(v[0]) < 1e-9:
            raise ValidationFailed("eigenvector vanishes at the identity class")
        omega = v / v[0]
        denom = float(np.sum(np.abs(omega) ** 2 / sizes).real)
        if denom <= 0:
            raise ValidationFailed("nonpositive norm in degree computation")
        deg = (order / denom) ** 0.5
        deg_int = round(deg)
        if abs(deg - deg_int) > TOLERANCE or deg_int < 1:
            raise ValidationFailed(f"degree {deg} is not a positive integer")
        chi = deg_int * omega / sizes
        rows.append((deg_int, chi))
    if sum(d * d for d, _ in rows) != order:
        raise ValidationFailed("sum of squared degrees does not match the group order")
    rows.sort(key=lambda item: (item[0], _row_sort_key(item[1])))
    degrees = [d for d, _ in rows]
    values = np.array([chi for _, chi in rows])
    weights = sizes / order
    gram = (values * weights) @ values.conj().T
    if np.max(np.abs(gram - np.eye(r))) > TOLERANCE:
        raise ValidationFailed("row orthogonality failed")
    col = values.conj().T @ values
    expected = np.diag(order / sizes)
    if np.max(np.abs(col - expected)) > TOLERANCE:
        raise ValidationFailed("column orthogonality failed")
    return CharacterTable(group, classes, values, degrees)


def _row_sort_key(chi: np.ndarray) -> tuple:
    return tuple((round(z.real, 6), round(z.imag, 6)) for z in chi)


def fixed_dim(table: CharacterTable, row: int, sub: FiniteGroup) -> int:
    """dim V^K = (1/|K|) sum over K of chi, validated to a nonnegative integer."""
    if not sub <= table.group:
        raise NotASubgroup("fixed spaces are only defined for subgroups")
    counts = table._class_counts(sub)
    value = complex(np.dot(counts, table.values[row])) / sub.order
    if abs(value.imag) > TOLERANCE:
        raise NotAnInteger(f"fixed dimension has imaginary part {value.imag}")
    nearest = round(value.real)
    if abs(value.real - nearest) > TOLERANCE or nearest < 0:
        raise NotAnInteger(f"fixed dimension {value.real} is not a nonnegative integer")
    return int(nearest)


def index_identity_holds(table: CharacterTable, sub: FiniteGroup) -> bool:
    """|G:H| == sum of deg_i * dim V_i^H, exactly."""
    total = sum(
        table.degrees[i] * fixed_dim(table, i, sub) for i in range(len(table))
    )
    return total == table.group.order // sub.order


def pointwise_stabilizer_closure(interval: GroupInterval, table: CharacterTable, row: int) -> int:
    """Largest member of the interval whose fixed space equals the base's.

    Computed by joining, repeatedly, every cover that preserves the fixed
    dimension; returns the member id (the bottom when no cover preserves it).
    """
    lattice = interval.lattice
    base_dim = fixed_dim(table, row, interval.base)
    current = lattice.bottom
    while True:
        step = None
        for y in np.flatnonzero(lattice.covers[current]):
            if fixed_dim(table, row, interval.members[int(y)]) == base_dim:
                step = int(lattice.join[current, int(y)]) if step is None else int(
                    lattice.join[step, int(y)]
                )
        if step is None or step == current:
            return current
        current = step


def is_linearly_primitive(interval: GroupInterval, table: Optional[CharacterTable] = None,
                          seed: int = 0):
    """Decide whether some irreducible has pointwise stabilizer exactly the base.

    Returns (verdict, witness_row); the witness is None when not primitive.
    A row is a witness iff every minimal overgroup strictly drops dim V^H.
    """
    if table is None:
        table = character_table(interval.ambient, seed=seed)
    atoms = lat.atoms(interval.lattice)
    for row in range(len(table)):
        base_dim = fixed_dim(table, row, interval.base)
        if base_dim == 0 and atoms:
            continue
        if all(
            fixed_dim(table, row, interval.members[a]) < base_dim for a in atoms
        ):
            return True, row
    return False, None
