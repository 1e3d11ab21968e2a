"""Subgroup classes of small groups, incidence counts and triangular poset inversion.

Subgroups of an explicitly enumerated group H are handled as bitmasks over the
sorted element list of H, so containment and intersection are integer ops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .group import CapExceeded, GroupHandle, SubgroupObject
from .numtheory import divisors, euler_phi, factorize, is_prime, mobius, multiplicative_order

__all__ = [
    "SubgroupClass",
    "SubgroupClassTable",
    "IncidenceMatrix",
    "all_subgroups",
    "eta",
    "invert_incidence",
    "linear_extension",
    "mobius",
    "euler_phi",
    "divisors",
    "is_prime",
    "factorize",
    "multiplicative_order",
]

DEFAULT_SUBGROUP_CAP = 10**4


class _ElementTable:
    """Multiplication, inversion and conjugation on the element indices of H."""

    def __init__(self, H: SubgroupObject):
        self.H = H
        E = H.element_array()
        m = len(E)
        self.m = m
        self.index = {e: i for i, e in enumerate(H.raw_elements)}
        lookup = {r.tobytes(): i for i, r in enumerate(E)}
        P = np.empty((m, m), dtype=np.int32)
        for i in range(m):
            prods = E[:, E[i]]  # row j: e_i then e_j
            P[i] = [lookup[r.tobytes()] for r in prods]
        self.P = P
        ident = self.index[tuple(range(E.shape[1]))]
        self.identity = ident
        self.inv = np.argmax(P == ident, axis=1).astype(np.int32)

    def conj_map(self, g: int) -> np.ndarray:
        """x -> g^-1 x g on indices."""
        return self.P[self.P[self.inv[g]], g]

    def closure(self, start: list, mask: int, gens: Sequence[int]) -> tuple:
        elems = list(start)
        P = self.P
        i = 0
        while i < len(elems):
            e = elems[i]
            for s in gens:
                y = int(P[e, s])
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    elems.append(y)
            i += 1
        return mask, elems


def _mask_indices(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass
class SubgroupClass:
    representative: SubgroupObject
    size: int
    normalizer_order: int
    members: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return self.representative.order


class SubgroupClassTable:
    """All subgroups of a small group ``ambient``, grouped into conjugacy classes.

    Classes are sorted by (order, canonical key of the representative).
    """

    def __init__(self, ambient: SubgroupObject, classes: list, table: _ElementTable, lookup: dict):
        self.ambient = ambient
        self.classes = classes
        self._table = table
        self._lookup = lookup

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i: int) -> SubgroupClass:
        return self.classes[i]

    @property
    def total(self) -> int:
        return sum(c.size for c in self.classes)

    def mask_of(self, A: SubgroupObject) -> int:
        idx = self._table.index
        mask = 0
        for e in A.raw_elements:
            mask |= 1 << idx[e]
        return mask

    def mask_from_indices(self, idxs) -> int:
        mask = 0
        for i in idxs:
            mask |= 1 << int(i)
        return mask

    def class_index(self, A) -> int:
        """Index of the class containing A (a SubgroupObject or mask)."""
        mask = A if isinstance(A, int) else self.mask_of(A)
        try:
            return self._lookup[mask]
        except KeyError:
            raise ValueError("not a subgroup of the ambient group") from None

    def subgroup(self, mask: int) -> SubgroupObject:
        elems = self.ambient.raw_elements
        return SubgroupObject(self.ambient.parent, [elems[i] for i in _mask_indices(mask)])

    def member_subgroups(self, i: int) -> list:
        return [self.subgroup(m) for m in self.classes[i].members]


def all_subgroups(H, cap: int = DEFAULT_SUBGROUP_CAP) -> SubgroupClassTable:
    """Every subgroup of H, up to conjugacy in H, by cyclic extension.

    Each class representative is extended by every cyclic subgroup; a subgroup
    U with maximal subgroup S is a conjugate of some <S', g>, so extending one
    representative per class reaches every class.
    """
    if isinstance(H, GroupHandle):
        if H.order > cap:
            raise CapExceeded(f"group of order {H.order} exceeds subgroup cap {cap}")
        H = SubgroupObject(H, [g._img for g in H.elements(cap)])
    if H.order > cap:
        raise CapExceeded(f"group of order {H.order} exceeds subgroup cap {cap}")
    T = _ElementTable(H)
    m = T.m
    hgens = [T.index[g._img] for g in H.generators]
    conj = [T.conj_map(g) for g in hgens]

    cyclic: dict = {}
    for x in range(m):
        mask, _ = T.closure([T.identity], 1 << T.identity, [x])
        cyclic.setdefault(mask, x)

    lookup: dict = {}
    raw_classes: list = []  # (members, gens)

    def register(mask: int, gens: list) -> bool:
        if mask in lookup:
            return False
        cid = len(raw_classes)
        members = [mask]
        lookup[mask] = cid
        i = 0
        while i < len(members):
            idxs = _mask_indices(members[i])
            for c in conj:
                img = 0
                for y in c[idxs]:
                    img |= 1 << int(y)
                if img not in lookup:
                    lookup[img] = cid
                    members.append(img)
            i += 1
        raw_classes.append((members, gens))
        return True

    register(1 << T.identity, [])
    for mask, x in sorted(cyclic.items(), key=lambda kv: bin(kv[0]).count("1")):
        register(mask, [x])
    queue = list(range(len(raw_classes)))
    while queue:
        cid = queue.pop(0)
        members, gens = raw_classes[cid]
        R = members[0]
        R_elems = _mask_indices(R)
        for cmask, x in cyclic.items():
            if cmask & ~R == 0:
                continue
            J, _ = T.closure(R_elems, R, gens + [x])
            if register(J, gens + [x]):
                queue.append(len(raw_classes) - 1)

    order_h = H.order
    classes = []
    for members, _ in raw_classes:
        rep_mask = min(members, key=_mask_indices)
        rep = SubgroupObject(H.parent, [H.raw_elements[i] for i in _mask_indices(rep_mask)])
        size = len(members)
        ordered = tuple(sorted(members, key=_mask_indices))
        classes.append(SubgroupClass(rep, size, order_h // size, ordered))
    classes.sort(key=lambda c: (c.order, c.representative.key))
    lookup = {mask: i for i, c in enumerate(classes) for mask in c.members}
    return SubgroupClassTable(H, classes, T, lookup)


def eta(A, B_class: SubgroupClass | int, table: SubgroupClassTable) -> int:
    """Number of conjugates of B (within the ambient group) that contain A."""
    a = A if isinstance(A, int) else table.mask_of(A)
    cls = table.classes[B_class] if isinstance(B_class, int) else B_class
    return sum(1 for D in cls.members if a & D == a)


# ---------------------------------------------------------------------------
# incidence matrices on finite posets


@dataclass(frozen=True)
class IncidenceMatrix:
    labels: tuple
    entries: tuple  # tuple of row tuples, exact ints

    @classmethod
    def from_rows(cls, labels, rows) -> "IncidenceMatrix":
        return cls(tuple(labels), tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def matmul(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        n = self.size
        rows = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return IncidenceMatrix.from_rows(self.labels, rows)

    def apply(self, vec: Sequence[int]) -> list:
        return [sum(a * b for a, b in zip(row, vec)) for row in self.entries]

    def is_unitriangular(self) -> bool:
        n = self.size
        return all(
            self.entries[i][j] == (1 if i == j else 0) for i in range(n) for j in range(i + 1)
        )

    def is_identity(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == (i == j) for i in range(n) for j in range(n))


def invert_incidence(M: IncidenceMatrix) -> IncidenceMatrix:
    """Exact inverse of an upper unitriangular integer matrix (back substitution)."""
    if not M.is_unitriangular():
        raise ValueError("matrix is not upper triangular with unit diagonal")
    n = M.size
    A = M.entries
    inv = [[0] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        inv[i][i] = 1
        for j in range(i + 1, n):
            inv[i][j] = -sum(A[i][k] * inv[k][j] for k in range(i + 1, j + 1))
    out = IncidenceMatrix.from_rows(M.labels, inv)
    if not M.matmul(out).is_identity():
        raise AssertionError("incidence inverse failed verification")
    return out


def linear_extension(items: Sequence, leq: Callable, key: Callable | None = None) -> list:
    """A total order containing the partial order ``leq``; ties broken by ``key``."""
    items = list(items)
    key = key or (lambda x: 0)
    remaining = sorted(range(len(items)), key=lambda i: key(items[i]))
    out = []
    while remaining:
        for pos, i in enumerate(remaining):
            if not any(j != i and leq(items[j], items[i]) and not leq(items[i], items[j]) for j in remaining):
                out.append(items[i])
                del remaining[pos]
                break
        else:
            raise ValueError("relation has a cycle")
    return out
