"""Permutation groups: deterministic Schreier-Sims chains and explicit subgroups."""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import Permutation

__all__ = [
    "CapExceeded",
    "GroupHandle",
    "SubgroupObject",
    "build_group",
    "membership",
    "subgroup_conjugate",
    "DEFAULT_LABEL_CAP",
]

DEFAULT_LABEL_CAP = 10**6


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(q[x] for x in p)


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _orbit_transversal(point: int, gens: Sequence[tuple], n: int) -> dict:
    trans = {point: tuple(range(n))}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        ux = trans[x]
        for s in gens:
            y = s[x]
            if y not in trans:
                trans[y] = tuple(s[v] for v in ux)
                queue.append(y)
    return trans


class GroupHandle:
    """A permutation group given by generators, with a stabilizer chain.

    ``base`` is 1-based; the transversal at level ``i`` maps each point of the
    orbit of ``base[i]`` under the ``i``-th stabilizer to an element carrying
    ``base[i]`` there.
    """

    def __init__(self, generators: Sequence[Permutation], name: str = ""):
        if not generators:
            raise ValueError("need at least one generator")
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            raise ValueError(f"generators have differing degrees {sorted(degrees)}")
        self.degree = degrees.pop()
        self.generators = tuple(generators)
        self.name = name
        self._base, self._strong, self._trans = _schreier_sims(
            [g._img for g in generators], self.degree
        )
        self._trans_inv = [{x: _inv(u) for x, u in t.items()} for t in self._trans]
        self.order = math.prod(len(t) for t in self._trans)
        self._identity = tuple(range(self.degree))

    # -- chain data -------------------------------------------------------
    @property
    def base(self) -> tuple:
        return tuple(b + 1 for b in self._base)

    @property
    def base0(self) -> tuple:
        return tuple(self._base)

    @property
    def transversal_sizes(self) -> tuple:
        return tuple(len(t) for t in self._trans)

    @property
    def strong_generators(self) -> tuple:
        return tuple(Permutation._raw(s) for s in self._strong)

    def identity(self) -> Permutation:
        return Permutation._raw(self._identity)

    # -- membership -------------------------------------------------------
    def _sift(self, g: tuple, start: int = 0) -> tuple:
        for level in range(start, len(self._base)):
            x = g[self._base[level]]
            uinv = self._trans_inv[level].get(x)
            if uinv is None:
                return g, level
            g = tuple(uinv[v] for v in g)
        return g, len(self._base)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        h, level = self._sift(p._img)
        return level == len(self._base) and h == self._identity

    __contains__ = contains

    # -- elements ---------------------------------------------------------
    def elements(self, cap: int = DEFAULT_LABEL_CAP) -> Iterator[Permutation]:
        if self.order > cap:
            raise CapExceeded(f"group of order {self.order} exceeds cap {cap}")
        levels = [list(t.values()) for t in reversed(self._trans)]
        for combo in itertools.product(*levels):
            g = self._identity
            for u in combo:
                g = tuple(u[v] for v in g)
            yield Permutation._raw(g)

    def random_element(self, rng: random.Random) -> Permutation:
        g = self._identity
        for t in reversed(self._trans):
            u = t[rng.choice(list(t))]
            g = tuple(u[v] for v in g)
        return Permutation._raw(g)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<GroupHandle {label}degree={self.degree} order={self.order}>"


def _schreier_sims(gens: list, n: int):
    ident = tuple(range(n))
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    base: list = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))
    if not base:
        return [], [], []
    strong = list(gens)
    level_gens = [[s for s in strong if all(s[b] == b for b in base[:i])] for i in range(len(base))]
    trans = [_orbit_transversal(base[i], level_gens[i], n) for i in range(len(base))]
    trans_inv = [{x: _inv(u) for x, u in t.items()} for t in trans]

    def sift(g, start):
        for level in range(start, len(base)):
            x = g[base[level]]
            uinv = trans_inv[level].get(x)
            if uinv is None:
                return g, level
            g = tuple(uinv[v] for v in g)
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        extended = False
        for beta, u_beta in list(trans[i].items()):
            for s in level_gens[i]:
                g1 = tuple(s[v] for v in u_beta)
                u_gamma = trans[i][s[beta]]
                if g1 == u_gamma:
                    continue
                h, j = sift(tuple(trans_inv[i][s[beta]][v] for v in g1), i + 1)
                if j == len(base):
                    if h == ident:
                        continue
                    base.append(next(p for p in range(n) if h[p] != p))
                    level_gens.append([])
                    trans.append({})
                    trans_inv.append({})
                strong.append(h)
                for level in range(i + 1, j + 1):
                    level_gens[level].append(h)
                    trans[level] = _orbit_transversal(base[level], level_gens[level], n)
                    trans_inv[level] = {x: _inv(u) for x, u in trans[level].items()}
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return base, strong, trans


def build_group(generators: Sequence[Permutation], name: str = "") -> GroupHandle:
    return GroupHandle(generators, name=name)


def membership(G: GroupHandle, p: Permutation) -> bool:
    return G.contains(p)


# ---------------------------------------------------------------------------
# explicit subgroups


def _closure(gens: Sequence[tuple], n: int, cap: int) -> set:
    ident = tuple(range(n))
    elems = {ident}
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for s in gens:
            f = tuple(s[v] for v in e)
            if f not in elems:
                elems.add(f)
                if len(elems) > cap:
                    raise CapExceeded(f"subgroup closure exceeds cap {cap}")
                queue.append(f)
    return elems


class SubgroupObject:
    """A small subgroup of ``parent`` held as its full sorted element list."""

    __slots__ = ("parent", "_elems", "_gens", "_key", "_hash")

    def __init__(self, parent: GroupHandle | None, elements: Iterable[tuple], gens=None):
        self.parent = parent
        self._elems = tuple(sorted(elements))
        self._key = self._elems
        self._hash = None
        self._gens = tuple(gens) if gens is not None else None

    @classmethod
    def generated_by(
        cls, parent: GroupHandle | None, gens: Sequence[Permutation], cap: int = DEFAULT_LABEL_CAP
    ) -> "SubgroupObject":
        n = parent.degree if parent is not None else gens[0].degree
        raw = [g._img for g in gens]
        obj = cls(parent, _closure(raw, n, cap), gens=[g for g in raw if g != tuple(range(n))])
        return obj

    @classmethod
    def trivial(cls, parent: GroupHandle) -> "SubgroupObject":
        return cls(parent, [tuple(range(parent.degree))], gens=())

    @property
    def degree(self) -> int:
        return len(self._elems[0])

    @property
    def order(self) -> int:
        return len(self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    @property
    def elements(self) -> tuple:
        return tuple(Permutation._raw(e) for e in self._elems)

    @property
    def raw_elements(self) -> tuple:
        return self._elems

    @property
    def key(self) -> tuple:
        return self._key

    @property
    def generators(self) -> tuple:
        if self._gens is None:
            self._gens = _greedy_generators(self._elems)
        return tuple(Permutation._raw(g) for g in self._gens)

    def element_array(self) -> np.ndarray:
        return np.asarray(self._elems, dtype=np.int64)

    def contains(self, p: Permutation) -> bool:
        return p._img in self._elem_set()

    __contains__ = contains

    def _elem_set(self) -> frozenset:
        # recomputed on demand; subgroups are small
        return frozenset(self._elems)

    def is_subgroup_of(self, other: "SubgroupObject") -> bool:
        s = other._elem_set()
        return all(e in s for e in self._elems)

    def is_normal_in(self, other: "SubgroupObject") -> bool:
        mine = self._elem_set()
        for g in other.generators:
            gi = g._img
            for e in self._elems:
                img = [0] * len(e)
                for i, x in enumerate(e):
                    img[gi[i]] = gi[x]
                if tuple(img) not in mine:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupObject) and self._key == other._key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key)
        return self._hash

    def __repr__(self) -> str:
        return f"<SubgroupObject order={self.order}>"


def _greedy_generators(elems: Sequence[tuple]) -> tuple:
    """A short generating list: add elements of largest order not yet covered."""
    n = len(elems[0])
    ident = tuple(range(n))
    target = len(elems)

    def order_of(e):
        return Permutation._raw(e).order()

    candidates = sorted((e for e in elems if e != ident), key=lambda e: (-order_of(e), e))
    gens: list = []
    current = {ident}
    for e in candidates:
        if len(current) == target:
            break
        if e in current:
            continue
        gens.append(e)
        current = _closure(gens, n, target)
    return tuple(gens)


def subgroup_conjugate(A: SubgroupObject, g: Permutation) -> SubgroupObject:
    """``A^g = g^-1 A g`` with its elements re-sorted canonically."""
    gi = g._img
    out = []
    for e in A._elems:
        img = [0] * len(e)
        for i, x in enumerate(e):
            img[gi[i]] = gi[x]
        out.append(tuple(img))
    gens = None
    if A._gens is not None:
        gens = []
        for e in A._gens:
            img = [0] * len(e)
            for i, x in enumerate(e):
                img[gi[i]] = gi[x]
            gens.append(tuple(img))
    return SubgroupObject(A.parent, out, gens=gens)
