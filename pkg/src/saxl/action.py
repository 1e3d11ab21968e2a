"""Finite G-sets realised as orbits of a base label, and the orbit machinery on them.

Every label is stored together with a transversal element ``T[i]`` carrying the
base label to label ``i``; acting by ``g`` on label ``i`` means computing the
key of ``base^(T[i] g)``.  Keys are computed in vectorised batches.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import (
    DEFAULT_LABEL_CAP,
    CapExceeded,
    GroupHandle,
    SubgroupObject,
    _closure,
    subgroup_conjugate,
)
from .perm import Permutation

__all__ = [
    "ActionSpace",
    "PointSpace",
    "SubsetSpace",
    "ConjugateSpace",
    "orbit",
    "stabilizer_of_label",
    "normalizer_order",
    "are_conjugate_in",
    "is_primitive",
    "suborbit_partition",
    "NotTransitive",
]

_BLOCK_ELEMS = 1 << 21


class NotTransitive(ValueError):
    pass


class _Rows:
    """Append-only int array of fixed row width."""

    def __init__(self, width: int, dtype):
        self.buf = np.empty((1024, width), dtype=dtype)
        self.n = 0

    def append(self, row) -> None:
        if self.n == len(self.buf):
            self.buf = np.concatenate([self.buf, np.empty_like(self.buf)])
        self.buf[self.n] = row
        self.n += 1

    def array(self) -> np.ndarray:
        return self.buf[: self.n]


class ActionSpace:
    """A transitive G-set, materialised as the orbit of ``base_label``.

    Subclasses implement ``_keys(T)``: the labels ``base^t`` for each row ``t``
    of a batch of 0-based image arrays.
    """

    kind = "abstract"

    def __init__(self, group: GroupHandle, *, label_cap: int = DEFAULT_LABEL_CAP):
        self.group = group
        self.label_cap = label_cap
        self._stabilizer = None
        self._suborbits = None
        self._build()

    # -- subclass hooks ---------------------------------------------------
    def _keys(self, T: np.ndarray) -> list:
        raise NotImplementedError

    def _batch_size(self) -> int:
        return 4096

    # -- construction -----------------------------------------------------
    def _build(self) -> None:
        G = self.group
        n = G.degree
        dtype = np.int16 if n < 2**15 else np.int32
        ident = np.arange(n, dtype=dtype)
        rows = _Rows(n, dtype)
        rows.append(ident)
        keys = self._keys(ident[None, :])
        index = {keys[0]: 0}
        gens = [np.asarray(g._img, dtype=dtype) for g in G.generators]
        images = [[] for _ in gens]
        frontier = [0]
        batch = self._batch_size()
        while frontier:
            nxt = []
            for start in range(0, len(frontier), batch):
                chunk = frontier[start : start + batch]
                Tc = rows.array()[chunk]
                for gi, g in enumerate(gens):
                    Tn = g[Tc]
                    img = images[gi]
                    for idx, key, row in zip(chunk, self._keys(Tn), Tn):
                        j = index.get(key)
                        if j is None:
                            j = len(keys)
                            if j >= self.label_cap:
                                raise CapExceeded(
                                    f"{self.kind} orbit exceeds label cap {self.label_cap}"
                                )
                            index[key] = j
                            keys.append(key)
                            rows.append(row)
                            nxt.append(j)
                        img.append(j)
            frontier = nxt
        self.labels = keys
        self.index = index
        self.T = rows.array().copy()
        N = len(keys)
        self.gen_perms = np.array(images, dtype=np.int64).reshape(len(gens), N)

    # -- basic access -----------------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def base_label(self):
        return self.labels[0]

    def transversal(self, i: int) -> Permutation:
        """An element of G carrying the base label to label ``i``."""
        return Permutation.from_array(self.T[i])

    def act(self, label, g: Permutation):
        i = self.index[label]
        row = np.asarray(g._img, dtype=self.T.dtype)[self.T[i]]
        return self._keys(row[None, :])[0]

    def act_index(self, i: int, g: Permutation) -> int:
        return self.index[self.act(self.labels[i], g)]

    def label_perm(self, g: Permutation) -> np.ndarray:
        """Images of every label index under ``g`` (a permutation of range(N))."""
        for gi, h in enumerate(self.group.generators):
            if h == g:
                return self.gen_perms[gi]
        garr = np.asarray(g._img, dtype=self.T.dtype)
        out = np.empty(len(self.labels), dtype=np.int64)
        batch = self._batch_size()
        index = self.index
        for start in range(0, len(self.labels), batch):
            ks = self._keys(garr[self.T[start : start + batch]])
            out[start : start + len(ks)] = [index[k] for k in ks]
        return out

    def stabilizer(self, cap: int = DEFAULT_LABEL_CAP) -> SubgroupObject:
        if self._stabilizer is None:
            self._stabilizer = _base_stabilizer(self, cap)
        return self._stabilizer


# ---------------------------------------------------------------------------
# concrete spaces


class PointSpace(ActionSpace):
    kind = "points"

    def __init__(self, group: GroupHandle, point: int = 1, **kw):
        self._point = point - 1
        super().__init__(group, **kw)

    def _keys(self, T):
        return (T[:, self._point].astype(np.int64) + 1).tolist()


class SubsetSpace(ActionSpace):
    """k-subsets of points; labels are sorted 1-based tuples."""

    kind = "k-subsets"

    def __init__(self, group: GroupHandle, subset: Sequence[int], **kw):
        self._subset = np.asarray(sorted(p - 1 for p in subset), dtype=np.int64)
        if len(set(self._subset.tolist())) != len(self._subset):
            raise ValueError("subset has repeated points")
        super().__init__(group, **kw)

    def _keys(self, T):
        S = np.sort(T[:, self._subset].astype(np.int64), axis=1) + 1
        return [tuple(r) for r in S.tolist()]


class ConjugateSpace(ActionSpace):
    """Conjugates ``S^g`` of a subgroup; labels are opaque canonical byte keys.

    The key of a conjugate lists its elements by their images of the base of G
    (which determines an element of G), encoded as integers and sorted.
    """

    kind = "subgroup-conjugates"

    def __init__(self, group: GroupHandle, seed: SubgroupObject, **kw):
        self.seed = seed
        n = group.degree
        self._E = seed.element_array()
        self._base = np.asarray(group.base0 if group.base0 else (0,), dtype=np.int64)
        k = len(self._base)
        if n**k < 2**31:
            self._code_dtype = np.int32
        elif n**k < 2**63:
            self._code_dtype = np.int64
        else:
            self._code_dtype = None
        self._radix = n ** np.arange(k, dtype=np.int64)
        super().__init__(group, **kw)

    def _batch_size(self) -> int:
        m, k = self._E.shape[0], len(self._base)
        return max(1, _BLOCK_ELEMS // (m * k))

    def _codes(self, T: np.ndarray) -> np.ndarray:
        B, n = T.shape
        T = T.astype(np.int64, copy=False)
        tinv = np.empty_like(T)
        tinv[np.arange(B)[:, None], T] = np.arange(n)
        X = tinv[:, self._base]  # (B, k)
        m, k = self._E.shape[0], len(self._base)
        Y = self._E[:, X]  # (m, B, k): e(t^-1(b))
        Y = Y.transpose(1, 0, 2).reshape(B, m * k)
        Z = np.take_along_axis(T, Y, axis=1).reshape(B, m, k)  # t(e(t^-1(b)))
        return Z

    def _keys(self, T):
        Z = self._codes(T)
        if self._code_dtype is None:
            out = []
            for block in Z:
                order = np.lexsort(block.T[::-1])
                out.append(block[order].astype(np.int32).tobytes())
            return out
        codes = (Z * self._radix).sum(axis=2)
        codes.sort(axis=1)
        codes = codes.astype(self._code_dtype)
        return [r.tobytes() for r in codes]

    def key_of(self, A: SubgroupObject):
        """Label key of a subgroup (meaningful when A is a conjugate of the seed)."""
        if A.order != self.seed.order:
            return None
        E = A.element_array()
        n = E.shape[1]
        Z = E[:, self._base][None, :, :]
        if self._code_dtype is None:
            block = Z[0]
            return block[np.lexsort(block.T[::-1])].astype(np.int32).tobytes()
        codes = np.sort((Z * self._radix).sum(axis=2), axis=1).astype(self._code_dtype)
        return codes[0].tobytes()

    def subgroup(self, i: int) -> SubgroupObject:
        return subgroup_conjugate(self.seed, self.transversal(i))


# ---------------------------------------------------------------------------
# operations


def orbit(space: ActionSpace, gens: Sequence[Permutation], seed) -> list:
    """Labels of the <gens>-orbit of ``seed`` within ``space``, in BFS order."""
    perms = [space.label_perm(g) for g in gens]
    start = space.index[seed]
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for p in perms:
            j = int(p[i])
            if j not in seen:
                seen.add(j)
                order.append(j)
                queue.append(j)
    return [space.labels[i] for i in order]


def _base_stabilizer(space: ActionSpace, cap: int) -> SubgroupObject:
    G = space.group
    N = len(space)
    if G.order % N:
        raise ValueError("orbit size does not divide the group order")
    target = G.order // N
    if target > cap:
        raise CapExceeded(f"stabiliser of order {target} exceeds cap {cap}")
    n = G.degree
    ident = tuple(range(n))
    if target == 1:
        return SubgroupObject(G, [ident], gens=())
    gens_raw = [g._img for g in G.generators]
    T = space.T.astype(np.int64)
    Tinv = np.empty_like(T)
    Tinv[np.arange(N)[:, None], T] = np.arange(n)
    found: list = []
    elems = {ident}
    for i in range(N):
        ti = T[i]
        for gi, g in enumerate(gens_raw):
            j = int(space.gen_perms[gi][i])
            s = tuple(Tinv[j][np.asarray(g)[ti]].tolist())
            if s in elems:
                continue
            found.append(s)
            elems = _closure(found, n, cap)
            if len(elems) == target:
                return SubgroupObject(G, elems, gens=found)
    raise RuntimeError("Schreier generators did not reach the stabiliser order")


def stabilizer_of_label(
    space: ActionSpace, G: GroupHandle | None = None, label=None, cap: int = DEFAULT_LABEL_CAP
) -> SubgroupObject:
    """``{g in G : label^g = label}`` as an explicit element list."""
    if G is not None and G is not space.group:
        raise ValueError("space was built for a different group handle")
    H = space.stabilizer(cap)
    if label is None or label == space.base_label:
        return H
    return subgroup_conjugate(H, space.transversal(space.index[label]))


def normalizer_order(G: GroupHandle, A: SubgroupObject, *, label_cap: int = DEFAULT_LABEL_CAP) -> int:
    """``|N_G(A)| = |G| / |A^G|`` from the conjugation orbit of A."""
    space = ConjugateSpace(G, A, label_cap=label_cap)
    return G.order // len(space)


def are_conjugate_in(
    G: GroupHandle,
    A: SubgroupObject,
    B: SubgroupObject,
    *,
    space: ConjugateSpace | None = None,
    label_cap: int = DEFAULT_LABEL_CAP,
):
    """A witness ``g`` with ``A^g = B``, or None."""
    if A.order != B.order:
        return None
    if space is None:
        space = ConjugateSpace(G, A, label_cap=label_cap)
    i = space.index.get(space.key_of(B))
    if i is None:
        return None
    g = space.transversal(i)
    if subgroup_conjugate(A, g) != B:
        raise AssertionError("conjugacy witness failed verification")
    return g


def suborbit_partition(space: ActionSpace, H: SubgroupObject | None = None) -> np.ndarray:
    """Component index of every label under the H-action (H defaults to the base stabiliser)."""
    if H is None:
        H = space.stabilizer()
    N = len(space)
    gens = H.generators
    if not gens:
        return np.arange(N)
    rows, cols = [], []
    for h in gens:
        p = space.label_perm(h)
        rows.append(np.arange(N))
        cols.append(p)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
    _, comp = connected_components(graph, directed=True, connection="weak")
    return comp


def _minimal_block(perms: list, N: int, a: int, b: int) -> int:
    """Size of the smallest block containing labels a and b."""
    comp = np.arange(N)
    comp[b] = a
    ncomp = N - 1
    while True:
        least = np.full(N, N)
        np.minimum.at(least, comp, np.arange(N))
        rep = least[comp]
        r = [np.arange(N)]
        c = [rep]
        for p in perms:
            r.append(p)
            c.append(p[rep])
        rr = np.concatenate(r)
        cc = np.concatenate(c)
        graph = coo_matrix((np.ones(len(rr), dtype=np.int8), (rr, cc)), shape=(N, N))
        k, comp = connected_components(graph, directed=False)
        if k == ncomp:
            break
        ncomp = k
    return int(np.sum(comp == comp[a]))


def is_primitive(space: ActionSpace, G: GroupHandle | None = None) -> bool:
    """True iff the only blocks are trivial; one minimal-block closure per suborbit."""
    if G is not None and G is not space.group:
        raise ValueError("space was built for a different group handle")
    N = len(space)
    if N <= 2:
        return True
    comp = suborbit_partition(space)
    perms = [space.gen_perms[i] for i in range(len(space.group.generators))]
    seen = {comp[0]}
    for i in range(1, N):
        c = comp[i]
        if c in seen:
            continue
        seen.add(c)
        if _minimal_block(perms, N, 0, i) < N:
            return False
    return True
