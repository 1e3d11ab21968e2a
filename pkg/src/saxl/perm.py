"""Permutations on the points 1..n.

Images are stored 0-based internally (``_img``) and exposed 1-based through
:attr:`Permutation.images`, cycle notation and calls.  Composition follows the
right-action convention: ``p * q`` maps ``i`` to ``q(p(i))``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

__all__ = ["Permutation", "compose", "identity", "parse_cycles"]


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, zero_based: bool = False):
        img = tuple(int(x) for x in images)
        if not zero_based:
            img = tuple(x - 1 for x in img)
        if sorted(img) != list(range(len(img))):
            bad = _first_defect(img)
            raise ValueError(f"not a bijection on 1..{len(img)} (problem at point {bad + 1})")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 1 <= c <= degree:
                    raise ValueError(f"point {c} outside 1..{degree}")
                if c in seen:
                    raise ValueError(f"point {c} repeated; cycles must be disjoint")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        """Wrap a 0-based numpy/sequence image array without validation."""
        return cls._raw(tuple(int(x) for x in arr))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._img)

    def array(self) -> np.ndarray:
        return np.asarray(self._img, dtype=np.int64)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return (~self) ** (-k)
        result = tuple(range(len(self._img)))
        base = self._img
        while k:
            if k & 1:
                result = tuple(base[i] for i in result)
            base = tuple(base[i] for i in base)
            k >>= 1
        return Permutation._raw(result)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``: relabel the points of ``self`` through ``g``."""
        img = [0] * len(self._img)
        gi = g._img
        for i, x in enumerate(self._img):
            img[gi[i]] = gi[x]
        return Permutation._raw(tuple(img))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def order(self) -> int:
        from math import lcm

        result = 1
        for cyc in self.cycles():
            result = lcm(result, len(cyc))
        return result

    def cycles(self) -> list:
        """Disjoint cycles of length > 1, 1-based, each starting at its least point."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start] or self._img[start] == start:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._img[j]
            out.append(cyc)
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def _first_defect(img) -> int:
    seen = set()
    for i, x in enumerate(img):
        if not 0 <= x < len(img) or x in seen:
            return i
        seen.add(x)
    return 0


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product with ``p`` applied first: ``i -> q(p(i))``."""
    if len(p._img) != len(q._img):
        raise ValueError(f"degree mismatch: {len(p._img)} vs {len(q._img)}")
    qi = q._img
    return Permutation._raw(tuple(qi[x] for x in p._img))


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse ``"(1 2 3)(4 5)"`` (spaces or commas) into a permutation."""
    text = text.strip()
    if text in ("", "()"):
        return Permutation.identity(degree)
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if pts:
            cycles.append(pts)
    return Permutation.from_cycles(cycles, degree)
