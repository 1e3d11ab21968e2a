"""Concrete groups and actions: projective linear groups, Singer normalisers, S_p and A_p."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .action import ActionSpace, ConjugateSpace, SubsetSpace
from .fields import FiniteField, build_field, poly_mod, poly_powmod, primitive_polynomial
from .group import DEFAULT_LABEL_CAP, GroupHandle, SubgroupObject, build_group
from .numtheory import factorize, is_prime
from .perm import Permutation

__all__ = [
    "ProjectiveSpace",
    "GroupAction",
    "field_for",
    "build_psl2_action",
    "build_singer_normalizer_action",
    "build_sym_alt_action",
    "pgl_group",
    "psl_group",
]


def field_for(q: int) -> FiniteField:
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return build_field(p, k)


class ProjectiveSpace:
    """Points of PG(r-1, q): nonzero row vectors scaled so the first nonzero entry is 1."""

    def __init__(self, F: FiniteField, r: int):
        self.F = F
        self.r = r
        pts = []
        for lead in range(r):
            for tail in range(F.q ** (r - lead - 1)):
                v = [0] * lead + [1]
                t = tail
                for _ in range(r - lead - 1):
                    t, c = divmod(t, F.q)
                    v.append(c)
                pts.append(tuple(v))
        self.points = pts
        self.index = {v: i for i, v in enumerate(pts)}

    def __len__(self) -> int:
        return len(self.points)

    def normalize(self, v) -> tuple:
        F = self.F
        for c in v:
            if c:
                s = F.inv(c)
                return tuple(F.mul(s, x) for x in v)
        raise ValueError("zero vector has no projective point")

    def point(self, v) -> int:
        """1-based index of the projective point spanned by v."""
        return self.index[self.normalize(v)] + 1

    def apply(self, v, M, frob: int = 0) -> tuple:
        F = self.F
        if frob:
            v = [F.pow(c, F.p**frob) for c in v]
        out = []
        for j in range(self.r):
            s = 0
            for i in range(self.r):
                if v[i] and M[i][j]:
                    s = F.add(s, F.mul(v[i], M[i][j]))
            out.append(s)
        return tuple(out)

    def perm(self, M, frob: int = 0) -> Permutation:
        """Permutation of points induced by ``v -> v^(p^frob) M``."""
        img = [self.index[self.normalize(self.apply(v, M, frob))] for v in self.points]
        return Permutation._raw(tuple(img))


def _identity_matrix(r: int) -> list:
    return [[1 if i == j else 0 for j in range(r)] for i in range(r)]


def _det(F: FiniteField, M) -> int:
    A = [list(row) for row in M]
    r = len(A)
    det = 1
    for c in range(r):
        piv = next((i for i in range(c, r) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, r):
            if A[i][c]:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[c])]
    return det


def _sl_matrices(F: FiniteField, r: int) -> list:
    nu = F.generator
    mats = []
    for t in (1, nu):
        M = _identity_matrix(r)
        M[0][1] = t
        mats.append(M)
    D = _identity_matrix(r)
    D[0][0], D[1][1] = nu, F.inv(nu)
    mats.append(D)
    C = [[0] * r for _ in range(r)]
    for i in range(r):
        C[i][(i + 1) % r] = 1
    if r % 2 == 0:
        C[r - 1][0] = F.neg(1)
    mats.append(C)
    return mats


def _gl_matrices(F: FiniteField, r: int) -> list:
    D = _identity_matrix(r)
    D[0][0] = F.generator
    return _sl_matrices(F, r) + [D]


def pgl_group(F: FiniteField, r: int, *, semilinear: bool = False) -> tuple:
    P = ProjectiveSpace(F, r)
    gens = [P.perm(M) for M in _gl_matrices(F, r)]
    if semilinear and F.k > 1:
        gens.append(P.perm(_identity_matrix(r), frob=1))
    return build_group(gens), P


def psl_group(F: FiniteField, r: int) -> tuple:
    P = ProjectiveSpace(F, r)
    return build_group([P.perm(M) for M in _sl_matrices(F, r)]), P


def _order_gl_projective(q: int, r: int) -> int:
    order = q ** (r * (r - 1) // 2)
    for i in range(2, r + 1):
        order *= q**i - 1
    return order


@dataclass
class GroupAction:
    """A transitive action with its base-label stabiliser and named elements."""

    name: str
    G: GroupHandle
    space: ActionSpace
    H: SubgroupObject
    elements: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.space)


def _singer_matrices(F: FiniteField, r: int) -> tuple:
    """Matrices of multiplication by x and of y -> y^q on F_q[x]/(f), f primitive, basis 1..x^(r-1)."""
    f = primitive_polynomial(F, r)

    def coords(e):
        mono = [0] * e + [1]
        return poly_mod(F, mono, f) if e >= r else mono + [0] * (r - len(mono))

    Z = [coords(i + 1) for i in range(r)]
    x = [0, 1] + [0] * (r - 2)
    S = [poly_powmod(F, x, i * F.q, f) if i else [1] + [0] * (r - 1) for i in range(r)]
    return f, Z, S


def build_psl2_action(q: int, case: str, *, projective: str = "psl", label_cap: int = DEFAULT_LABEL_CAP) -> GroupAction:
    """PSL_2(q) or PGL_2(q) on the cosets of a dihedral torus normaliser.

    ``case="split"`` acts on unordered pairs of projective points; ``"nonsplit"``
    on the conjugates of an anisotropic torus, generated from a Singer cycle.
    """
    if q < 4:
        raise ValueError("need q >= 4")
    F = field_for(q)
    if projective == "pgl" or q % 2 == 0:
        G, P = pgl_group(F, 2)
        kind = "PGL"
        expected_order = q * (q * q - 1)
    elif projective == "psl":
        G, P = psl_group(F, 2)
        kind = "PSL"
        expected_order = q * (q * q - 1) // 2
    else:
        raise ValueError(f"unknown group {projective!r}")
    if G.order != expected_order:
        raise AssertionError(f"{kind}_2({q}) built with order {G.order}")
    half = kind == "PSL"
    if case == "split":
        space = SubsetSpace(G, [P.point((1, 0)), P.point((0, 1))], label_cap=label_cap)
        dihedral = (q - 1) if half else 2 * (q - 1)
    elif case == "nonsplit":
        _, Z, _ = _singer_matrices(F, 2)
        z = P.perm(Z)
        t = z * z if half else z
        if not G.contains(t):
            raise AssertionError("torus generator not in the group")
        space = ConjugateSpace(G, SubgroupObject.generated_by(G, [t]), label_cap=label_cap)
        dihedral = (q + 1) if half else 2 * (q + 1)
    else:
        raise ValueError(f"unknown case {case!r}")
    H = space.stabilizer()
    if H.order != dihedral:
        raise AssertionError(f"stabiliser order {H.order}, expected dihedral order {dihedral}")
    return GroupAction(f"{kind}2({q})/{case}", G, space, H, notes={"q": q, "case": case})


def build_singer_normalizer_action(
    r: int, q: int, *, socle: bool = False, label_cap: int = DEFAULT_LABEL_CAP
) -> GroupAction:
    """PGL_r(q) (or its socle PSL_r(q)) on the conjugates of a Singer cycle.

    Named elements: ``z`` (Singer cycle, order a), ``sigma`` (Frobenius), and when
    r | q - 1 also ``x`` = z^(a/r), the central element of order r in H.
    """
    if not is_prime(r) or r % 2 == 0:
        raise ValueError("r must be an odd prime")
    F = field_for(q)
    P = ProjectiveSpace(F, r)
    _, Zm, Sm = _singer_matrices(F, r)
    z, sigma = P.perm(Zm), P.perm(Sm)
    a = (q**r - 1) // (q - 1)
    g = math.gcd(r, q - 1)
    if socle:
        G, _ = psl_group(F, r)
        expected = _order_gl_projective(q, r) // g
        seed_gen = z**g
    else:
        G, _ = pgl_group(F, r)
        expected = _order_gl_projective(q, r)
        seed_gen = z
    if G.order != expected:
        raise AssertionError(f"group order {G.order}, expected {expected}")
    if not G.contains(seed_gen):
        raise AssertionError("Singer generator not in the group")
    seed = SubgroupObject.generated_by(G, [seed_gen])
    space = ConjugateSpace(G, seed, label_cap=label_cap)
    H = space.stabilizer()
    h_order = a * r // g if socle else a * r
    if H.order != h_order:
        raise AssertionError(f"stabiliser order {H.order}, expected {h_order}")
    elements = {"z": z, "sigma": sigma}
    if g == r:
        elements["x"] = z ** (a // r)
    name = f"{'PSL' if socle else 'PGL'}{r}({q})/Singer"
    return GroupAction(name, G, space, H, elements, notes={"r": r, "q": q, "a": a, "socle": socle})


def build_sym_alt_action(p: int, variant: str = "sym", *, label_cap: int = DEFAULT_LABEL_CAP) -> GroupAction:
    """S_p or A_p on the conjugates of <(1 2 ... p)>; H = N_G(<c>) = AGL_1(p) (cap G)."""
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    cycle = Permutation._raw(tuple(list(range(1, p)) + [0]))
    if variant == "sym":
        gens = [cycle, Permutation.from_cycles([[1, 2]], p)]
        h_order = p * (p - 1)
    elif variant == "alt":
        gens = [Permutation.from_cycles([[1, 2, 3]], p), cycle]
        h_order = p * (p - 1) // 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    G = build_group(gens)
    space = ConjugateSpace(G, SubgroupObject.generated_by(G, [cycle]), label_cap=label_cap)
    H = space.stabilizer()
    if H.order != h_order:
        raise AssertionError(f"stabiliser order {H.order}, expected {h_order}")
    notes = {"p": p, "variant": variant}
    if variant == "alt" and p in (7, 11, 17, 23):
        notes["maximal"] = False
    return GroupAction(f"{'S' if variant == 'sym' else 'A'}{p}/AGL1", G, space, H, {"c": cycle}, notes)
