"""Regenerate the bundled group files under src/saxl/data/.

Each file stores generators of G and of a self-normalising maximal subgroup H.
Run from the repository root: ``python3 tools/make_catalog_data.py``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from saxl.action import ConjugateSpace  # noqa: E402
from saxl.constructions import ProjectiveSpace, field_for, pgl_group, psl_group  # noqa: E402
from saxl.group import SubgroupObject, build_group  # noqa: E402
from saxl.perm import Permutation  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "src" / "saxl" / "data"

M23_GENS = [
    [list(range(1, 24))],
    [[3, 17, 10, 7, 9], [4, 13, 14, 19, 5], [8, 18, 11, 12, 23], [15, 20, 22, 21, 16]],
]


def sylow(G, p: int) -> SubgroupObject:
    """A Sylow p-subgroup by repeatedly adjoining p-elements that normalise the current one."""
    elems = sorted(G.elements(), key=lambda g: g._img)
    n = G.degree
    target = 1
    order = G.order
    while order % p == 0:
        order //= p
        target *= p
    P = SubgroupObject(G, [tuple(range(n))], gens=())
    while P.order < target:
        for g in elems:
            o = g.order()
            while o % p == 0:
                o //= p
            if o != 1 or g.is_identity():
                continue
            if P.contains(g):
                continue
            if all(P.contains(h.conjugate(g)) for h in P.generators):
                P = SubgroupObject.generated_by(G, list(P.generators) + [g])
                break
        else:
            raise RuntimeError("no normalising p-element found")
    return P


def write(name: str, G, H: SubgroupObject, label: str) -> None:
    data = {
        "name": label,
        "degree": G.degree,
        "generators": [g.cycles() for g in G.generators],
        "stabilizer_generators": [h.cycles() for h in H.generators],
    }
    (OUT / f"{name}.json").write_text(json.dumps(data) + "\n", encoding="utf-8")
    space = ConjugateSpace(G, H)
    print(f"{name}: |G|={G.order} |H|={H.order} index={len(space)}")


def m10_and_friends() -> None:
    F = field_for(9)
    L, P = psl_group(F, 2)
    D = [[F.generator, 0], [0, 1]]
    extra = P.perm(D, frob=1)
    M10 = build_group(list(L.generators) + [extra])
    assert M10.order == 720
    outer = [g for g in M10.elements() if not L.contains(g) and g.order() == 2]
    assert not outer, "outer involutions: this is not M10"
    write("m10_8colon2", M10, sylow(M10, 2), "M10 on the cosets of 8:2")
    five = next(g for g in M10.elements() if g.order() == 5)
    A = SubgroupObject.generated_by(M10, [five])
    H = ConjugateSpace(M10, A).stabilizer()
    assert H.order == 20
    write("m10_agl15", M10, H, "M10 on the cosets of AGL1(5)")
    PGL, _ = pgl_group(F, 2)
    write("pgl29_d16", PGL, sylow(PGL, 2), "PGL2(9) on the cosets of D16")
    PGaL, _ = pgl_group(F, 2, semilinear=True)
    assert PGaL.order == 1440
    write("pgaml29_8colon22", PGaL, sylow(PGaL, 2), "PGammaL2(9) on the cosets of 8:2^2")


def a5_s3() -> None:
    G = build_group([Permutation.from_cycles([[1, 2, 3, 4, 5]], 5), Permutation.from_cycles([[1, 2, 3]], 5)])
    H = SubgroupObject.generated_by(G, [Permutation.from_cycles([[1, 2, 3]], 5), Permutation.from_cycles([[1, 2], [4, 5]], 5)])
    write("a5_s3", G, H, "A5 on the cosets of S3")


def a9_asl23() -> None:
    pt = {(x, y): x + 3 * y for x in range(3) for y in range(3)}

    def affine(M, t):
        img = [0] * 9
        for (x, y), i in pt.items():
            u = ((x * M[0][0] + y * M[1][0] + t[0]) % 3, (x * M[0][1] + y * M[1][1] + t[1]) % 3)
            img[i] = pt[u]
        return Permutation._raw(tuple(img))

    I = [[1, 0], [0, 1]]
    hgens = [affine(I, (1, 0)), affine(I, (0, 1)), affine([[1, 1], [0, 1]], (0, 0)), affine([[0, 2], [1, 0]], (0, 0))]
    G = build_group([Permutation.from_cycles([[1, 2, 3]], 9), Permutation.from_cycles([list(range(1, 10))], 9)])
    H = SubgroupObject.generated_by(G, hgens)
    assert H.order == 216 and all(G.contains(h) for h in hgens)
    write("a9_asl23", G, H, "A9 on the cosets of ASL2(3)")


def m23() -> None:
    G = build_group([Permutation.from_cycles(c, 23) for c in M23_GENS])
    assert G.order == 10200960
    c = G.generators[0]
    H = ConjugateSpace(G, SubgroupObject.generated_by(G, [c])).stabilizer()
    assert H.order == 253
    write("m23_23colon11", G, H, "M23 on the cosets of 23:11")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    a5_s3()
    m10_and_friends()
    a9_asl23()
    m23()
