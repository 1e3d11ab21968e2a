"""Subdegrees and Saxl-graph valencies: brute-force suborbits and the δ/Δ inversion method.

The inversion method works over a set Ĩ of arc stabilisers H ∩ H^g (up to
H-conjugacy and a coarser fusion).  For each A in Ĩ,
``Δ(A) = #{g : A <= H ∩ H^g}`` is computed from normaliser orders, and the
counts ``δ(A) = #{g : H ∩ H^g = A}`` follow by inverting the triangular
incidence matrix of fused containment counts.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .action import ActionSpace, ConjugateSpace, SubsetSpace, suborbit_partition
from .group import DEFAULT_LABEL_CAP, GroupHandle, SubgroupObject
from .lattice import IncidenceMatrix, SubgroupClassTable, all_subgroups, eta, invert_incidence

__all__ = [
    "SubdegreeReport",
    "ArcStabiliserClass",
    "make_report",
    "suborbits_bruteforce",
    "arc_stabilisers",
    "fuse_equivalent",
    "delta_engine",
    "cross_validate",
    "saxl_graph_edges",
    "saxl_graph_export",
    "johnson_check",
    "scan_normal_arc_stabilisers",
]

DOT_EXPORT_CAP = 5000


@dataclass
class SubdegreeReport:
    group_name: str
    order_G: int
    order_H: int
    index: int
    entries: list  # (subdegree, multiplicity), ascending
    valency: int
    method: str
    checks: dict
    details: dict = field(default_factory=dict, compare=False, repr=False)

    def multiplicity(self, n: int) -> int:
        return dict(self.entries).get(n, 0)

    @property
    def consistent(self) -> bool:
        return bool(self.checks.get("sum_rule")) and bool(self.checks.get("valency_divisibility")) and (
            self.checks.get("cross_method_agreement") is not False
        ) and self.details.get("consistent", True)

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "order_G": str(self.order_G),
            "order_H": str(self.order_H),
            "index": str(self.index),
            "subdegrees": [{"length": str(n), "multiplicity": str(m)} for n, m in self.entries],
            "valency": str(self.valency),
            "method": self.method,
            "checks": {
                "sum_rule": bool(self.checks.get("sum_rule")),
                "valency_divisibility": bool(self.checks.get("valency_divisibility")),
                "cross_method_agreement": self.checks.get("cross_method_agreement"),
            },
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "SubdegreeReport":
        return cls(
            group_name=d["group"],
            order_G=int(d["order_G"]),
            order_H=int(d["order_H"]),
            index=int(d["index"]),
            entries=[(int(e["length"]), int(e["multiplicity"])) for e in d["subdegrees"]],
            valency=int(d["valency"]),
            method=d["method"],
            checks=dict(d["checks"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "SubdegreeReport":
        return cls.from_dict(json.loads(text))


def make_report(name: str, order_G: int, order_H: int, index: int, counts: dict, method: str, **details) -> SubdegreeReport:
    entries = sorted((int(n), int(m)) for n, m in counts.items() if m)
    valency = order_H * dict(entries).get(order_H, 0)
    checks = {
        "sum_rule": sum(n * m for n, m in entries) == index and dict(entries).get(1) == 1,
        "valency_divisibility": valency % order_H == 0,
        "cross_method_agreement": None,
    }
    return SubdegreeReport(name, order_G, order_H, index, entries, valency, method, checks, dict(details))


# ---------------------------------------------------------------------------
# brute force


def _check_stabiliser(space: ActionSpace, H: SubgroupObject | None) -> SubgroupObject:
    base = space.stabilizer()
    if H is not None and H != base:
        raise ValueError("H is not the stabiliser of the base label")
    return base


def _suborbit_data(space: ActionSpace) -> dict:
    if space._suborbits is None:
        comp = suborbit_partition(space)
        _, reps, sizes = np.unique(comp, return_index=True, return_counts=True)
        order = np.argsort(reps)
        space._suborbits = {"comp": comp, "reps": reps[order], "sizes": sizes[order]}
    return space._suborbits


def suborbits_bruteforce(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None, name: str = "") -> SubdegreeReport:
    """Partition the labels into H-orbits; valency = |H| times the number of regular ones."""
    if G is not None and G is not space.group:
        raise ValueError("space was built for a different group handle")
    H = _check_stabiliser(space, H)
    data = _suborbit_data(space)
    counts = Counter(int(s) for s in data["sizes"])
    return make_report(name, space.group.order, H.order, len(space), counts, "bruteforce")


# ---------------------------------------------------------------------------
# arc stabilisers and the inversion method


@dataclass
class ArcStabiliserClass:
    representative: SubgroupObject
    h_class_size: int
    h_normalizer_order: int
    class_index: int
    tilde_class_size: int = 1
    delta_size: int | None = None
    Delta_size: int | None = None
    suborbits: int = 0
    fused: tuple = ()

    @property
    def order(self) -> int:
        return self.representative.order


def _arc_masks(space: ActionSpace, H: SubgroupObject, table: SubgroupClassTable) -> list:
    """Mask of H ∩ H^t for the transversal t of each suborbit representative."""
    data = _suborbit_data(space)
    E = H.element_array()
    index = table._table.index
    out = []
    for i, size in zip(data["reps"], data["sizes"]):
        t = space.T[int(i)].astype(np.int64)
        C = np.empty_like(E)
        C[:, t] = t[E]  # t^-1 e t
        mask = 0
        count = 0
        for row in map(tuple, C.tolist()):
            j = index.get(row)
            if j is not None:
                mask |= 1 << j
                count += 1
        if count * int(size) != H.order:
            raise AssertionError("suborbit length disagrees with arc stabiliser order")
        out.append((int(i), mask))
    return out


def arc_stabilisers(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None, table: SubgroupClassTable | None = None) -> tuple:
    """One representative per H-class of arc stabilisers H ∩ H^g; returns (classes, table)."""
    H = _check_stabiliser(space, H)
    if table is None:
        table = all_subgroups(H)
    hits = Counter(table.class_index(mask) for _, mask in _arc_masks(space, H, table))
    ids = set(hits) | {0, len(table) - 1}
    out = []
    for cid in sorted(ids):
        c = table[cid]
        out.append(ArcStabiliserClass(c.representative, c.size, c.normalizer_order, cid, suborbits=hits.get(cid, 0)))
    return out, table


def fuse_equivalent(classes: list, G: GroupHandle, H: SubgroupObject, table: SubgroupClassTable, *, label_cap: int = DEFAULT_LABEL_CAP, spaces: dict | None = None) -> list:
    """Fuse arc-stabiliser classes that are G-conjugate with equal N_H order and η profile."""
    spaces = {} if spaces is None else spaces
    ids = [c.class_index for c in classes]
    eta_tab = {(a, b): eta(table[a].members[0], b, table) for a in ids for b in ids}
    parent = {a: a for a in ids}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for x, A in enumerate(classes):
        for B in classes[x + 1 :]:
            a, b = A.class_index, B.class_index
            if A.order != B.order or A.order in (1, H.order) or find(a) == find(b):
                continue
            if A.h_normalizer_order != B.h_normalizer_order:
                continue
            others = [c for c in ids if c not in (a, b)]
            if any(eta_tab[a, c] != eta_tab[b, c] or eta_tab[c, a] != eta_tab[c, b] for c in others):
                continue
            space = _conj_space(spaces, G, A.representative, a, label_cap)
            if space.key_of(B.representative) not in space.index:
                continue
            parent[find(b)] = find(a)
    groups: dict = {}
    for c in classes:
        groups.setdefault(find(c.class_index), []).append(c)
    out = []
    for root in sorted(groups):
        members = groups[root]
        rep = members[0]
        rep.tilde_class_size = len(members)
        rep.fused = tuple(m.class_index for m in members)
        rep.suborbits = sum(m.suborbits for m in members)
        out.append(rep)
    return out


def _conj_space(spaces: dict, G: GroupHandle, A: SubgroupObject, key, label_cap: int) -> ConjugateSpace:
    if key not in spaces:
        spaces[key] = ConjugateSpace(G, A, label_cap=label_cap)
    return spaces[key]


def delta_engine(
    G: GroupHandle,
    H: SubgroupObject,
    tilde_classes: list,
    table: SubgroupClassTable,
    *,
    normalizer_data: dict | None = None,
    label_cap: int = DEFAULT_LABEL_CAP,
    spaces: dict | None = None,
    name: str = "",
) -> SubdegreeReport:
    """Solve δ = M⁻¹Δ over Ĩ and assemble valency and multiplicities.

    ``normalizer_data`` optionally maps a class index to ``(|N_G(A)|, [class
    indices B of H with B conjugate to A in G])``; missing entries are computed
    from conjugation orbits in G.
    """
    spaces = {} if spaces is None else spaces
    normalizer_data = normalizer_data or {}
    tilde = sorted(tilde_classes, key=lambda c: c.class_index)
    ids = [c.class_index for c in tilde]
    n = len(tilde)
    rows = []
    for i, A in enumerate(tilde):
        a_mask = table[A.class_index].members[0]
        rows.append([1 if i == j else eta(a_mask, B.class_index, table) * B.tilde_class_size for j, B in enumerate(tilde)])
    M = IncidenceMatrix.from_rows(ids, rows)
    Minv = invert_incidence(M)

    Delta = []
    hord = H.order
    for A in tilde:
        if A.order == 1:
            Delta.append(G.order)
            continue
        if A.class_index in normalizer_data:
            NG, same = normalizer_data[A.class_index]
        else:
            space = _conj_space(spaces, G, A.representative, A.class_index, label_cap)
            NG = G.order // len(space)
            same = [
                b for b, c in enumerate(table.classes)
                if c.order == A.order and space.key_of(c.representative) in space.index
            ]
        total = sum(Fraction(hord * NG, table[b].normalizer_order) for b in same)
        if total.denominator != 1:
            raise AssertionError("non-integral Δ value")
        Delta.append(int(total))
    delta = Minv.apply(Delta)
    for A, D, d in zip(tilde, Delta, delta):
        A.Delta_size, A.delta_size = D, d

    problems = []
    if any(d < 0 for d in delta):
        problems.append("negative δ entry")
    mult: dict = {}
    for A, d in zip(tilde, delta):
        length = hord // A.order
        mult[length] = mult.get(length, Fraction(0)) + Fraction(d * A.tilde_class_size, A.h_normalizer_order * length)
    counts = {}
    for length, m in mult.items():
        if m.denominator != 1:
            problems.append(f"non-integral multiplicity at subdegree {length}")
        elif m < 0:
            problems.append(f"negative multiplicity at subdegree {length}")
        elif m:
            counts[length] = int(m)
    index = G.order // hord
    report = make_report(
        name, G.order, hord, index, counts, "delta-engine",
        tilde=[c.representative for c in tilde], M=M, Minv=Minv, Delta=Delta, delta=delta,
        problems=problems, consistent=not problems,
    )
    if delta and tilde[0].order == 1 and delta[0] % hord == 0 and delta[0] >= 0:
        if report.valency != delta[0] // hord:
            # δ(1)/|H| is the valency; the regular multiplicity must agree
            problems.append("δ(1)/|H| disagrees with the regular multiplicity")
            report.details["consistent"] = False
    return report


def cross_validate(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None, *, name: str = "", label_cap: int = DEFAULT_LABEL_CAP) -> SubdegreeReport:
    """Run both methods; the returned engine report carries the agreement flag and the brute report."""
    G = space.group if G is None else G
    brute = suborbits_bruteforce(space, G, H, name=name)
    H = space.stabilizer()
    arcs, table = arc_stabilisers(space, G, H)
    spaces: dict = {}
    tilde = fuse_equivalent(arcs, G, H, table, label_cap=label_cap, spaces=spaces)
    report = delta_engine(G, H, tilde, table, label_cap=label_cap, spaces=spaces, name=name)
    agree = report.entries == brute.entries and report.valency == brute.valency and report.details["consistent"]
    report.checks["cross_method_agreement"] = bool(agree)
    brute.checks["cross_method_agreement"] = bool(agree)
    report.details["bruteforce"] = brute
    report.details["arc_classes"] = arcs
    report.details["table"] = table
    return report


# ---------------------------------------------------------------------------
# Saxl graph


def saxl_graph_edges(space: ActionSpace, H: SubgroupObject | None = None, *, cap: int = DOT_EXPORT_CAP) -> list:
    """Sorted pairs (i, j), i < j, of label indices forming a base."""
    N = len(space)
    if N > cap:
        raise ValueError(f"{N} vertices exceed the export cap {cap}")
    H = _check_stabiliser(space, H)
    data = _suborbit_data(space)
    regular = np.isin(data["comp"], data["comp"][data["reps"][data["sizes"] == H.order]])
    base_nbrs = np.flatnonzero(regular)
    edges = set()
    for i in range(N):
        if not len(base_nbrs):
            break
        perm = space.label_perm(space.transversal(i)) if i else np.arange(N)
        for j in perm[base_nbrs].tolist():
            if i < j:
                edges.add((i, j))
            elif j < i:
                edges.add((j, i))
    return sorted(edges)


def saxl_graph_export(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None, sink=None, *, cap: int = DOT_EXPORT_CAP) -> str:
    """DOT text of the Saxl graph (vertices numbered 1.. by label index); written to ``sink`` if given."""
    edges = saxl_graph_edges(space, H, cap=cap)
    lines = [f"graph saxl {{", f"  /* vertices={len(space)} edges={len(edges)} */"]
    lines += [f"  v{i + 1} -- v{j + 1};" for i, j in edges]
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        if hasattr(sink, "write"):
            sink.write(text)
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                fh.write(text)
    return text


def johnson_check(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None, q: int | None = None) -> bool:
    """Saxl adjacency on 2-subsets equals "share exactly one point"."""
    if not isinstance(space, SubsetSpace) or len(space.base_label) != 2:
        raise ValueError("johnson_check needs the action on 2-subsets")
    if q is not None and space.group.degree != q + 1:
        raise ValueError(f"expected {q + 1} projective points, got {space.group.degree}")
    saxl = set(saxl_graph_edges(space, H, cap=max(DOT_EXPORT_CAP, len(space))))
    labels = space.labels
    N = len(labels)
    for i in range(N):
        a = set(labels[i])
        for j in range(i + 1, N):
            if (len(a & set(labels[j])) == 1) != ((i, j) in saxl):
                return False
    return True


def scan_normal_arc_stabilisers(space: ActionSpace, G: GroupHandle | None = None, H: SubgroupObject | None = None) -> list:
    """Suborbit representatives β with 1 != H_β normal in H."""
    H = _check_stabiliser(space, H)
    data = _suborbit_data(space)
    E = H.element_array()
    elems = set(H.raw_elements)
    out = []
    for i, size in zip(data["reps"], data["sizes"]):
        if int(i) == 0 or int(size) == H.order:
            continue
        t = space.T[int(i)].astype(np.int64)
        C = np.empty_like(E)
        C[:, t] = t[E]
        inter = [r for r in map(tuple, C.tolist()) if r in elems]
        A = SubgroupObject(H.parent, inter)
        if A.order > 1 and A.is_normal_in(H):
            out.append(space.labels[int(i)])
    return out
