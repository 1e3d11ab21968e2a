"""Bundled catalog of (G, H) pairs, group-file loading and a small result cache."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .action import ConjugateSpace, normalizer_order
from .closed_forms import FrobeniusInput
from .constructions import (
    GroupAction,
    build_psl2_action,
    build_singer_normalizer_action,
    build_sym_alt_action,
)
from .engine import SubdegreeReport, cross_validate, suborbits_bruteforce
from .group import DEFAULT_LABEL_CAP, SubgroupObject, build_group
from .numtheory import divisors
from .perm import Permutation

__all__ = [
    "GroupFileError",
    "CatalogEntry",
    "CATALOG",
    "get_entry",
    "load_group_file",
    "build_entry",
    "compute_entry",
    "action_from_file",
    "frobenius_input_from_action",
    "ResultCache",
]


class GroupFileError(ValueError):
    pass


def _perm_from_cycles(cycles, degree: int, where: str) -> Permutation:
    if not isinstance(cycles, list):
        raise GroupFileError(f"{where}: expected a list of cycles")
    img = list(range(1, degree + 1))
    seen: set = set()
    for cyc in cycles:
        if not isinstance(cyc, list) or not all(isinstance(x, int) for x in cyc):
            raise GroupFileError(f"{where}: cycles must be lists of integers")
        for x in cyc:
            if not 1 <= x <= degree:
                raise GroupFileError(f"{where}: point {x} is outside 1..{degree}")
            if x in seen:
                raise GroupFileError(f"{where}: point {x} appears twice, so the map is not a bijection")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
    return Permutation(img)


def load_group_file(path) -> tuple:
    """Parse a group file; returns (G, H, name) with H <= G checked by membership."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from exc
    for key, kind in (("name", str), ("degree", int), ("generators", list), ("stabilizer_generators", list)):
        if not isinstance(data.get(key), kind):
            raise GroupFileError(f"{path}: field {key!r} missing or not a {kind.__name__}")
    n = data["degree"]
    if n < 1:
        raise GroupFileError(f"{path}: degree must be positive")
    gens = [_perm_from_cycles(c, n, f"generator {i + 1}") for i, c in enumerate(data["generators"])]
    hgens = [_perm_from_cycles(c, n, f"stabilizer generator {i + 1}") for i, c in enumerate(data["stabilizer_generators"])]
    if not gens:
        gens = [Permutation.identity(n)]
    G = build_group(gens, name=data["name"])
    for i, h in enumerate(hgens):
        if not G.contains(h):
            raise GroupFileError(f"{path}: stabilizer generator {i + 1} is not in G")
    H = SubgroupObject.generated_by(G, hgens) if hgens else SubgroupObject.trivial(G)
    return G, H, data["name"]


def _data_path(filename: str) -> Path:
    return Path(str(resources.files("saxl") / "data" / filename))


@dataclass
class CatalogEntry:
    """A named (G, H) pair; ``expected`` values carry a provenance tag."""

    name: str
    construction: dict
    expected: dict = field(default_factory=dict)
    primitive: bool = True
    heavy: bool = False
    family: str | None = None

    def expected_value(self, key: str):
        v = self.expected.get(key)
        return None if v is None else v[0]


def _entry(name, construction, primitive=True, heavy=False, family=None, **expected):
    return CatalogEntry(name, construction, {k: tuple(v) for k, v in expected.items()}, primitive, heavy, family)


def _file(name):
    return {"file": name}


def _builder(kind, **params):
    return {"builder": kind, "params": params}


_ENTRIES = [
    _entry("a5_s3", _file("a5_s3.json"), order=(60, "TRIVIAL"), index=(10, "TRIVIAL"), valency=(6, "PUBLISHED")),
    _entry("m10_agl15", _file("m10_agl15.json"), order=(720, "TRIVIAL"), index=(36, "DERIVED"), valency=(20, "PUBLISHED")),
    _entry("m10_8colon2", _file("m10_8colon2.json"), family="M10", order=(720, "TRIVIAL"), index=(45, "DERIVED"), valency=(32, "PUBLISHED")),
    _entry("pgl29_d16", _file("pgl29_d16.json"), family="PGL2(9)", order=(720, "TRIVIAL"), index=(45, "DERIVED"), valency=(16, "PUBLISHED")),
    _entry("pgaml29_8colon22", _file("pgaml29_8colon22.json"), family="PGammaL2(9)", order=(1440, "TRIVIAL"), index=(45, "DERIVED"), valency=(0, "DERIVED")),
    _entry("a9_asl23", _file("a9_asl23.json"), order=(181440, "TRIVIAL"), index=(840, "DERIVED"), valency=(432, "PUBLISHED")),
    _entry("m23_23colon11", _file("m23_23colon11.json"), family="M23", order=(10200960, "TRIVIAL"), index=(40320, "DERIVED"), valency=(40227, "DERIVED")),
    _entry("pgl3_7", _builder("singer", r=3, q=7), family="LrEps", order=(5630688, "PUBLISHED"), index=(32928, "PUBLISHED"), valency=(31122, "PUBLISHED")),
    _entry("psl3_7", _builder("singer", r=3, q=7, socle=True), family="LrEps-socle", order=(1876896, "DERIVED"), index=(32928, "DERIVED"), valency=(32490, "DERIVED")),
    _entry("l3_2", _builder("singer", r=3, q=2), family="LrEps", order=(168, "TRIVIAL"), index=(8, "DERIVED"), valency=(0, "DERIVED")),
    _entry("pgl3_4", _builder("singer", r=3, q=4), family="LrEps", order=(60480, "DERIVED"), index=(960, "DERIVED"), valency=(756, "DERIVED")),
    _entry("gl5_2", _builder("singer", r=5, q=2), family="LrEps", order=(9999360, "DERIVED"), index=(64512, "DERIVED"), valency=(64170, "DERIVED")),
    _entry("s7_agl17", _builder("symalt", p=7, variant="sym"), family="Sp", order=(5040, "TRIVIAL"), index=(120, "DERIVED"), valency=(42, "DERIVED")),
    _entry("s11_agl111", _builder("symalt", p=11, variant="sym"), family="Sp", heavy=True, order=(39916800, "TRIVIAL"), index=(362880, "DERIVED"), valency=(358490, "DERIVED")),
    _entry("a7_7colon3", _builder("symalt", p=7, variant="alt"), primitive=False, order=(2520, "TRIVIAL"), index=(120, "DERIVED")),
]
for _q in (13, 17, 19, 23, 29):
    _ENTRIES.append(_entry(f"psl2_{_q}_split", _builder("psl2", q=_q, case="split", projective="psl"), family="PSL2-split"))
for _q in (11, 13, 17, 19):
    _ENTRIES.append(_entry(f"psl2_{_q}_nonsplit", _builder("psl2", q=_q, case="nonsplit", projective="psl"), family="PSL2-nonsplit"))
for _q in (7, 8, 9, 11, 13, 16, 17):
    _ENTRIES.append(_entry(f"pgl2_{_q}_split", _builder("psl2", q=_q, case="split", projective="pgl"), family="PGL2-split", valency=(2 * (_q - 1), "PUBLISHED")))
for _q in (7, 9, 11, 13):
    _ENTRIES.append(_entry(f"pgl2_{_q}_nonsplit", _builder("psl2", q=_q, case="nonsplit", projective="pgl"), family="PGL2-nonsplit", valency=(0, "PUBLISHED")))

CATALOG = {e.name: e for e in _ENTRIES}


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None


def action_from_file(path, *, label_cap: int = DEFAULT_LABEL_CAP) -> GroupAction:
    """G acting on the conjugates of H; requires H to be self-normalising."""
    G, H, name = load_group_file(path)
    space = ConjugateSpace(G, H, label_cap=label_cap)
    if len(space) * H.order != G.order:
        raise GroupFileError(f"{name}: H is not self-normalising, so its conjugates do not model the cosets")
    return GroupAction(name, G, space, space.stabilizer())


def build_entry(entry: CatalogEntry | str, *, label_cap: int = DEFAULT_LABEL_CAP) -> GroupAction:
    entry = get_entry(entry) if isinstance(entry, str) else entry
    c = entry.construction
    if "file" in c:
        act = action_from_file(_data_path(c["file"]), label_cap=label_cap)
    else:
        kind, params = c["builder"], dict(c["params"])
        if kind == "singer":
            act = build_singer_normalizer_action(params.pop("r"), params.pop("q"), label_cap=label_cap, **params)
        elif kind == "symalt":
            act = build_sym_alt_action(params["p"], params["variant"], label_cap=label_cap)
        elif kind == "psl2":
            act = build_psl2_action(params["q"], params["case"], projective=params["projective"], label_cap=label_cap)
        else:
            raise ValueError(f"unknown builder {kind!r}")
    act.name = entry.name
    return act


def compute_entry(action: GroupAction, method: str = "all", *, label_cap: int = DEFAULT_LABEL_CAP) -> SubdegreeReport:
    if method == "bruteforce":
        return suborbits_bruteforce(action.space, name=action.name)
    if method in ("delta", "all"):
        report = cross_validate(action.space, name=action.name, label_cap=label_cap)
        if method == "delta":
            report.checks["cross_method_agreement"] = None
        return report
    raise ValueError(f"unknown method {method!r}")


class ResultCache:
    """Reports keyed by (entry, method, code version) under ``SAXL_CACHE_DIR``."""

    def __init__(self, root=None):
        self.root = Path(root or os.environ.get("SAXL_CACHE_DIR", ".saxl-cache"))

    def _path(self, entry: str, method: str) -> Path:
        return self.root / f"{entry}.{method}.{__version__}.json"

    def get(self, entry: str, method: str) -> SubdegreeReport | None:
        p = self._path(entry, method)
        if not p.exists():
            return None
        try:
            return SubdegreeReport.from_json(p.read_text(encoding="utf-8"))
        except (OSError, ValueError, KeyError):
            return None

    def put(self, entry: str, method: str, report: SubdegreeReport) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(entry, method)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        os.replace(tmp, p)
        return p


def frobenius_input_from_action(action: GroupAction, k: int, *, label_cap: int = DEFAULT_LABEL_CAP) -> FrobeniusInput:
    """Normaliser data for H = K:L with |K| = k, taken from the concrete group.

    L is generated by the first element of H (in canonical order) of order |H|/k,
    and each |N_G(<y^(l/d)>)| comes from a conjugation orbit in G.
    """
    H, G = action.H, action.G
    if H.order % k:
        raise ValueError(f"{k} does not divide |H| = {H.order}")
    l = H.order // k
    y = next((g for g in H.elements if g.order() == l), None)
    if y is None:
        raise ValueError(f"H has no element of order {l}")
    norms = {}
    for d in divisors(l):
        if d > 1:
            S = SubgroupObject.generated_by(G, [y ** (l // d)])
            norms[d] = normalizer_order(G, S, label_cap=label_cap)
    return FrobeniusInput(k, l, norms, len(action.space))
