import io
import json

import pytest

from saxl import catalog as cat
from saxl.cli import main
from saxl.engine import SubdegreeReport, suborbits_bruteforce


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def _write(tmp_path, obj, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


# -- group files --------------------------------------------------------------


def test_load_bundled_file():
    G, H, name = cat.load_group_file(cat._data_path("m10_8colon2.json"))
    assert (G.order, H.order, name) == (720, 16, "M10 on the cosets of 8:2")


def test_load_rejects_non_bijection(tmp_path):
    p = _write(tmp_path, {"name": "x", "degree": 4, "generators": [[[1, 2], [2, 3]]], "stabilizer_generators": []})
    with pytest.raises(cat.GroupFileError, match="point 2"):
        cat.load_group_file(p)


def test_load_rejects_h_outside_g(tmp_path):
    p = _write(tmp_path, {"name": "x", "degree": 4, "generators": [[[1, 2, 3, 4]]], "stabilizer_generators": [[[1, 2]]]})
    with pytest.raises(cat.GroupFileError, match="not in G"):
        cat.load_group_file(p)


def test_load_rejects_bad_json_and_schema(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(cat.GroupFileError):
        cat.load_group_file(bad)
    p = _write(tmp_path, {"name": "x", "degree": 4, "generators": [[[1, 5]]], "stabilizer_generators": []})
    with pytest.raises(cat.GroupFileError, match="outside"):
        cat.load_group_file(p)
    p = _write(tmp_path, {"name": "x", "generators": []})
    with pytest.raises(cat.GroupFileError, match="degree"):
        cat.load_group_file(p)


def test_identity_generator_is_empty_list(tmp_path):
    p = _write(tmp_path, {"name": "S3", "degree": 3, "generators": [[[1, 2, 3]], [[1, 2]]], "stabilizer_generators": [[]]})
    G, H, _ = cat.load_group_file(p)
    assert G.order == 6 and H.order == 1


# -- catalog expectations -------------------------------------------------------


LIGHT = [n for n, e in cat.CATALOG.items() if not e.heavy and n not in ("pgl3_7", "gl5_2", "m23_23colon11", "psl3_7")]


@pytest.mark.parametrize("name", LIGHT)
def test_catalog_expected_values(name, get_action):
    e = cat.get_entry(name)
    a = get_action(name)
    r = suborbits_bruteforce(a.space)
    got = {"order": a.G.order, "index": len(a.space), "valency": r.valency}
    for key, (want, _prov) in e.expected.items():
        assert got[key] == want, f"{name}: {key} expected {want}, computed {got[key]}"


def test_unknown_entry():
    with pytest.raises(KeyError):
        cat.get_entry("nope")


def test_cache_round_trip(tmp_path, get_report):
    cache = cat.ResultCache(tmp_path / "c")
    r = get_report("a5_s3")
    path = cache.put("a5_s3", "all", r)
    assert path.exists()
    assert cache.get("a5_s3", "all") == r
    assert cache.get("a5_s3", "bruteforce") is None
    assert not list((tmp_path / "c").glob(".tmp-*"))


# -- CLI ------------------------------------------------------------------------


def test_cli_compute_writes_report_and_dot(tmp_path):
    out_json, dot = tmp_path / "r.json", tmp_path / "g.dot"
    code, text = run("compute", "--entry", "a5_s3", "--method", "all", "--out", str(out_json), "--export-dot", str(dot))
    assert code == 0
    assert "valency    6" in text
    rep = SubdegreeReport.from_json(out_json.read_text())
    assert rep.valency == 6 and rep.checks["cross_method_agreement"] is True
    assert "vertices=10 edges=30" in dot.read_text()


def test_cli_compute_from_file_and_cache():
    code, text = run("compute", "--file", str(cat._data_path("pgl29_d16.json")), "--method", "bruteforce")
    assert code == 0 and "valency    16" in text
    for _ in range(2):
        code, text = run("compute", "--entry", "m10_agl15", "--method", "delta")
        assert code == 0 and "valency    20" in text


def test_cli_usage_errors():
    assert run("compute", "--entry", "nope")[0] == 1
    assert run("compute")[0] == 1
    assert run("bogus")[0] == 1
    assert run("formula", "sym", "--p", "8")[0] == 1
    assert run("formula", "frobenius", "--k", "7")[0] == 1


def test_cli_formulas():
    code, text = run("formula", "sym", "--p", "13")
    assert code == 0 and "valency 39862836" in text
    code, text = run("formula", "psl2", "--q", "13", "--case", "split")
    assert "valency 60" in text
    code, text = run("formula", "lreps", "--r", "3", "--q", "7", "--eps", "+", "--socle")
    assert code == 0 and "19^23" in text
    code, text = run("formula", "frobenius", "--k", "7", "--l", "6", "--index", "120", "--norm", "2=48,3=36,6=12")
    assert code == 0 and "valency    42" in text


def test_cli_classify():
    code, text = run("classify", "--family", "PGL2-split", "--params", "p=17")
    assert code == 0 and "valency: 32" in text and "prime power: yes" in text
    code, text = run("classify", "--family", "LrEps", "--params", "r=3,q=7,eps=+")
    assert "rejected" in text


def test_cli_catalog_list():
    code, text = run("catalog", "list")
    assert code == 0
    assert all(name in text for name in cat.CATALOG)


def test_cli_verify_fast_suites():
    for suite in ("table1", "johnson", "frobenius-identity"):
        code, text = run("verify", "--suite", suite)
        assert code == 0, text
        assert "FAIL" not in text
