import io
import json

import pytest

from cobinv.cli import run


def call(argv, monkeypatch=None):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, json.loads(buf.getvalue())


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    code, _ = call(["catalog", "--write", str(d)])
    assert code == 0
    return d


def test_decompose_swap(corpus):
    code, out = call(["decompose", str(corpus / "p1xp1_swap.json")])
    assert code == 0
    assert out["pretty"] == "-x1^2 + 4*x2 - t*x3"
    assert set(out["A"]) == {"1"}


def test_curve_check():
    code, out = call(["curve-check", "--n", "1", "--a", "0", "--b", "0", "--c", "2"])
    assert (code, out["verdict"]) == (0, "yes")
    code, out = call(["curve-check", "--n", "3", "--a", "1", "--b", "0", "--c", "3", "--lattice"])
    assert out["verdict"] == out["lattice_verdict"] == "no"


def test_genus_p4(corpus):
    code, out = call(["genus", "--which", "euler", str(corpus / "p4.json")])
    assert (code, out["value"]) == (0, 5)


def test_chern_numbers(corpus):
    code, out = call(["chern-numbers", str(corpus / "p2.json"), "--alpha", "1,1"])
    assert out["value"] == 6
    code, out = call(["chern-numbers", str(corpus / "p2.json")])
    assert out == {"1,1": 6, "2": -3}


def test_class_reports_generators(corpus):
    code, out = call(["class", str(corpus / "h_1_2.json")])
    assert out["dim"] == 2
    assert out["generators"][0]["coeffs"] == [-1, 0]


def test_bundle_class_then_realizable(corpus, tmp_path):
    code, out = call(["bundle-class", str(corpus / "x3.json")])
    path = tmp_path / "m.json"
    path.write_text(json.dumps(out["class"]))
    code, out = call(["realizable", str(path)])
    assert (code, out["verdict"]) == (0, "yes")


def test_verify_shipped_corpus_exits_zero():
    code, out = call(["verify"])
    assert code == 0
    assert not [r for r in out if r["status"] == "violated"]


def test_verify_file(corpus):
    code, out = call(["verify", str(corpus / "sharp_x5.json"), "--suite", "bounds"])
    assert code == 0
    assert any(r["theorem"] == "fixed_chern_number" and r["status"] == "sharp" for r in out)


def test_errors(corpus, monkeypatch):
    assert call(["nope"])[0] == 2
    assert call(["genus", str(corpus / "p4.json")])[0] == 2
    assert call(["class", "/nonexistent.json"])[0] == 2
    monkeypatch.setenv("COBINV_DEGREE", "4")
    code, out = call(["class", str(corpus / "p6.json")])
    assert code == 3
    assert out["error"]["code"] == "window_overflow"


def test_deterministic(corpus):
    a = io.StringIO()
    b = io.StringIO()
    run(["decompose", str(corpus / "hij_1_2.json")], a)
    run(["decompose", str(corpus / "hij_1_2.json")], b)
    assert a.getvalue() == b.getvalue()


def test_shipped_files_match_catalog():
    from pathlib import Path
    from cobinv.config import Config
    from cobinv.equivariant import catalog, fixture_from_json, nu
    cfg = Config(D=10)
    root = Path(__file__).resolve().parent.parent / "fixtures"
    files = sorted(root.glob("*.json"))
    assert len(files) > 60
    for path in files:
        obj = json.loads(path.read_text())
        if "components" not in obj:
            continue
        spec = obj.pop("catalog")
        assert nu(fixture_from_json(obj), cfg) == nu(catalog(*spec), cfg), path.name
