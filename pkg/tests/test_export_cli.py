import json

import pytest

from higher_tamari import cli, export
from higher_tamari.simplicial import enumerate_hst, lower_triangulation
from higher_tamari.verification import CellReport
from higher_tamari.zonotopal import bruhat_enumeration

from conftest import cub_from_inv


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("TAMARI_CACHE", str(d))
    return d


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(export.dumps(obj))
    return str(p)


# ---------------------------------------------------------------- canonical JSON


def test_dumps_is_canonical():
    assert export.dumps({"b": [2, 1], "a": 1}) == '{"a":1,"b":[2,1]}\n'


def test_triangulation_round_trip(hexagon):
    data = export.triangulation_to_json(hexagon)
    assert data["simplices"][0] == [1, 2, 3]
    assert export.triangulation_from_json(json.loads(export.dumps(data))) == hexagon


def test_cubillage_round_trip(q1):
    data = export.cubillage_to_json(q1)
    assert data["dim"] == 2 and data["inversion_set"] == [[1, 2, 3]]
    assert export.cubillage_from_json(data) == q1


def test_rejects_bad_inversion_set(q1):
    data = export.cubillage_to_json(q1)
    data["inversion_set"] = []
    with pytest.raises(Exception):
        export.cubillage_from_json(data)


def test_poset_json_round_trip():
    p = enumerate_hst(6, 2)
    text = export.dumps(export.poset_to_json(p, "hst", 6, 2))
    back = export.poset_from_json(json.loads(text))
    assert export.dumps(export.poset_to_json(back, "hst", 6, 2)) == text
    b = bruhat_enumeration(4, 1).poset
    text = export.dumps(export.poset_to_json(b, "bruhat", 4, 1))
    back = export.poset_from_json(json.loads(text))
    assert export.dumps(export.poset_to_json(back, "bruhat", 4, 1)) == text


def test_hasse_dot_shape():
    dot = export.hasse_dot(enumerate_hst(5, 2), "S(5,2)")
    assert dot.startswith('digraph "S(5,2)" {') and dot.endswith("}\n")
    assert dot.count("[label=") == 5
    assert dot.count(" -> ") == 5


# ---------------------------------------------------------------- CLI


def test_cache_dir_precedence(tmp_path, cache):
    assert cli.resolve_cache_dir(None) == cache
    assert cli.resolve_cache_dir(str(tmp_path / "x")) == tmp_path / "x"


@pytest.mark.parametrize("kind,n,delta,size", [("bruhat", 4, 1, 8), ("hst", 6, 2, 14), ("bruhat", 5, 2, 10)])
def test_enumerate_sizes(capsys, kind, n, delta, size):
    rc, out, _ = run(capsys, "enumerate", "--kind", kind, "--n", str(n), "--delta", str(delta))
    assert rc == 0
    assert json.loads(out)["results"][0]["size"] == size


def test_cache_is_byte_identical(capsys, cache):
    run(capsys, "enumerate", "--kind", "hst", "--n", "6", "--delta", "2")
    path = cli.cache_path(cache, "hst", 6, 2)
    first = path.read_bytes()
    rc, out, _ = run(capsys, "enumerate", "--kind", "hst", "--n", "6", "--delta", "2")
    assert rc == 0 and json.loads(out)["results"][0]["cached"] is True
    assert path.read_bytes() == first
    path.unlink()
    run(capsys, "enumerate", "--kind", "hst", "--n", "6", "--delta", "2")
    assert path.read_bytes() == first


def test_map_q1(capsys, tmp_path, q1):
    f = write(tmp_path, "q1.json", export.cubillage_to_json(q1))
    rc, out, _ = run(capsys, "map", "--g", "--input", f)
    data = json.loads(out)
    assert rc == 0
    assert data["triangulation"]["simplices"] == [[1, 3], [3, 4]]
    assert data["internal_simplices"] == [[3]]


def test_map_gbar(capsys, tmp_path):
    q2 = cub_from_inv(4, 2, [])
    f = write(tmp_path, "q2.json", export.cubillage_to_json(q2))
    rc, out, _ = run(capsys, "map", "--gbar", "--input", f)
    assert rc == 0
    assert json.loads(out)["triangulation"]["simplices"] == [[1, 2, 4], [2, 3, 4]]


def test_witness_full_heptagon(capsys, tmp_path, heptagon):
    f = write(tmp_path, "t.json", export.triangulation_to_json(heptagon))
    rc, out, _ = run(capsys, "witness", "full", "--tri", f, "--flip", "1236")
    data = json.loads(out)
    assert rc == 0 and data["length"] == 6 and data["method"] == "coordinate"
    assert [s["remove"] for s in data["steps"]][:2] == [[1, 3, 4, 5], [1, 3, 4]]
    assert all(len(s["sha256"]) == 64 for s in data["steps"])


def test_witness_surject(capsys, tmp_path, hexagon):
    f = write(tmp_path, "t.json", export.triangulation_to_json(hexagon))
    rc, out, _ = run(capsys, "witness", "surject", "--tri", f)
    assert rc == 0
    assert json.loads(out)["U"]


def test_export_dot(capsys):
    rc, out, _ = run(capsys, "export", "--dot", "--kind", "hst", "--n", "5", "--delta", "2")
    assert rc == 0 and out.count("[label=") == 5


def test_verify_pass(capsys):
    rc, out, _ = run(capsys, "verify", "--n", "5", "--delta", "3")
    assert rc == 0 and json.loads(out)["passed"] is True


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(n, delta, *_):
        r = CellReport(n, delta)
        r.fail("quotient_isomorphic", [1, 2])
        return r

    monkeypatch.setattr(cli, "verify_cell", broken)
    rc, out, _ = run(capsys, "verify", "--n", "5", "--delta", "2")
    assert rc == 1 and json.loads(out)["passed"] is False


def test_inspect_invalid_object(capsys, tmp_path):
    bad = export.triangulation_to_json(lower_triangulation(6, 2))
    bad["simplices"] = bad["simplices"][:-1]
    f = write(tmp_path, "bad.json", bad)
    rc, out, _ = run(capsys, "inspect", "--input", f)
    assert rc == 2 and json.loads(out)["valid"] is False


def test_input_errors(capsys, tmp_path):
    rc, _, err = run(capsys, "enumerate", "--n", "3", "--delta", "5")
    assert rc == 2 and json.loads(err)["error"] == "input"
    rc, _, err = run(capsys, "map", "--input", str(tmp_path / "missing.json"))
    assert rc == 2


def test_limit_is_structured(capsys):
    rc, _, err = run(capsys, "enumerate", "--kind", "bruhat", "--n", "7", "--delta", "2", "--max-elements", "10")
    data = json.loads(err)
    assert rc == 2 and data["error"] == "limit" and data["kind"] == "B" and data["reached"] > 10


def test_object_dims_must_match(capsys, tmp_path, heptagon):
    f = write(tmp_path, "t.json", export.triangulation_to_json(heptagon))
    rc, out, _ = run(capsys, "witness", "full", "--n", "7", "--delta", "2", "--tri", f, "--flip", "1236")
    assert rc == 0
    rc, _, err = run(capsys, "witness", "full", "--n", "8", "--delta", "2", "--tri", f, "--flip", "1236")
    assert rc == 2 and "--n 8" in json.loads(err)["message"]
