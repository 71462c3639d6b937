import hashlib
import json
import subprocess
import sys

import pytest

from jschur.cache import Cache, canonical_bytes
from jschur.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_SCALE, main
from jschur.tables import multiplication_table, oracle_table, table_from_normalized


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_canonical_bytes():
    assert canonical_bytes({"b": 1, "a": [1, 2]}) == b'{"a":[1,2],"b":1}\n'


def test_cache_put_get_and_manifest(tmp_path):
    c = Cache(tmp_path)
    assert c.get("table", {"n": 1}) is None
    path = c.put("table", {"n": 1}, b"hello\n")
    assert c.get("table", {"n": 1}) == b"hello\n"
    man = json.loads((tmp_path / "manifest.json").read_text())
    entry = man["entries"][c.key("table", {"n": 1})]
    assert entry["size"] == 6
    assert entry["sha256"] == hashlib.sha256(b"hello\n").hexdigest()
    assert man["format"] == 1
    # corrupt the file: the entry is dropped
    path.write_bytes(b"tampered\n")
    assert c.get("table", {"n": 1}) is None
    assert c.key("table", {"n": 1}) not in c.manifest()["entries"]


def test_cache_key_includes_version(tmp_path):
    assert Cache(tmp_path, "1").key("t", {}) != Cache(tmp_path, "2").key("t", {})


def test_get_or_compute_skips_recomputation(tmp_path):
    c = Cache(tmp_path)
    calls = []
    c.get_or_compute("t", {"x": 1}, lambda: calls.append(1) or {"v": 1})
    c.get_or_compute("t", {"x": 1}, lambda: calls.append(1) or {"v": 1})
    assert calls == [1] and c.hits == 1


def test_normalized_table_converts_to_oracle():
    t = multiplication_table(1, 1, "normalized")
    assert canonical_bytes(table_from_normalized(t)["entries"]) == canonical_bytes(oracle_table(1, 1)["entries"])
    assert canonical_bytes(multiplication_table(1, 1, "e")) == canonical_bytes(oracle_table(1, 1))


def test_parallel_table_is_identical():
    assert canonical_bytes(multiplication_table(1, 2, jobs=2)) == canonical_bytes(multiplication_table(1, 2, jobs=1))


def test_enumerate_verb(capsys):
    code, out, err = run(capsys, "enumerate", "xi", "--n", "1", "--r", "1")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 5
    assert "5 matrices" in err


def test_verify_relations_verb(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--n", "2")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"]
    assert all(f["pass"] for f in rep["families"].values())


def test_verify_formulas_reuses_cache(capsys, tmp_path):
    cache = tmp_path / "c"
    run(capsys, "dump", "table", "--n", "1", "--r", "2", "--out", str(tmp_path / "t.json"), "--cache-dir", str(cache))
    before = (cache / "manifest.json").read_bytes()
    code, out, _ = run(capsys, "verify", "formulas", "--n", "1", "--r", "2", "--cache-dir", str(cache))
    assert code == EXIT_OK and json.loads(out)["pass"]
    assert (cache / "manifest.json").read_bytes() == before


def test_dump_twice_hits_cache(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "dump", "table", "--n", "1", "--r", "1", "--out", str(a))
    code, out, _ = run(capsys, "dump", "table", "--n", "1", "--r", "1", "--out", str(b))
    assert code == EXIT_OK and json.loads(out)["cache_hit"]
    assert a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_bytes())["entries"]) == 13


def test_mul_verb(capsys):
    J = "[[0,0,1],[0,1,0],[1,0,0]]"
    code, out, _ = run(capsys, "mul", "--n", "1", "--r", "1", "--x", J, "--y", J)
    terms = json.loads(out)["product"]["terms"]
    assert code == EXIT_OK and len(terms) == 2
    code, out, _ = run(capsys, "mul", "--n", "1", "--r", "1", "--x", J, "--y", J, "--basis", "e")
    got = {json.dumps(t["A"]["entries"]): t["c"]["num"] for t in json.loads(out)["product"]["terms"]}
    assert got == {"[[0, 0, 1], [0, 1, 0], [1, 0, 0]]": {"0": "-1", "2": "1"},
                   "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]": {"2": "1"}}


def test_other_verbs(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text("[[0,0,0],[1,0,1],[0,0,0]]")
    code, out, _ = run(capsys, "ajr", "--matrix", str(f), "--r", "2", "--j", "[0,1,0]")
    assert code == EXIT_OK and len(json.loads(out)["value"]["terms"]) == 2
    code, out, _ = run(capsys, "expand-monomial", "--matrix", str(f))
    assert code == EXIT_OK and json.loads(out)["pass"]
    code, out, _ = run(capsys, "stab-mul", "--n", "1", "--x", str(f), "--y", str(f))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "expand", "--matrix", "[[0,0,1],[0,1,0],[1,0,0]]")
    assert code == EXIT_OK and json.loads(out)["pass"]


def test_exit_codes(capsys):
    assert run(capsys, "verify", "formulas", "--n", "5", "--r", "1")[0] == EXIT_SCALE
    assert run(capsys, "enumerate", "xi", "--n", "1", "--r", "5")[0] == EXIT_SCALE
    assert run(capsys, "enumerate", "xi", "--n", "0", "--r", "1")[0] == EXIT_INPUT
    assert run(capsys, "mul", "--n", "1", "--r", "1", "--x", "{bad", "--y", "[]")[0] == EXIT_INPUT
    assert run(capsys, "ajr", "--matrix", "[[1,0,0],[0,1,0],[0,0,0]]", "--r", "1")[0] == EXIT_INPUT
    assert run(capsys, "verify", "duality", "--n", "1")[0] == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main(["no-such-verb"])
    assert exc.value.code == EXIT_INPUT


def test_unsafe_scale_flag(capsys):
    code, out, _ = run(capsys, "enumerate", "xi", "--n", "5", "--r", "0", "--unsafe-scale")
    assert code == EXIT_OK and json.loads(out)["count"] == 1


def test_failed_verification_exit_code(capsys, monkeypatch):
    import jschur.iquantum as iq
    monkeypatch.setattr(iq, "verify_relations", lambda n: {"n": n, "pass": False})
    assert run(capsys, "verify", "relations", "--n", "1")[0] == EXIT_FAIL


def test_dump_deterministic_across_processes(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"t{k}.json"
        env_cache = tmp_path / f"cache{k}"
        subprocess.run([sys.executable, "-m", "jschur.cli", "dump", "table", "--n", "1", "--r", "1",
                        "--basis", "normalized", "--out", str(path), "--cache-dir", str(env_cache), "--quiet"],
                       check=True, capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
