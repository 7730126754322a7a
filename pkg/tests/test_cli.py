import io
import json
import subprocess
import sys

import pytest

from sullivan.cli import run
from sullivan.registry import UnknownKey, golden_data, golden_path, keys, lookup, parse_key


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_golden_files(n):
    assert json.loads(golden_path(n).read_text()) == golden_data(n)


def test_key_parsing():
    fam, params = parse_key("sections:n=2,d=3")
    assert fam.name == "sections" and params == {"n": 2, "d": 3}
    for bad in ("nope:n=2", "sections:n=2", "bu:n=x", "gr1c:n=1", "bu:d=2", "bu"):
        with pytest.raises(UnknownKey):
            parse_key(bad)
    assert lookup("gr1c-borel:n=3").key == "gr1c-borel:n=3"
    assert "gr2-thom:n=2" in keys(2) and "gr2-thom:n=1" not in keys(1)


def test_invariants_example():
    code, out, _ = cli("invariants", "--n", "2", "--d", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["h1TorsionOrder"] == 12 and data["orbitIso"] is True
    assert data["betti"] == {"0": 1, "3": 1, "5": 1, "8": 1}


def test_check_example():
    assert cli("check", "--model", "gr1c-borel:n=3") == (0, "d²=0: ok; chain maps: ok\n", "")


def test_check_failure_exit_code():
    code, out, _ = cli("check", "--model", "gr2-thom:n=2", "--gr2-dz-sign", "plus")
    assert code == 2
    assert "phi" in out and "z:" in out


def test_orbit_examples():
    assert cli("orbit", "--n", "2", "--d", "1", "--format", "text")[:2] == (
        0, "orbit map is trivial on rational cohomology (d=1)\n")
    code, out, _ = cli("orbit", "--n", "2", "--d", "3", "--format", "json")
    assert json.loads(out)["iso"] is True


def test_usage_errors():
    assert cli("model", "--model", "nope:n=1")[0] == 1
    assert cli("cohomology", "--model", "bu:n=2", "--window", "0:99")[0] == 1
    assert cli("invariants", "--n", "2")[0] == 1
    assert cli("frobnicate")[0] == 1
    assert cli("orbit", "--n", "2")[0] == 1


def test_text_and_json_outputs():
    code, out, _ = cli("model", "--model", "cpn:n=2")
    assert code == 0 and "d(y) = b^3" in out
    code, out, _ = cli("model", "--model", "cpn:n=2", "--format", "json")
    assert json.loads(out)["model"]["differential"]["y"] == [[1, 1, [["b", 3]]]]
    code, out, _ = cli("cohomology", "--n", "2", "--d", "3", "--window", "0:8")
    assert out.strip() == "H^0=1 H^1=0 H^2=0 H^3=1 H^4=0 H^5=1 H^6=0 H^7=0 H^8=1"
    code, out, _ = cli("sections", "--n", "2", "--d", "3", "--format", "json")
    assert json.loads(out)["component"] == json.loads(lookup("sections:n=2,d=3").algebra.to_json())


def test_cache_dir_gives_identical_output(tmp_path, monkeypatch):
    plain = cli("model", "--model", "gr1c-borel:n=2", "--format", "json")
    monkeypatch.setenv("RHT_CACHE_DIR", str(tmp_path))
    first = cli("model", "--model", "gr1c-borel:n=2", "--format", "json")
    second = cli("model", "--model", "gr1c-borel:n=2", "--format", "json")
    assert plain == first == second
    assert len(list(tmp_path.iterdir())) == 1


def test_deterministic_output():
    a = cli("sections", "--n", "3", "--d", "2", "--format", "json")
    b = cli("sections", "--n", "3", "--d", "2", "--format", "json")
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sullivan", "orbit", "--n", "2", "--d", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == "orbit map is trivial on rational cohomology (d=1)\n"
