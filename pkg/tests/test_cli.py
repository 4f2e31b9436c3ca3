import json
import subprocess
import sys

import pytest

from kurindex.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main, run


def js(argv):
    code, rep, out = run(["--json"] + argv)
    return code, json.loads(out) if code != EXIT_INPUT else out


def test_dim_examples():
    code, out = js(["dim", "bm?m=4&r=2"])
    assert code == EXIT_OK and out["result"]["value"] == 3 and out["provenance"] == ["exact-dim"]
    assert len(out["result"]["realizer"]) == 3
    code, out = js(["dim", "chain?n=5"])
    assert out["result"]["value"] == 1


def test_cyclic_input_is_parse_error(tmp_path, capsys):
    f = tmp_path / "cyc.txt"
    f.write_text("n=3\n0<1\n1<2\n2<0\n")
    assert main(["dim", str(f)]) == EXIT_INPUT
    assert "cycle" in capsys.readouterr().err


def test_kur_examples():
    assert js(["kur", "bm?m=4&r=2"])[1]["result"]["lo"] == 3
    out = js(["kur", "antichain?n=3"])[1]["result"]
    assert (out["lo"], out["hi"]) == (0, 0)
    assert js(["kur", "bm?m=6&r=4"])[1]["result"]["lo"] == 5


def test_relations_and_table():
    code, out = js(["relations", "m=257", "r=4"])
    assert out["result"][0]["aleph"] == "(aleph_109, 4, aleph_0) -> 257"
    assert out["result"][0]["provenance"] == "furedi-kahn"
    code, out = js(["table-e", "r=4", "nmax=215"])
    assert [(row["n"], row["E"]) for row in out["result"]][-1] == (215, 65536)
    code, rep, text = run(["table-e", "r=4", "nmax=215"])
    assert text.splitlines()[1].startswith("E(n,4)")


def test_estimate_commands():
    assert js(["fk", "m=257", "r=4"])[1]["result"]["value"] == 110
    assert js(["dushnik", "m=12", "k=6"])[1]["result"]["value"] == 10
    out = js(["spencer", "n=172", "r=4"])[1]["result"]
    assert out["E"] == 256 and out["relation"]["aleph"] == "(aleph_171, 4, aleph_0) -> 256"
    assert js(["cube", "m=4", "r=2"])[1]["result"]["size"] == 12
    assert js(["cube", "m=5", "levels=1,3"])[1]["result"]["size"] == 15
    assert js(["width", "powerset?n=4"])[1]["result"]["value"] == 6
    assert js(["breadth", "powerset?n=4"])[1]["result"]["value"] == 4


def test_freeset_commands():
    code, out = js(["freeset", "cyclic?N=3&r=1", "m=2"])
    assert code == EXIT_OK and out["result"]["free_set"] is None and out["provenance"] == ["exhaustive"]
    assert js(["freeset", "empty?N=5&r=2", "m=5"])[1]["result"]["free_set"] == [0, 1, 2, 3, 4]
    assert js(["config-p", "empty?N=6&r=2"])[1]["result"] == {"xi": [0, 1, 2], "eta": [3, 4, 5]}
    assert js(["config-q", "total?N=6&r=2"])[1]["result"] is None
    out = js(["leadsto", "bm?m=3&r=1", "empty?N=6&r=3"])[1]["result"]
    assert out["poset_map"] is not None and out["join_irreducible_map"] is not None


def test_verify():
    code, out = js(["verify", "dim-eq-suitable", "m=3", "r=2"])
    assert code == EXIT_OK and out["status"] == "ok"
    code, rep, text = run(["verify", "dim-transfer", "m=4", "r=2"])
    assert code == EXIT_OK and text.endswith("PASS")
    assert js(["verify", "bound-chain", "source=powerset?n=3"])[0] == EXIT_OK
    assert js(["verify", "nonsense"])[0] == EXIT_INPUT


def test_verify_failure_exit_code(monkeypatch):
    from kurindex import cli
    from kurindex.dimension import SuitableReport

    monkeypatch.setattr(cli, "check_dim_equals_suitable", lambda m, r, b: SuitableReport(m, r, 3, 4))
    assert run(["verify", "dim-eq-suitable", "m=3", "r=2"])[0] == EXIT_FAIL


def test_budget_exit_code_keeps_partial_result():
    code, out = js(["--nodes", "3", "dim", "bm?m=5&r=3"])
    assert code == EXIT_BUDGET and out["status"] == "timeout"
    lo, hi = out["result"]["lower"], out["result"]["upper"]
    assert lo <= 4 <= hi and len(out["result"]["realizer"]) == hi
    code, out = js(["freeset", "cyclic?N=20&r=1", "m=11", "--nodes", "500"])
    assert code == EXIT_BUDGET


def test_bad_parameters():
    assert run(["table-e", "r=4"])[0] == EXIT_INPUT
    assert run(["table-e", "r4", "nmax=3"])[0] == EXIT_INPUT
    assert run(["fk", "m=2", "r=5"])[0] == EXIT_INPUT
    with pytest.raises(SystemExit):
        run(["bogus"])


def test_json_output_is_stable():
    a = run(["--json", "relations"])[2]
    b = run(["--json", "relations"])[2]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kurindex", "fk", "m=257", "r=4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "110" in proc.stdout
