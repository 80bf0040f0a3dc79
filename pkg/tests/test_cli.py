import io
import json
import subprocess
import sys
from pathlib import Path


import mctx
from mctx.cli import main

TCP = Path(mctx.__file__).parent / "data" / "tcp.json"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, data, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def tcp():
    return json.loads(TCP.read_text())


def test_check_tcp():
    code, out, _ = run("check", str(TCP))
    assert code == 0
    assert out.splitlines() == [
        "client: ok  !Msg < ?Msg < !Msg",
        "server: ok  ?Msg < !Msg < ?Msg",
        "channels: ok  3 stage(s)",
        "refactoring syn-prj: equivalent (canonical)",
    ]


def test_eval_noise_free():
    code, out, _ = run("eval", str(TCP), "--noise", "0")
    assert code == 0
    assert out == "CLI:11 SRV:21  1/1\n"


def test_eval_noisy_text_and_json():
    code, out, _ = run("eval", str(TCP), "--noise", "1/10")
    assert code == 0
    assert out.splitlines() == ["CLI:0  SRV:0   19/100", "CLI:11 SRV:0   81/1000", "CLI:11 SRV:21  729/1000"]
    code, out, _ = run("eval", str(TCP), "--noise", "1/10", "--json")
    payload = json.loads(out)
    assert payload["noise"] == "1/10" and payload["total"] == "1/1"
    assert payload["outcomes"][-1] == {"state": ["CLI:11", "SRV:21"], "probability": "729/1000"}


def test_eval_total_failure_and_initial_state():
    assert run("eval", str(TCP), "--noise", "1")[1] == "CLI:0 SRV:0  1/1\n"
    code, out, _ = run("eval", str(TCP), "--initial", "client=11,server=2")
    assert code == 0 and out == "CLI:11 SRV:21  1/1\n"
    assert run("eval", str(TCP), "--initial", "nobody=1")[0] == 3
    assert run("eval", str(TCP), "--initial", "client=7")[0] == 3


def test_shipped_name_resolves(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run("eval", "tcp.json")[0] == 0


def test_compose_out(tmp_path):
    target = tmp_path / "closed.json"
    code, out, _ = run("compose", str(TCP), "--noise", "1/10", "--out", str(target))
    assert code == 0 and out == f"wrote {target}\n"
    data = json.loads(target.read_text())
    assert data["schema"] == "mctx/1" and data["theory"] == "finstoch"
    assert len(data["morphism"]["matrix"]) == 9
    code, out, _ = run("compose", str(TCP))
    assert json.loads(out) == json.loads(run("compose", str(TCP))[1])


def test_no_parties_is_a_parse_error(tmp_path):
    data = tcp()
    data["parties"] = []
    code, _, err = run("check", write(tmp_path, data))
    assert code == 3 and "no parties" in err


def test_bad_json_is_a_parse_error(tmp_path):
    code, _, err = run("check", write(tmp_path, "{not json"))
    assert code == 3 and err.startswith("parse error:")
    assert run("check", str(tmp_path / "missing.json"))[0] == 3


def test_corrupted_server_is_a_type_error(tmp_path):
    data = tcp()
    data["parties"][1]["steps"][0] = "SYNACK"
    code, _, err = run("check", write(tmp_path, data))
    assert code == 1
    assert err.startswith("type error (stage 1):")


def test_refactoring_failure_exits_2(tmp_path):
    data = tcp()
    table = list(data["morphisms"]["ACK_V"]["table"])
    table[1 * 27 + 7] = 8
    data["morphisms"]["ACK_BAD"] = dict(data["morphisms"]["ACK_V"], table=table)
    data["refactorings"][0]["steps"] = ["SYN_V", "ID_CLIENT_ACK", "ACK_BAD", "ID_CLIENT"]
    code, out, _ = run("check", write(tmp_path, data))
    assert code == 2
    assert "refactoring syn-prj: NOT equivalent (canonical)" in out


def test_usage_errors_are_parse_errors():
    assert run()[0] == 3
    assert run("bogus")[0] == 3
    assert run("laws", "--cases", "-1")[0] == 3
    assert run("laws", "--theory", "sets")[0] == 3


def test_laws_command():
    code, out, _ = run("laws", "--group", "counit", "--cases", "4")
    assert code == 0
    assert out.splitlines()[-1] == "summary: 1 passed, 0 failed"
    code, out, _ = run("laws", "--group", "splice", "--cases", "0", "--json")
    assert code == 0 and json.loads(out)["warnings"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mctx", "eval", str(TCP)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "CLI:11 SRV:21  1/1\n"
