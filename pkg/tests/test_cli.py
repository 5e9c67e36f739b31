import json
from pathlib import Path


from dbu.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_true_instance(capsys):
    code, out, err = run(capsys, "check", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    assert out.strip() == "TRUE"


def test_check_false_instance(capsys):
    code, out, err = run(capsys, "check", INSTANCES / "tqbf_forall_forall.json")
    assert code == 1
    assert out.strip() == "FALSE"


def test_check_trace_shows_bounded_world_counts(capsys):
    code, out, err = run(capsys, "check", "--trace", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("step 0: 5 worlds")
    assert "step 1: 9 worlds (bound 10)" in lines[1]
    assert "step 2: 16 worlds (bound 20)" in lines[2]
    assert lines[-1] == "TRUE"


def test_check_json_verdict(capsys):
    code, out, err = run(capsys, "check", "--json", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_check_missing_file_exits_2(capsys):
    code, out, err = run(capsys, "check", "/nonexistent/path.json")
    assert code == 2
    assert "error:" in err


def test_check_inapplicable_action_exits_2(capsys, tmp_path):
    doc = {
        "props": ["p"],
        "agents": ["a"],
        "initial": {
            "worlds": ["w"],
            "valuation": {},
            "relations": {"a": [["w", "w"]]},
            "designated": ["w"],
        },
        "actions": [
            {
                "events": ["e"],
                "relations": {"a": [["e", "e"]]},
                "pre": {"e": "p"},
                "post": {"e": {}},
                "designated": ["e"],
            }
        ],
        "query": "p",
    }
    path = tmp_path / "stuck.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "check", path)
    assert code == 2
    assert "action 0" in err


def test_params_output_and_note(capsys):
    code, out, err = run(capsys, "params", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    first = out.splitlines()[0]
    assert first == "a=3 c=10 e=2 f=22 o=4 p=1 u=2"
    assert "e=2 and u=2" in out


def test_params_json_has_ordered_fields(capsys):
    code, out, err = run(capsys, "params", "--json", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    params = json.loads(out)
    assert params == {"a": 3, "c": 10, "e": 2, "f": 22, "o": 4, "p": 1, "u": 2}
    assert params["o"] <= params["f"]


def test_params_threshold_flag(capsys):
    code, out, err = run(
        capsys, "params", "--fpt-threshold", "2", INSTANCES / "tqbf_exists_forall.json"
    )
    assert code == 0
    assert "note:" not in out


def test_gen_tqbf_matches_bundled_file(capsys, tmp_path):
    out_path = tmp_path / "gen.json"
    code, out, err = run(capsys, "gen-tqbf", "E x1 A x2 . (x1 | x2)", out_path)
    assert code == 0
    assert out_path.read_bytes() == (INSTANCES / "tqbf_exists_forall.json").read_bytes()


def test_gen_tqbf_deterministic(capsys, tmp_path):
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    run(capsys, "gen-tqbf", "A x1 E x2 . (~x1 | x2)", first)
    run(capsys, "gen-tqbf", "A x1 E x2 . (~x1 | x2)", second)
    assert first.read_bytes() == second.read_bytes()


def test_gen_tqbf_bad_syntax_exits_2(capsys, tmp_path):
    code, out, err = run(capsys, "gen-tqbf", "E x1 x1", tmp_path / "x.json")
    assert code == 2


def test_gen_tqbf_single_variable_shape(capsys, tmp_path):
    out_path = tmp_path / "m1.json"
    code, out, err = run(capsys, "gen-tqbf", "E x1 . x1", out_path)
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["initial"]["worlds"]) == 3
    assert len(doc["actions"]) == 1
    check_code, check_out, _ = run(capsys, "check", out_path)
    assert check_code == 0 and check_out.strip() == "TRUE"


def test_harness_command_writes_report(capsys, tmp_path):
    report = tmp_path / "report.jsonl"
    code, out, err = run(capsys, "harness", "1", report)
    assert code == 0
    assert "14 instances, 0 disagreements" in out
    lines = report.read_text().splitlines()
    assert len(lines) == 14
    record = json.loads(lines[0])
    assert set(record) == {"qbf", "oracle", "dbu", "params", "worlds_final", "bound", "agree"}
    assert record["agree"] is True


def test_harness_random_requires_seed(capsys, tmp_path):
    code, out, err = run(capsys, "harness", "2", tmp_path / "r.jsonl", "--random", "5")
    assert code == 2


def test_harness_random_mode(capsys, tmp_path):
    report = tmp_path / "r.jsonl"
    code, out, err = run(
        capsys, "harness", "4", report, "--random", "10", "--seed", "3", "--max-clauses", "4"
    )
    assert code == 0
    assert "10 instances, 0 disagreements" in out


def test_validate_ok_s5(capsys):
    code, out, err = run(capsys, "validate", INSTANCES / "tqbf_exists_forall.json")
    assert code == 0
    assert "OK; frame: S5" in out


def test_validate_kd45_instance(capsys):
    # sally's event relation is serial+transitive+Euclidean but not reflexive
    code, out, err = run(capsys, "validate", INSTANCES / "sally_anne.json")
    assert code == 0
    assert "OK; frame: KD45" in out
    assert "frame[action 0]: KD45" in out


def test_validate_reports_violations(capsys, tmp_path):
    doc = {
        "props": ["p"],
        "agents": ["a"],
        "initial": {
            "worlds": ["w"],
            "valuation": {},
            "relations": {"a": [["w", "ghost"]]},
            "designated": ["w"],
        },
        "actions": [],
        "query": "p",
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "validate", path)
    assert code == 1
    assert "violation:" in out and "dangling" in out


def test_validate_json_mode(capsys):
    code, out, err = run(capsys, "validate", "--json", INSTANCES / "identity_smoke.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["violations"] == []
    assert doc["frame"] in ("K", "KD45", "S5")
