import json

from latticeopt import cli
from latticeopt.instances import instance_from_json


def write_matrix(tmp_path, rows, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"rows": rows}))
    return str(path)


def test_verify_passes_and_is_deterministic(capsys):
    assert cli.run(["verify"]) == 0
    first = capsys.readouterr().out
    assert cli.run(["verify"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "0 failures" in first
    assert "FAIL" not in first


def test_gen_hs_round_trips(tmp_path):
    out = tmp_path / "inst.json"
    assert cli.run(["gen-hs", "--n", "3", "--seed", "5", "--scaled",
                    "--out", str(out)]) == 0
    inst = instance_from_json(out.read_text())
    assert inst.num_scenarios == 3
    again = tmp_path / "again.json"
    assert cli.run(["gen-hs", "--n", "3", "--seed", "5", "--scaled",
                    "--out", str(again)]) == 0
    assert out.read_text() == again.read_text()


def test_gen_snd_round_trips(tmp_path):
    out = tmp_path / "snd.json"
    assert cli.run(["gen-snd", "--n", "2", "--seed", "3",
                    "--out", str(out)]) == 0
    inst = instance_from_json(out.read_text())
    assert inst.first_stage_constraints is not None


def test_toric_identity_is_empty(tmp_path, capsys):
    path = write_matrix(tmp_path, [[1, 0], [0, 1]])
    assert cli.run(["toric", "--matrix", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["generators"] == []


def test_groebner_subcommand(tmp_path, capsys):
    path = write_matrix(tmp_path, [[1, 1, 1]])
    assert cli.run(["groebner", "--matrix", path, "--cost", "1,2,3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["cost"] == [1, 2, 3]
    assert sorted(tuple(e) for e in doc["elements"]) == [
        (-1, 0, 1), (-1, 1, 0)]


def test_graver_subcommand_and_cap(tmp_path, capsys):
    path = write_matrix(tmp_path, [[1, 2]])
    assert cli.run(["graver", "--matrix", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert sorted(tuple(e) for e in doc["elements"]) == [(-2, 1), (2, -1)]
    big = write_matrix(tmp_path, [[3, -5, 7, -11, 2]], name="big.json")
    assert cli.run(["graver", "--matrix", big, "--max-elements", "3"]) == 3


def test_opcost_kernel_oracle_identical_csv(tmp_path):
    inst = tmp_path / "inst.json"
    assert cli.run(["gen-hs", "--n", "2", "--seed", "7", "--scaled",
                    "--out", str(inst)]) == 0
    k_csv = tmp_path / "k.csv"
    o_csv = tmp_path / "o.csv"
    meta = tmp_path / "meta.json"
    assert cli.run(["opcost", "--instance", str(inst), "--method", "kernel",
                    "--out", str(k_csv), "--meta", str(meta)]) == 0
    assert cli.run(["opcost", "--instance", str(inst), "--method", "oracle",
                    "--var-bound", "24", "--out", str(o_csv)]) == 0
    assert k_csv.read_text() == o_csv.read_text()
    doc = json.loads(meta.read_text())
    assert doc["method"] == "kernel"
    assert doc["counters"]["toric_runs"] == 1


def test_opcost_decisions_file_and_q_only(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    assert cli.run(["gen-hs", "--n", "2", "--seed", "7", "--scaled",
                    "--out", str(inst)]) == 0
    dec = tmp_path / "dec.json"
    dec.write_text(json.dumps([[7, 0], [0, 4]]))
    assert cli.run(["opcost", "--instance", str(inst), "--decisions",
                    str(dec), "--q-only"]) == 0
    lines = capsys.readouterr().out.splitlines()
    # gamma.x stripped: row 0 loses 35*7, row 1 loses 40*4
    assert lines[1] == "0,%d,%d" % (356 - 245, 426 - 245)
    assert lines[2] == "1,%d,%d" % (462 - 160, 208 - 160)


def test_bench_emits_json_lines(capsys):
    assert cli.run(["bench", "--n-list", "2", "--seed", "7", "--scaled",
                    "--methods", "kernel,graver"]) == 0
    lines = [json.loads(line)
             for line in capsys.readouterr().out.splitlines() if line]
    assert len(lines) == 2
    by_method = {rec["method"]: rec for rec in lines}
    assert by_method["kernel"]["checksum"] == by_method["graver"]["checksum"]
    assert by_method["kernel"]["scenario_count"] == 2
    assert by_method["kernel"]["variable_count"] == 8
    assert by_method["kernel"]["basis_sizes"]["toric"] > 0
    assert by_method["graver"]["basis_sizes"]["graver"] > 0
    for rec in lines:
        assert all(t >= 0 for t in rec["timings_us"].values())


def test_bad_input_exit_codes(tmp_path, capsys):
    assert cli.run(["toric", "--matrix", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.run(["toric", "--matrix", str(bad)]) == 2
    capsys.readouterr()
    path = write_matrix(tmp_path, [[1, 1, 1]])
    assert cli.run(["groebner", "--matrix", path, "--cost", "1,-2,3"]) == 2
    capsys.readouterr()
    assert cli.run(["no-such-command"]) == 2
    capsys.readouterr()


def test_checksum_is_order_independent():
    class Grid:
        def __init__(self, values):
            self.values = values

    a = cli.matrix_checksum(Grid(((1, 2), (3, None))))
    b = cli.matrix_checksum(Grid(((1, 2), (3, None))))
    c = cli.matrix_checksum(Grid(((1, 2), (3, 4))))
    assert a == b != c
