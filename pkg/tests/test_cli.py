import json

from cyclomul.cli import main
from cyclomul.trace import RunReport, Trace


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mul_int_examples(capsys):
    assert run(capsys, "mul-int", "--n", "8", "--u", "ff", "--v", "01")[:2] == (0, "00\n")
    assert run(capsys, "mul-int", "--n", "8", "--u", "02", "--v", "03")[:2] == (0, "06\n")
    code, out, _ = run(capsys, "mul-int", "--n", "8", "--u", "02", "10", "--v", "03")
    assert out.split() == ["06", "30"]


def test_mul_int_errors(capsys):
    assert run(capsys, "mul-int", "--n", "8", "--u", "zz", "--v", "01")[0] == 2
    assert run(capsys, "mul-int", "--n", "8", "--u", "1ff", "--v", "01")[0] == 2
    assert run(capsys, "mul-int", "--n", "8", "--u", "1", "--v", "01", "--set", "nope=1")[0] == 2
    assert run(capsys, "mul-int", "--n", "8")[0] == 2


def test_mul_int_json_round_trip(capsys):
    n = 4096
    u, v = "3" * 1000, "5" * 1000
    code, out, _ = run(capsys, "mul-int", "--n", str(n), "--u", u, "--v", v, "--force-pipeline", "--json")
    assert code == 0
    report = RunReport.from_json(out)
    assert RunReport.from_json(report.to_json()) == report
    assert int(report.result[0], 16) == int(u, 16) * int(v, 16) % (2**n - 1)
    trace = Trace.from_list(report.trace)
    for rec in trace.records:
        parent = trace.parent_of(rec)
        if parent is not None and rec.kind == parent.kind == "int":
            assert rec.depth == parent.depth + 1
    assert report.profile["name"] == "desk"


def test_find_admissible(capsys):
    code, out, _ = run(capsys, "find-admissible", "--n", "3000", "--p", "43", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["principal"] and 43 not in rep["q"] and 3000 < rep["N"]
    first = json.loads(run(capsys, "find-admissible", "--n", "640", "--p", "3", "--json")[1])
    q0 = str(first["q"][0])
    code, out, _ = run(capsys, "find-admissible", "--n", "640", "--p", q0, "--set", "require_n_gt_p2=0", "--json")
    assert code == 0 and first["q"][0] not in json.loads(out)["q"]
    assert run(capsys, "find-admissible", "--n", "20", "--p", "3")[0] == 1
    assert run(capsys, "find-admissible", "--n", "3000", "--p", "44")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper-examples")
    assert code == 0 and "FAIL" not in out
    code, first, _ = run(capsys, "verify", "--suite", "properties", "--seed", "42")
    assert code == 0
    assert run(capsys, "verify", "--suite", "properties", "--seed", "42")[1] == first
    assert run(capsys, "verify", "--suite", "")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "4096", "--json")
    assert code == 0 and json.loads(out)[0]["correct"]


def test_usage(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "--threads", "0", "verify")[0] == 2
