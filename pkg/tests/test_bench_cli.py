import csv
import io
import json

import pytest
from sympy import isprime

from rootfield import AlgoId, UsageError, is_prime
from rootfield.bench import CSV_FIELDS, BenchConfig, make_instances, run_bench, table, to_csv, to_json
from rootfield.cli import main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_config_validation():
    with pytest.raises(UsageError):
        BenchConfig(bits=32)
    with pytest.raises(UsageError):
        BenchConfig(trials=0)
    with pytest.raises(UsageError):
        BenchConfig(r_list=(1, 3))
    with pytest.raises(UsageError):
        BenchConfig(algos=("xx",))
    cfg = BenchConfig(algos=("hc", "new"))
    assert cfg.algos == (AlgoId.HC, AlgoId.NEW)
    assert cfg.r_list == (3, 4, 43, 101) and cfg.trials == 5 and cfg.bits == 512


def test_bench_small_sweep():
    cfg = BenchConfig(bits=64, r_list=(3, 4, 7), trials=2, seed=5)
    cells = run_bench(cfg)
    assert [(c.algo.value, c.r) for c in cells] == [
        (a, r) for r in (3, 4, 7) for a in ("HC", "WH", "NEW")
    ]
    status = {(c.algo, c.r): c.status for c in cells}
    assert status[AlgoId.HC, 4] == status[AlgoId.WH, 4] == "fail"
    assert status[AlgoId.NEW, 4] == "ok"
    for c in cells:
        if c.status == "ok":
            assert c.mean_time > 0 and c.mean_mults > 0 and len(c.times) == 2
        else:
            assert c.mean_time is None and c.mean_mults is None
    assert "fail" in table(cells)


def test_bench_determinism():
    cfg = BenchConfig(bits=64, r_list=(5,), trials=1, seed="abc")
    a = [c.mean_mults for c in run_bench(cfg)]
    b = [c.mean_mults for c in run_bench(cfg)]
    assert a == b
    i1 = make_instances(cfg, 5)
    i2 = make_instances(cfg, 5)
    assert [(p.field.p, p.c.value, w.b.value) for p, w in i1] == [
        (p.field.p, p.c.value, w.b.value) for p, w in i2
    ]


def test_bench_interrupted():
    cfg = BenchConfig(bits=256, r_list=(31,), algos=("hc", "new"), trials=2, time_budget=1e-4)
    cells = run_bench(cfg)
    assert {c.status for c in cells} == {"interrupted"}
    assert "Interr." in table(cells)


def test_csv_and_json_schema():
    cells = run_bench(BenchConfig(bits=64, r_list=(3, 4), trials=1))
    rows = list(csv.DictReader(io.StringIO(to_csv(cells))))
    assert to_csv(cells).splitlines()[0] == "algo,r,bits,trials,mean_time_s,mean_mults,status"
    hc4 = rows[3]
    assert (hc4["algo"], hc4["r"], hc4["mean_time_s"], hc4["status"]) == ("HC", "4", "", "fail")
    data = json.loads(to_json(cells))
    assert [tuple(d) for d in data] == [CSV_FIELDS] * len(cells)
    assert data[3]["mean_time_s"] is None


def test_cli_root():
    code, out = run_cli("root", "--p", "d", "--r", "3", "--c", "8", "--alg", "new", "--seed", "7", "--all")
    assert code == 0
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert int(kv["x"], 16) in (2, 5, 6)
    assert kv["roots"] == "2,5,6"
    assert int(kv["mults.total"]) > 0


def test_cli_root_json():
    code, out = run_cli("root", "--p", "d", "--r", "3", "--c", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and int(data["x"], 16) in (2, 5, 6)
    assert set(data["mults"]) >= {"witness", "accumulation", "exponentiation", "total"}


def test_cli_errors(capsys):
    assert run_cli("root", "--p", "d", "--r", "3", "--c", "2")[0] == 3
    assert "NON_RESIDUE" in capsys.readouterr().err
    assert run_cli("root", "--p", "d", "--r", "4", "--alg", "wh", "--c", "1")[0] == 4
    assert "NOT_APPLICABLE" in capsys.readouterr().err
    assert run_cli("root", "--p", "f", "--r", "2", "--c", "1")[0] == 2  # 15 not prime
    assert run_cli("root", "--p", "d", "--r", "5", "--c", "1")[0] == 2  # 13 != 1 mod 5
    assert run_cli("root", "--p", "zz", "--r", "3", "--c", "1")[0] == 2
    assert run_cli("bogus")[0] == 2


def test_cli_genprime():
    code, out = run_cli("genprime", "--bits", "64", "--r", "43", "--seed", "1")
    p = int(out.strip(), 16)
    assert code == 0 and p.bit_length() == 64 and p % 43 == 1 and isprime(p) and is_prime(p)
    assert run_cli("genprime", "--bits", "64", "--r", "43", "--seed", "1")[1] == out
    assert run_cli("genprime", "--bits", "8", "--r", "257")[0] == 7


def test_cli_seed_env(monkeypatch):
    monkeypatch.setenv("ROOTFIELD_SEED", "99")
    a = run_cli("genprime", "--bits", "64", "--r", "3")[1]
    b = run_cli("genprime", "--bits", "64", "--r", "3", "--seed", "99")[1]
    assert a == b


def test_cli_residue():
    assert run_cli("residue", "--p", "d", "--r", "3", "--c", "8") == (0, "true\n")
    assert run_cli("residue", "--p", "d", "--r", "3", "--c", "2") == (1, "false\n")
    assert run_cli("residue", "--p", "d", "--r", "3", "--c", "1") == (0, "true\n")


def test_cli_bench_csv():
    code, out = run_cli("bench", "--bits", "64", "--r-list", "3,4", "--trials", "1", "--quiet")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert {r["status"] for r in rows if r["r"] == "4" and r["algo"] != "NEW"} == {"fail"}


def test_cli_bench_json():
    code, out = run_cli(
        "bench", "--bits", "64", "--r-list", "5", "--algos", "wh,new", "--trials", "1",
        "--format", "json", "--quiet",
    )
    data = json.loads(out)
    assert code == 0 and [d["algo"] for d in data] == ["WH", "NEW"]
