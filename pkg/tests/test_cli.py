import json

import pytest

from symcut.cli import main
from symcut.instances import (
    all_lebesgue,
    dump_json,
    even_paz_counterexample,
    generate,
    instance_from_json,
    instance_to_json,
    load_instance,
)
from symcut.errors import SchemaError
from symcut.protocols import Division, sym_prop


@pytest.fixture
def files(tmp_path):
    def write(name, vs):
        path = tmp_path / name
        dump_json(instance_to_json(vs), path)
        return str(path)

    return write


def test_divide_symprop(files, tmp_path, capsys):
    out = tmp_path / "d.json"
    assert main(["divide", "-a", "symprop", "-i", files("leb3.json", all_lebesgue(3)), "-o", str(out)]) == 0
    d = json.loads(out.read_text())
    assert [p["value"] for p in d["pieces"]] == ["1/3"] * 3
    assert set(d["ledger"]) == {"eval", "cut"}


def test_divide_to_stdout(files, capsys):
    assert main(["divide", "-a", "even-paz", "-i", files("cx.json", even_paz_counterexample())]) == 0
    vals = [p["value"] for p in json.loads(capsys.readouterr().out)["pieces"]]
    assert "1/4" in vals and "49/100" in vals


def test_divide_exit_codes(files, tmp_path):
    five = files("five.json", generate(5, 2, seed=1))
    assert main(["divide", "-a", "sym-envy-free", "-i", five]) == 3
    assert main(["divide", "-a", "symprop", "-i", files("l5.json", all_lebesgue(5)), "--max-allocations", "2"]) == 4
    bad = tmp_path / "bad.json"
    bad.write_text('{"players": [{"name": "p1", "density": [{"from": "0", "to": "1", "weight": "0.5"}]}]}')
    assert main(["divide", "-a", "kuhn", "-i", str(bad)]) == 2
    bad.write_text("not json")
    assert main(["divide", "-a", "kuhn", "-i", str(bad)]) == 2
    assert main(["divide", "-a", "kuhn", "-i", str(tmp_path / "missing.json")]) == 2


def test_verify(files, tmp_path, capsys):
    inst = files("cx.json", even_paz_counterexample())
    d = tmp_path / "d.json"
    main(["divide", "-a", "symprop", "-i", inst, "-o", str(d)])
    assert main(["verify", "-i", inst, "-d", str(d), "-p", "proportional,aristotelian"]) == 0
    main(["divide", "-a", "even-paz", "-i", inst, "-o", str(d)])
    rep = tmp_path / "r.json"
    capsys.readouterr()
    assert main(["verify", "-i", inst, "-d", str(d), "-p", "aristotelian", "-o", str(rep)]) == 1
    assert '["p1", "p4"]' in capsys.readouterr().out
    assert json.loads(rep.read_text())["verdicts"][0]["witness"]["pair"] == ["p1", "p4"]
    assert main(["verify", "-i", inst, "-d", str(d), "-p", "bogus"]) == 2


def test_verify_player_mismatch(files, tmp_path):
    d = tmp_path / "d.json"
    main(["divide", "-a", "kuhn", "-i", files("a.json", all_lebesgue(3)), "-o", str(d)])
    assert main(["verify", "-i", files("b.json", all_lebesgue(2)), "-d", str(d)]) == 2


def test_sweep(files, capsys, tmp_path):
    assert main(["sweep", "-a", "symprop", "-i", files("r.json", generate(3, 3, seed=8))]) == 0
    out = capsys.readouterr().out
    assert "symmetric: true" in out and len(out.strip().splitlines()) == 8
    rep = tmp_path / "s.json"
    assert main(["sweep", "-a", "even-paz", "-i", files("cx.json", even_paz_counterexample()), "-o", str(rep), "-j", "2"]) == 0
    assert "symmetric: false" in capsys.readouterr().out
    assert json.loads(rep.read_text())["symmetric"] is False
    assert main(["sweep", "-a", "kuhn", "-i", files("one.json", all_lebesgue(1))]) == 0
    out = capsys.readouterr().out
    assert "symmetric: true" in out and len(out.strip().splitlines()) == 3
    assert main(["sweep", "-a", "kuhn", "-i", files("big.json", all_lebesgue(8))]) == 3


def test_demo(capsys):
    assert main(["demo", "even-paz-not-aristotelian"]) == 0
    assert "49/100" in capsys.readouterr().out
    assert main(["demo", "symprop-all-lebesgue-S-count", "--n", "4"]) == 0
    assert "|S| = 4! = 24" in capsys.readouterr().out


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "-n", "4", "-k", "3", "--seed", "42", "-o", str(a)]) == 0
    assert main(["gen", "-n", "4", "-k", "3", "--seed", "42", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["gen", "-n", "4", "-k", "3", "--seed", "42"]) == 0
    assert capsys.readouterr().out.encode() == a.read_bytes()


def test_gen_duplicates(tmp_path):
    path = tmp_path / "dup.json"
    main(["gen", "-n", "4", "-k", "3", "--seed", "1", "--duplicates", "2", "-o", str(path)])
    vs = load_instance(path)
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4) if vs[i] == vs[j]]
    assert len(pairs) == 1
    assert main(["gen", "-n", "2", "-k", "3", "--duplicates", "3"]) == 2


@pytest.mark.parametrize("seed", range(10))
def test_generated_masses_reintegrate_to_one(seed):
    for v in generate(5, 4, seed):
        assert sum((hi - lo) * d for lo, hi, d in v.segments) == 1


def test_instance_round_trip():
    vs = generate(4, 3, seed=3, duplicates=2)
    back = instance_from_json(json.loads(json.dumps(instance_to_json(vs))))
    assert back == vs and [v.name for v in back] == [v.name for v in vs]


def test_division_round_trip_exact():
    vs = generate(3, 4, seed=6)
    d = sym_prop(vs)
    back = Division.from_json(json.loads(json.dumps(d.to_json())))
    assert back.values == d.values and back.pieces == d.pieces


def test_instance_schema_errors():
    with pytest.raises(SchemaError):
        instance_from_json({"players": []})
    with pytest.raises(SchemaError):
        instance_from_json([])
    dup = instance_to_json([v.renamed("x") for v in all_lebesgue(2)])
    with pytest.raises(SchemaError):
        instance_from_json(dup)
