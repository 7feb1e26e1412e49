import json
import re

import pytest

from ling2tuple.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def bac_fcl(data_dir):
    return data_dir / "bac_pairs.fcl"


def test_partition_json(run, bac_fcl):
    code, out, _ = run("partition", "--fcl", bac_fcl, "--var", "BloodAlcoholConcentration")
    assert code == 0
    assert '"epsilon": 0.2' in out
    data = json.loads(out)
    assert data["gap_levels"] == [3, 5, 5, 1]
    assert data["terms"][3]["downside"] == {"level": 1, "index": 1, "alpha_abs": -0.07, "alpha_norm": -0.233333333333}


def test_partition_csv(run, bac_fcl):
    code, out, _ = run("partition", "--fcl", bac_fcl, "--format", "csv", "--samples", 4)
    assert code == 0
    header, *rows = out.strip().splitlines()
    assert header.split(",") == ["u", "NoAlcohol", "YoungLegalLimit", "Intermediate", "LegalLimit", "RiskOfDeath"]
    assert len(rows) == 4
    assert all(len(r.split(",")) == 6 for r in rows)


def test_partition_svg(run, bac_fcl, tmp_path):
    target = tmp_path / "bac.svg"
    code, out, _ = run("partition", "--fcl", bac_fcl, "--format", "svg", "--out", target)
    assert code == 0 and out == ""
    svg = target.read_text()
    assert svg.startswith("<svg")
    assert len(re.findall(r"<polyline ", svg)) == 8
    assert len(re.findall(r'class="upside"', svg)) == 4
    assert len(re.findall(r'class="axis"', svg)) == 2


def test_partition_errors(run, data_dir, tmp_path):
    code, _, err = run("partition", "--fcl", tmp_path / "missing.fcl")
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.fcl"
    bad.write_text("VAR_INPUT\n  x : LING\nEND_VAR\n")
    code, _, err = run("partition", "--fcl", bad)
    assert code == 1
    assert f"{bad}:3:1: error:" in err
    code, _, err = run("partition", "--fcl", data_dir / "bac_density.fcl")
    assert code == 2 and "not-supported" in err
    unordered = tmp_path / "u.fcl"
    unordered.write_text("VAR_INPUT x : LING; END_VAR FUZZIFY x TERM S := ling (a, 1) (b, 0); END_FUZZIFY")
    code, _, err = run("partition", "--fcl", unordered)
    assert code == 2 and "unordered-input" in err
    code, _, _ = run("partition", "--fcl", data_dir / "bac_pairs.fcl", "--var", "Speed")
    assert code == 1
    code, _, _ = run("partition", "--fcl", data_dir / "bac_pairs.fcl", "--samples", 1)
    assert code == 1


def test_aggregate_add(run, bac_fcl):
    code, out, _ = run("aggregate", "--fcl", bac_fcl, "--op", "add", "YoungLegalLimit", "LegalLimit")
    assert code == 0
    data = json.loads(out)
    assert data["beta"] == 0.13
    assert data["lh_tuple"] == {"level": 5, "labels": 33, "index": 14, "alpha_abs": -0.00125, "alpha_norm": -0.00416667}
    assert data["value"] == {"term": "LegalLimit", "residual": 0.05}


def test_aggregate_mean_and_wavg(run, bac_fcl):
    code, out, _ = run("aggregate", "--fcl", bac_fcl, "--op", "mean", "LegalLimit", "LegalLimit")
    assert code == 0 and json.loads(out)["value"] == {"term": "LegalLimit", "residual": 0}
    code, out, _ = run("aggregate", "--fcl", bac_fcl, "--op", "mean", "Intermediate+0.002", "Intermediate+0.002")
    assert json.loads(out)["value"] == {"term": "Intermediate", "residual": 0.002}
    code, out, _ = run(
        "aggregate", "--fcl", bac_fcl, "--op", "wavg", "--op-weights", "0.25,0.75", "YoungLegalLimit", "LegalLimit"
    )
    assert code == 0
    data = json.loads(out)
    assert data["beta"] == 0.0725 and data["value"] == {"term": "Intermediate", "residual": 0.0075}


def test_aggregate_errors(run, bac_fcl):
    assert run("aggregate", "--fcl", bac_fcl, "--op", "add", "LegalLimit", "RiskOfDeath")[0] == 2
    assert run("aggregate", "--fcl", bac_fcl, "Tipsy")[0] == 2
    assert run("aggregate", "--fcl", bac_fcl, "--op", "add", "LegalLimit")[0] == 1
    assert run("aggregate", "--fcl", bac_fcl, "Legal Limit")[0] == 1
    assert run("aggregate", "--fcl", bac_fcl, "LegalLimit+x")[0] == 1
    assert run("aggregate", "--fcl", bac_fcl, "--op", "wavg", "LegalLimit")[0] == 1


def test_membership(run, bac_fcl):
    code, out, _ = run("membership", "--fcl", bac_fcl, "--u", 0)
    assert code == 0 and out.strip() == '[{"term":"NoAlcohol","degree":1}]'
    code, out, _ = run("membership", "--fcl", bac_fcl, "--u", 0.19)
    entries = json.loads(out)
    assert {e["term"] for e in entries} == {"LegalLimit", "RiskOfDeath"}
    assert all(abs(e["degree"] - 0.2667) <= 1e-4 for e in entries)
    assert run("membership", "--fcl", bac_fcl, "--u", 0.5)[0] == 2


def test_flatten(run, data_dir, tmp_path):
    code, out, _ = run("flatten", data_dir / "seven_node_tree.json")
    assert code == 0
    rows = json.loads(out)
    assert [(r["name"], r["labels"], r["index"]) for r in rows] == [
        ("a", 3, 1), ("b", 5, 1), ("c", 5, 3), ("d", 9, 5), ("e", 9, 7), ("f", 17, 9), ("g", 17, 11),
    ]
    single = tmp_path / "one.json"
    single.write_text('{"name": "root", "left": null, "right": null}')
    code, out, _ = run("flatten", single, "--format", "csv")
    assert out.strip().splitlines()[1] == "root,1,3,1,0.5"
    one_child = tmp_path / "bad.json"
    one_child.write_text('{"name": "a", "left": {"name": "b"}, "right": null}')
    assert run("flatten", one_child)[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"name": ')
    assert run("flatten", broken)[0] == 1
    code, out, _ = run("flatten", data_dir / "seven_node_tree.json", "--format", "svg")
    assert code == 0 and out.count("<polyline ") == 7


def test_stretch(run, data_dir, tmp_path):
    code, out, _ = run("stretch", data_dir / "grades.txt", "--precision", 12)
    assert code == 0
    assert [e["v"] for e in json.loads(out)] == pytest.approx([0, 1 / 15, 9 / 15, 11 / 15, 1], abs=1e-11)
    uniform = tmp_path / "u.txt"
    uniform.write_text("a, Far\nb, Far\n(c, Far)\nd N/A\n")
    code, out, _ = run("stretch", uniform, "--format", "csv")
    assert out.strip().splitlines()[1:] == ["a,0", "b,0.333333", "c,0.666667", "d,1"]
    na_first = tmp_path / "na.txt"
    na_first.write_text("a N/A\nb Far\nc N/A\n")
    assert run("stretch", na_first)[0] == 2
    weights = tmp_path / "w.json"
    weights.write_text('{"Far": 1, "VeryStuck": 3}')
    code, out, _ = run("stretch", data_dir / "grades.txt", "--weights", weights)
    assert code == 2  # Stuck has no weight in this table
    code, out, _ = run("stretch", data_dir / "grades.txt", "--partition")
    assert code == 0 and "epsilon" in json.loads(out)


def test_outputs_are_byte_stable(run, data_dir):
    fcl = data_dir / "bac_pairs.fcl"
    commands = [
        ("partition", "--fcl", fcl),
        ("aggregate", "--fcl", fcl, "--op", "add", "YoungLegalLimit", "LegalLimit"),
        ("membership", "--fcl", fcl, "--u", 0.19),
        ("flatten", data_dir / "seven_node_tree.json"),
        ("stretch", data_dir / "grades.txt"),
    ]
    for cmd in commands:
        assert run(*cmd) == run(*cmd)
