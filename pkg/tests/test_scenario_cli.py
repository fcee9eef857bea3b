import json
from fractions import Fraction as F

import pytest

from kstab.cli import main
from kstab.presets import BadParameters, beta_3n4, preset_dict, run_preset, sweep
from kstab.scenario import ScenarioError, dumps, format_text, load_scenario, locate_line, parse_scenario


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def walk(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from walk(v)
    else:
        yield obj


def test_export_and_rerun_is_byte_identical(tmp_path, capsys):
    path = tmp_path / "s9.json"
    assert cli(capsys, "export-preset", "s9", "-o", str(path))[0] == 0
    code, from_file, _ = cli(capsys, "report", str(path), "--json")
    assert code == 0
    code, from_preset, _ = cli(capsys, "report", "--preset", "s9", "--json")
    assert code == 0
    assert from_file == from_preset
    assert cli(capsys, "report", str(path), "--json")[1] == from_file
    rep = json.loads(from_file)
    assert rep["beta"]["beta"] == "-1/18"
    assert rep["verdict"] == "NotKSemistable"


def test_reports_serialize_rationals_as_strings():
    for args in [("s9",), ("s27",), ("fam-3n4", 2), ("fam-11nm", 1, 3)]:
        rep = run_preset(*args)
        assert not any(isinstance(x, float) for x in walk(rep))
        text = dumps(rep)
        assert dumps(json.loads(text)) == text


def test_inconsistent_gram_exits_2(tmp_path, capsys):
    data = preset_dict("s9")
    data["curves"]["gram"][0][0] = str(F(data["curves"]["gram"][0][0]) + 1)
    path = tmp_path / "bad.json"
    path.write_text(dumps(data))
    code, out, err = cli(capsys, "report", str(path))
    assert code == 2 and out == ""
    assert "antican_square" in err
    line = int(err.split(":")[1])
    assert '"gram"' in path.read_text().splitlines()[line - 1]


def test_assert_unstable(capsys):
    assert cli(capsys, "report", "--preset", "s9", "--assert-unstable")[0] == 0
    assert cli(capsys, "report", "--preset", "fam-6n9", "--n", "0", "--assert-unstable")[0] == 3
    assert cli(capsys, "report", "--preset", "fam-6n9", "--n", "0")[0] == 0
    assert cli(capsys, "report", "--preset", "fam-11nm", "--n", "2", "--m", "2", "--allow-boundary", "--assert-unstable")[0] == 3


def test_bad_parameters(capsys):
    code, _, err = cli(capsys, "report", "--preset", "fam-11nm", "--n", "3", "--m", "1")
    assert code == 2 and "n < m" in err
    assert cli(capsys, "report", "--preset", "fam-11nm", "--n", "2", "--m", "2")[0] == 2
    assert cli(capsys, "report", "--preset", "fam-3n4")[0] == 2
    assert cli(capsys, "report", "--preset", "fam-3n4", "--n", "-1")[0] == 2
    assert cli(capsys, "report")[0] == 2
    with pytest.raises(BadParameters):
        preset_dict("nope")


@pytest.mark.parametrize("mutate, path", [
    (lambda d: d["curves"]["gram"][0].__setitem__(0, 0.5), "curves.gram[0][0]"),
    (lambda d: d["curves"]["gram"][0].__setitem__(0, "0.5"), "curves.gram[0][0]"),
    (lambda d: d["blowup"].__setitem__("point", "p_q"), "blowup.point"),
    (lambda d: d["surface"].__setitem__("weights", [1, 3, 4]), "surface.weights"),
    (lambda d: d["surface"].__setitem__("degree", 20), "surface"),
    (lambda d: d.pop("blowup"), "blowup"),
    (lambda d: d["blowup"]["germs"].__setitem__("L1", None), "blowup"),
    (lambda d: d["blowup"].__setitem__("weights", [1, 2]), "blowup"),
    (lambda d: d["lct"]["components"][0].__setitem__("mult", "-1"), "lct.components[0].mult"),
    (lambda d: d.__setitem__("mode", "gamma"), "mode"),
])
def test_schema_errors(tmp_path, capsys, mutate, path):
    data = preset_dict("s9")
    mutate(data)
    with pytest.raises(ScenarioError) as exc:
        from kstab.scenario import compute

        compute(parse_scenario(data))
    assert exc.value.path == path
    f = tmp_path / "x.json"
    f.write_text(json.dumps(data, indent=2))
    code, out, err = cli(capsys, "report", str(f))
    assert code == 2 and out == "" and "error:" in err


def test_invalid_json(tmp_path, capsys):
    f = tmp_path / "broken.json"
    f.write_text('{"name": "x",\n "surface": }')
    code, _, err = cli(capsys, "report", str(f))
    assert code == 2 and "invalid JSON" in err


def test_locate_line():
    text = dumps(preset_dict("s9"))
    line = locate_line(text, "blowup.weights")
    assert '"weights"' in text.splitlines()[line - 1]
    assert line > locate_line(text, "surface.weights")


def test_preset_examples():
    assert run_preset("fam-11nm", 0, 1)["beta"]["beta"] == "-2"
    rep = run_preset("s27")
    assert (rep["alpha"]["lct_ub"], rep["alpha"]["delta_ub"], rep["verdict"]) == ("5/9", "5/6", "NotKSemistable")
    rep = run_preset("fam-3n4", 5)
    assert F(rep["beta"]["beta"]) == beta_3n4(5) < 0
    assert all(v["passed"] for v in rep["validation"])


def test_text_report_follows_narrative_order(capsys):
    code, out, _ = cli(capsys, "report", "--preset", "s9")
    assert code == 0
    keys = ["singular point p_t of type 1/4(1,1)", "weighted blow-up", "intersection table", "nef threshold: 1/6",
            "negative support {L1, L2, L3}", "tau(E) = 3/2", "integral of vol over [0, tau] = 5/9",
            "A(E) (-K)^2 = 1/2", "beta(E) = -1/18", "lct", "VERDICT NotKSemistable"]
    pos = [out.index(k) for k in keys]
    assert pos == sorted(pos)
    assert format_text(run_preset("s9")) == out


def test_sweep_fam_11nm(capsys):
    code, out, _ = cli(capsys, "sweep", "fam-11nm", "--n", "0:10", "--m", "0:10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,m,beta,verdict"
    assert len(lines) == 56
    assert all(F(line.split(",")[3]) < 0 for line in lines[1:])
    code, out, _ = cli(capsys, "sweep", "fam-11nm", "--n", "0:10", "--m", "0:10", "--allow-boundary", "--json")
    rows = json.loads(out)
    assert len(rows) == 66
    assert sorted(r["n"] for r in rows if r["beta"] == "0") == list(range(11))


def test_sweep_fam_3n4_and_6n9(capsys):
    code, out, _ = cli(capsys, "sweep", "fam-3n4", "--n", "0:10")
    assert code == 0 and len(out.splitlines()) == 12
    code, out, _ = cli(capsys, "sweep", "fam-6n9", "--n", "0:20", "--json")
    rows = json.loads(out)
    assert [r["lct_ub"] for r in rows] == [str(F(n + 2, 2 * n + 3)) for n in range(21)]


def test_sweep_workers_agree():
    assert sweep("fam-11nm", range(0, 4), range(0, 5), workers=2) == sweep("fam-11nm", range(0, 4), range(0, 5))


def test_sweep_errors(capsys):
    assert cli(capsys, "sweep", "fam-11nm", "--n", "0:3")[0] == 2
    with pytest.raises(BadParameters):
        sweep("s9", range(1))


def test_load_scenario_roundtrip():
    text = dumps(preset_dict("fam-3n4", 3))
    sc = load_scenario(text)
    assert sc.name == "fam-3n4(n=3)"
    assert sc.blowup.weights == (2, 4)
