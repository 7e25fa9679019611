import json
import math
import subprocess
import sys

import pytest

from inconstancy.cli import SCHEMA, convergence_series, main, run
from inconstancy.sequences import periodic, thue_morse

SQRT2 = math.sqrt(2)


def report(*argv):
    code, text = run(list(argv))
    assert code == 0, text
    return json.loads(text)


def test_inconstancy_json():
    rep = report("inconstancy", "--values", "1,0")
    assert rep["schema"] == SCHEMA
    assert rep["command"] == "inconstancy"
    res = rep["results"]
    assert res["inconstancy"] == pytest.approx(2 * SQRT2 / (1 + SQRT2), abs=1e-12)
    assert res["length"] == pytest.approx(2 * SQRT2)
    assert res["n_segments"] == 2
    assert not res["degenerate_hull"]
    assert rep["metadata"]["seed"] == 0


def test_straight_line_is_exactly_one():
    res = report("inconstancy", "--values", "1,2,3")["results"]
    assert res["inconstancy"] == 1.0
    assert res["degenerate_hull"]


def test_output_is_deterministic_apart_from_timing():
    argv = ["crofton-mc", "--values", "1,0", "--samples", "20000", "--seed", "3"]
    a, b = report(*argv), report(*argv)
    for rep in (a, b):
        rep["metadata"].pop("elapsed_seconds")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_compare_reference_curves_orderings():
    res = report("compare", "--reference-curves")["results"]
    assert res["order_by_mse"] == ["curve1", "curve2", "curve3", "curve4"]
    assert res["order_by_inconstancy"] == ["curve4", "curve2", "curve1", "curve3"]
    mses = [c["mse"] for c in res["curves"]]
    assert mses == pytest.approx([2 / 3, 3 / 2, 8 / 3, 25 / 6], abs=1e-12)


def test_compare_repeated_values():
    res = report("compare", "--values", "1,0", "--values", "0,3")["results"]
    assert [c["values"] for c in res["curves"]] == [[1.0, 0.0], [0.0, 3.0]]


def test_analyze():
    res = report("analyze", "--values", "0,1,1,0")["results"]
    assert res["N"] == 4
    assert res["abs_difference"] < 1e-12
    res = report("analyze", "--values", "1,0", "--h", "3")["results"]
    assert res["formula"] == pytest.approx(res["geometry"], abs=1e-12)


def test_asymptotic_thue_morse():
    res = report("asymptotic", "--seq", "thue-morse")["results"]
    assert res["closed_form"] == pytest.approx((2 + 4 * SQRT2) / 6, abs=1e-12)
    assert res["perron_inconstancy"] == pytest.approx(res["closed_form"], abs=1e-10)
    assert res["perron_frequencies"]["00"] == pytest.approx(1 / 6, abs=1e-10)
    assert abs(res["prefix_inconstancy"] - res["closed_form"]) < 1e-2
    assert res["series"][-1][0] == (1 << 16) - 1


def test_asymptotic_rudin_shapiro_perron():
    res = report("asymptotic", "--seq", "rudin-shapiro", "--n", "4096")["results"]
    for f in res["perron_frequencies"].values():
        assert f == pytest.approx(0.25, abs=1e-10)


def test_entropy_straight_curve_encodes_infinite_beta():
    rep = report("entropy", "--values", "0,0,0")
    res = rep["results"]
    assert res["beta"] is None and res["beta_infinite"] is True
    assert res["h_max"] == 0.0
    assert rep["warnings"]


def test_entropy_with_samples():
    res = report("entropy", "--values", "1,0", "--samples", "20000")["results"]
    assert 0 < res["empirical_entropy"] <= res["h_max"] + 0.01
    assert res["beta"] > 0


def test_generate_and_predict():
    res = report("generate", "--seq", "thue-morse", "--n", "8")["results"]
    assert res["sequence"] == "01101001"
    res = report("generate", "--seq", "morphism", "--morphism", "a:ab,b:ca,c:cd,d:ac", "--n", "6")["results"]
    assert res["sequence"] == "abcacd"
    res = report("predict", "--values", "1,2", "--candidates", "0,3")["results"]
    assert res["prediction"] == 3.0
    assert len(res["changes"]) == 2


def test_csv_inputs(tmp_path):
    f = tmp_path / "v.csv"
    f.write_text("# comment\n1\n\n0\n")
    assert report("inconstancy", "--csv", str(f))["results"]["n_segments"] == 2
    f.write_text("0,1\n1,0\n")
    assert report("inconstancy", "--csv", str(f))["results"]["n_segments"] == 2
    f.write_text("0,0\n1,1\n2,0\n")
    res = report("inconstancy", "--csv", str(f), "--no-origin")["results"]
    assert res["inconstancy"] == pytest.approx(2 * SQRT2 / (1 + SQRT2), abs=1e-12)


def test_missing_csv_exits_1(tmp_path, capsys):
    code, text = run(["inconstancy", "--csv", str(tmp_path / "absent.csv")])
    assert code == 1 and text == ""
    assert "cannot read" in capsys.readouterr().err


def test_malformed_csv_reports_row(tmp_path, capsys):
    f = tmp_path / "bad.csv"
    f.write_text("1\n2\nabc\n")
    code, _ = run(["inconstancy", "--csv", str(f)])
    assert code == 1
    assert "row 3" in capsys.readouterr().err
    f.write_text("0,1\n2,0\n")
    assert run(["inconstancy", "--csv", str(f)])[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["inconstancy"],
        ["inconstancy", "--values", "1,0", "--seq", "thue-morse", "--n", "8"],
        ["inconstancy", "--values", "1,x"],
        ["asymptotic", "--seq", "sturmian", "--n", "100"],
        ["crofton-mc", "--values", "1,0", "--samples", "0"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv)[0] == 2


def test_table_view():
    code, text = run(["inconstancy", "--values", "1,0", "--table"])
    assert code == 0
    assert text.startswith("# inconstancy")
    assert "inconstancy: 1.17157" in text


def test_main_writes_stdout(capsys):
    assert main(["inconstancy", "--values", "1,0"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "inconstancy"


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "inconstancy.cli", "inconstancy", "--values", "1,2"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["results"]["inconstancy"] == 1.0


def test_convergence_series():
    assert all(v == 1.0 for _, v in convergence_series(periodic("0", 100), [10, 50, 99]))
    alt = convergence_series(periodic("01", 10_001), [10, 100, 1000, 10_000])
    values = [v for _, v in alt]
    assert values == sorted(values) and values[-1] < SQRT2
    assert SQRT2 - values[-1] < 1e-3
    tm = convergence_series(thue_morse(1 << 16), [(1 << 16) - 1])
    assert abs(tm[0][1] - (2 + 4 * SQRT2) / 6) < 1e-2
    with pytest.raises(ValueError):
        convergence_series(periodic("01", 10), [5, 5])
    with pytest.raises(ValueError):
        convergence_series(periodic("01", 10), [10])
