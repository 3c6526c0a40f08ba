"""End-to-end CLI behavior: ingest, query, predict, correlate, solve, plot."""
import json

import pytest

from decisionlab.cli import main
from decisionlab.lineargaussian import fit_mle, predict_horizon
from decisionlab.store import HistoryStore

from conftest import DATA_DIR, EMPLOYMENT_MANUFACTURING, register_all

SINGLE_STATE_MDP = """STATES
steady
ACTIONS
stay
GAMMA
0.9
REWARDS
1.0
TRANSITION
1.0
"""


@pytest.fixture
def cli_store(tmp_path):
    """Empty store directory with registries in place."""
    target = tmp_path / "store"
    st = HistoryStore()
    register_all(st)
    st.save(target)
    return target


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def ingest_all(capsys, store_dir):
    for name in ("employment_manufacturing", "gambling_revenue",
                 "employment_tax_seasonal", "gdp_gambling_mining"):
        code, out, err = run(
            capsys, "--store", store_dir, "ingest",
            DATA_DIR / f"{name}.csv", DATA_DIR / f"{name}.rules",
        )
        assert code == 0, err


class TestIngestAndSeries:
    def test_ingest_reports_count(self, capsys, cli_store):
        code, out, _ = run(
            capsys, "--store", cli_store, "ingest",
            DATA_DIR / "gdp_gambling_mining.csv", DATA_DIR / "gdp_gambling_mining.rules",
        )
        assert code == 0
        assert "wrote 18 observations" in out

    def test_series_round_trip(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store, "--format", "json",
                           "series", 6, 3)
        assert code == 0
        payload = json.loads(out)
        assert [p[1] for p in payload["points"]] == list(EMPLOYMENT_MANUFACTURING)

    def test_series_empty_key(self, capsys, cli_store):
        code, out, _ = run(capsys, "--store", cli_store, "series", 1, 3)
        assert code == 0
        assert "(empty series)" in out

    def test_create_missing_registers_stubs(self, capsys, tmp_path):
        target = tmp_path / "fresh"
        code, out, _ = run(
            capsys, "--store", target, "ingest",
            DATA_DIR / "gdp_gambling_mining.csv", DATA_DIR / "gdp_gambling_mining.rules",
            "--create-missing",
        )
        assert code == 0
        assert len(HistoryStore.open(target).industries()) == 2

    def test_missing_registry_is_data_error(self, capsys, tmp_path):
        target = tmp_path / "fresh"
        code, _, err = run(
            capsys, "--store", target, "ingest",
            DATA_DIR / "gdp_gambling_mining.csv", DATA_DIR / "gdp_gambling_mining.rules",
        )
        assert code == 1
        assert "UnknownIndustry" in err


class TestPredict:
    def test_gaussian_rows_match_chained_oracle(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store, "--format", "json",
                           "predict", "gaussian", 6, 3, "--horizon", 5)
        assert code == 0
        payload = json.loads(out)
        model = fit_mle(EMPLOYMENT_MANUFACTURING)
        expected = predict_horizon(EMPLOYMENT_MANUFACTURING[-1], model, 5)
        got = payload["beliefs"]
        assert [b["time"] for b in got] == [2009.0, 2010.0, 2011.0, 2012.0, 2013.0]
        for row, belief in zip(got, expected):
            assert row["mean"] == pytest.approx(belief.mean, rel=1e-12)
            assert row["std"] == pytest.approx(belief.std, rel=1e-12)

    def test_gaussian_text_rows(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store,
                           "predict", "gaussian", 6, 3, "--horizon", 2)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("2009 ")

    def test_gaussian_short_series_is_data_error(self, capsys, cli_store):
        code, _, err = run(capsys, "--store", cli_store, "predict", "gaussian", 6, 3)
        assert code == 1
        assert "SeriesTooShort" in err

    def test_markov_distributions(self, capsys, cli_store, tmp_path):
        ingest_all(capsys, cli_store)
        scheme = tmp_path / "scheme.txt"
        scheme.write_text("3 1.0 24 33 42\n", encoding="utf-8")
        code, out, _ = run(capsys, "--store", cli_store, "--format", "json",
                           "predict", "markov", 6, "--scheme", scheme, "--steps", 3)
        assert code == 0
        payload = json.loads(out)
        assert payload["labels"] == [2, 2, 1, 1, 1, 0, 0]
        for dist in payload["distributions"]:
            assert sum(dist) == pytest.approx(1.0, abs=1e-9)


class TestCorrelate:
    def test_reference_layout(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store, "correlate", "10:3", "1:2")
        assert code == 0
        assert out == (
            "X Values:\n"
            "20.1 22 23 26.7 27.5 28.7 33.3 33.7\n"
            "\n"
            "Y Values:\n"
            "3202 3578.4 4232.7 4223.5 3993.3 4524.9 4553.4 4246.9\n"
            "\n"
            "Pearson Correlation Coefficient: 0.776017710959035\n"
            "Kendall's Tau Correlation Coefficient: 0.642857142857143\n"
            "Spearman Rank Correlation: 0.833333333333333\n"
        )

    def test_gdp_pair_coefficients(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store, "--format", "json",
                           "correlate", "1:6", "2:6")
        payload = json.loads(out)
        assert code == 0
        assert payload["pearson"] == pytest.approx(-0.0116493580762903, abs=1e-9)
        assert payload["n"] == 9

    def test_optional_statistics(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        code, out, _ = run(capsys, "--store", cli_store, "correlate", "1:6", "2:6",
                           "--ratio", 3, "--total", 3)
        assert code == 0
        assert "Correlation Ratio: " in out
        assert "Total Correlation: " in out

    def test_no_overlap_is_data_error(self, capsys, cli_store):
        ingest_all(capsys, cli_store)
        # employment (annual, 2002-2008) vs tax revenue (seasonal) never align
        code, _, err = run(capsys, "--store", cli_store, "correlate", "6:3", "1:2")
        assert code == 1
        assert "EmptySample" in err

    def test_bad_pair_spec_is_usage_style_error(self, capsys, cli_store):
        code, _, err = run(capsys, "--store", cli_store, "correlate", "6-3", "1:2")
        assert code == 1


class TestMdpSolve:
    def test_single_state_utility(self, capsys, tmp_path):
        spec = tmp_path / "single.mdp"
        spec.write_text(SINGLE_STATE_MDP, encoding="utf-8")
        code, out, _ = run(capsys, "mdp", "solve", spec)
        assert code == 0
        assert "U=10.000000" in out
        assert "action=stay" in out

    def test_json_output(self, capsys, tmp_path):
        spec = tmp_path / "single.mdp"
        spec.write_text(SINGLE_STATE_MDP, encoding="utf-8")
        code, out, _ = run(capsys, "--format", "json", "mdp", "solve", spec)
        payload = json.loads(out)
        assert payload["policy"] == [0]
        assert payload["utilities"][0] == pytest.approx(10.0, abs=1e-8)

    def test_malformed_spec_is_data_error(self, capsys, tmp_path):
        spec = tmp_path / "bad.mdp"
        spec.write_text("STATES\na\nACTIONS\nx\nGAMMA\n2.0\nREWARDS\n0\nTRANSITION\n1.0\n",
                        encoding="utf-8")
        code, _, err = run(capsys, "mdp", "solve", spec)
        assert code == 1


class TestPlot:
    def test_trend_plot_written(self, capsys, cli_store, tmp_path):
        ingest_all(capsys, cli_store)
        out_svg = tmp_path / "trend.svg"
        spec = tmp_path / "plot.json"
        spec.write_text(json.dumps({
            "kind": "trend", "industry": 6, "index": 3,
            "horizon": 5, "output": str(out_svg),
        }), encoding="utf-8")
        code, out, _ = run(capsys, "--store", cli_store, "plot", spec)
        assert code == 0
        text = out_svg.read_text(encoding="utf-8")
        assert text.startswith("<svg ")
        assert text.count("<rect") == 5

    def test_distribution_plot(self, capsys, cli_store, tmp_path):
        ingest_all(capsys, cli_store)
        out_svg = tmp_path / "dist.svg"
        spec = tmp_path / "plot.json"
        spec.write_text(json.dumps({
            "kind": "distribution", "industry": 6, "index": 3,
            "year": 2009, "output": str(out_svg),
        }), encoding="utf-8")
        code, _, _ = run(capsys, "--store", cli_store, "plot", spec)
        assert code == 0
        assert out_svg.exists()

    def test_scatter_plot(self, capsys, cli_store, tmp_path):
        ingest_all(capsys, cli_store)
        out_svg = tmp_path / "scatter.svg"
        spec = tmp_path / "plot.json"
        spec.write_text(json.dumps({
            "kind": "scatter",
            "x_industry": 1, "x_index": 6, "y_industry": 2, "y_index": 6,
            "output": str(out_svg),
        }), encoding="utf-8")
        code, _, _ = run(capsys, "--store", cli_store, "plot", spec)
        assert code == 0
        assert out_svg.read_text(encoding="utf-8").count("<circle") == 9

    def test_bad_plotspec_is_data_error(self, capsys, tmp_path):
        spec = tmp_path / "plot.json"
        spec.write_text(json.dumps({"kind": "warp", "output": "x.svg"}), encoding="utf-8")
        code, _, _ = run(capsys, "plot", spec)
        assert code == 1


class TestUsageErrors:
    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2

    def test_missing_arguments_exit_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["series"])
        assert excinfo.value.code == 2

    def test_missing_file_is_data_error(self, capsys):
        code, _, err = run(capsys, "mdp", "solve", "/nonexistent/file.mdp")
        assert code == 1
        assert err
