import pandas as pd
import pytest

from defcol.reporting.claims import CLAIMS
from defcol.reporting.report_builder import ReportBuilder
from defcol.reporting.report_config import ReportConfigManager
from defcol.reporting.report_formatter import ReportFormatter
from defcol.transversal import m_value


@pytest.fixture
def small_config(config):
    config.verify_config.quick_max_n = 5
    return config


@pytest.fixture
def builder():
    return ReportBuilder(ReportConfigManager())


def test_claims_follow_the_report_configuration(builder):
    ids = builder.claim_ids()
    assert set(ids) == set(CLAIMS)
    assert ids[0] == "formula_exactness"
    assert builder.claim_ids(["sandwich", "formula_exactness"]) == ["formula_exactness", "sandwich"]
    with pytest.raises(ValueError):
        builder.claim_ids(["no_such_claim"])


def test_lower_bound_family(builder, config):
    data = builder.build_report(config, quick=True, claims=["lower_bound_family"])
    assert len(data.rows_df) == 3
    assert data.all_passed
    assert data.metadata["mode"] == "quick"


def test_formula_exactness_passes_on_small_graphs(builder, small_config):
    data = builder.build_report(small_config, quick=True, claims=["formula_exactness"])
    assert len(data.rows_df) > 0
    assert data.all_passed


def test_a_wrong_formula_is_reported(builder, small_config):
    data = builder.build_report(small_config, quick=True, claims=["formula_exactness"],
                                formula=lambda G, phi: m_value(G, phi) + 1)
    assert len(data.failed) == len(data.rows_df) > 0
    assert not data.all_passed
    lines = ReportFormatter(ReportConfigManager().get_config()).format_lines(data)
    assert all(line.endswith("\tFAIL") for line in lines[:-1])
    assert lines[-1] == f"# 0 of {len(data.rows_df)} rows passed (quick mode)"


def test_cli_writes_the_report(run_cli, tmp_path):
    code, text = run_cli(["verify-paper", "--quick", "--claim", "lower_bound_family", "-o", "out"])
    assert code == 0
    assert text.splitlines()[-1] == "# 3 of 3 rows passed (quick mode)"
    assert (tmp_path / "out" / "report.txt").exists()
    tsv = pd.read_csv(tmp_path / "out" / "report.tsv", sep="\t")
    assert list(tsv["passed"]) == ["PASS"] * 3
    assert (tmp_path / "out" / "defcol.log").exists()


def test_default_output_dir_gets_a_latest_symlink(run_cli, tmp_path):
    code, _ = run_cli(["verify-paper", "--quick", "--claim", "lower_bound_family"])
    assert code == 0
    latest = tmp_path / "defcol-results" / "latest"
    assert latest.is_symlink()
    assert (latest / "report.tsv").exists()


@pytest.mark.slow
def test_quick_run_passes_every_claim(run_cli):
    code, text = run_cli(["verify-paper", "--quick", "-o", "quick"])
    assert code == 0
    assert " FAIL" not in text and "\tFAIL" not in text
