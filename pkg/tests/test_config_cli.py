import os

import numpy as np
import pytest

from dgsem import cases, studies
from dgsem.cli import main
from dgsem.config import ConfigError, RunConfig, StudyMatrix, parse_config
from dgsem.dg import SchemeConfig
from dgsem.harness import ConvergenceRow, ConvergenceTable


def test_parse_single_run_config():
    cfg = parse_config("nodes=lgl volume=split flux=eckep-roe N=4 case=density "
                       "ma=0.2 levels=4 cfl=0.5")
    assert isinstance(cfg, RunConfig)
    assert cfg.scheme.nodes == "lgl"
    assert cfg.scheme.volume == "split"
    assert cfg.scheme.flux == "eckep-roe"
    assert cfg.scheme.degree == 4
    assert cfg.mach == "0.2"
    assert cfg.levels == 4
    assert cfg.cfl == 0.5


def test_parse_config_with_comments_and_lines():
    cfg = parse_config("# scheme\nnodes=gauss flux=hll\n# run\nlevels=3\n")
    assert isinstance(cfg, RunConfig)
    assert cfg.scheme.nodes == "gauss"
    assert cfg.levels == 3


def test_parse_rejects_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("fluxx=hll")


def test_parse_rejects_unknown_flux_listing_valid_kinds():
    with pytest.raises(ConfigError, match="llf, hll, hllc, roe, eckep"):
        parse_config("flux=eckp")


def test_parse_rejects_split_gauss():
    with pytest.raises(ConfigError, match="lgl"):
        parse_config("volume=split nodes=gauss")


def test_parse_rejects_bad_values():
    with pytest.raises(ConfigError):
        parse_config("N=0")
    with pytest.raises(ConfigError):
        parse_config("cfl=1.5")
    with pytest.raises(ConfigError):
        parse_config("cfl=abc")
    with pytest.raises(ConfigError):
        parse_config("levels")
    with pytest.raises(ConfigError):
        parse_config("entropy_trace=maybe")


def test_parse_study_matrix():
    cfg = parse_config("flux=hll,roe N=2,3 ma=0.2,3.5 nodes=gauss")
    assert isinstance(cfg, StudyMatrix)
    runs = cfg.run_configs()
    assert len(runs) == 8
    assert {r.scheme.flux for r in runs} == {"hll", "roe"}
    assert {r.scheme.degree for r in runs} == {2, 3}
    assert {r.mach for r in runs} == {"0.2", "3.5"}


def test_presets_cover_every_published_table():
    assert set(studies.PRESETS) == {"1", "2", "3", "4", "5", "6", "7", "ms"}
    t1 = studies.PRESETS["1"]
    assert t1.case == cases.DENSITY_WAVE
    assert [b[2] for b in t1.blocks] == ["hll", "roe"]
    ms = studies.PRESETS["ms"]
    assert ms.case == cases.MANUFACTURED
    assert len(ms.blocks) == 13
    # preset expansion covers the full degree sweep per block
    runs = studies.preset_run_configs(studies.PRESETS["1"], levels=5)
    assert len(runs) == 2 * 4 * 3
    assert all(r.levels == 5 for r in runs)


def _sample_table():
    scheme = SchemeConfig(nodes="gauss", degree=2, volume="standard", flux="hll")
    rows = [
        ConvergenceRow(level=0, h=0.5, n_elements=16, dofs=2160,
                       error=1.8919016421704213e-03, eoc=None),
        ConvergenceRow(level=1, h=0.25, n_elements=64, dofs=8640,
                       error=1.8679432192118996e-04, eoc=3.340314580024689),
    ]
    return ConvergenceTable(scheme=scheme, case=cases.DENSITY_WAVE,
                            wave=cases.MACH_PRESETS["3.5"], cfl=0.5, rows=rows)


def test_csv_round_trip():
    table = _sample_table()
    text = studies.emit_csv(table)
    rows = studies.parse_csv(text)
    assert rows == table.rows
    assert studies.emit_csv(ConvergenceTable(table.scheme, table.case, table.wave,
                                             table.cfl, rows)) == text


def test_csv_single_row_has_empty_eoc():
    table = _sample_table()
    table.rows = table.rows[:1]
    lines = studies.emit_csv(table).strip().splitlines()
    assert lines[0] == studies.CSV_HEADER
    assert len(lines) == 2
    assert lines[1].endswith(",")


def test_console_format_uses_three_significant_digits():
    out = studies.emit_console(_sample_table())
    assert "1.89e-03" in out
    assert "1.87e-04" in out
    assert "3.34" in out
    assert "-" in out  # blank EOC marker on the coarsest level


def test_table_label_is_deterministic():
    assert studies.table_label(_sample_table()) == "density_gauss_hll_N2_ma3.5"


def test_cli_run_and_csv_output(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nodes=lgl flux=hllc N=2 case=density ma=3.5 levels=2 cfl=0.5\n")
    out_dir = tmp_path / "out"
    code = main(["run", "--config", str(cfg), "--out", str(out_dir), "--threads", "2"])
    assert code == 0
    files = sorted(os.listdir(out_dir))
    assert files == ["density_lgl_hllc_N2_ma3.5.csv"]
    rows = studies.parse_csv((out_dir / files[0]).read_text())
    assert len(rows) == 2
    assert rows[1].eoc is not None


def test_cli_run_reports_diagnostics(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nodes=lgl flux=eckep volume=split N=2 ma=0.2 levels=1 "
                   "t_end=0.1 entropy_trace=true\n")
    out_dir = tmp_path / "out"
    code = main(["run", "--config", str(cfg), "--out", str(out_dir)])
    assert code == 0
    diag = out_dir / "diagnostics_density_split_eckep_N2_ma0.2.csv"
    assert diag.exists()
    lines = diag.read_text().strip().splitlines()
    assert lines[0] == "step,t,dt,mass,mom_x,mom_y,mom_z,energy,entropy"
    first = lines[1].split(",")
    last = lines[-1].split(",")
    # conserved sums stay put to roundoff over the trace
    assert float(first[3]) == pytest.approx(float(last[3]), abs=1e-12)
    assert float(first[7]) == pytest.approx(float(last[7]), abs=1e-12)


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("flux=eckp\n")
    assert main(["run", "--config", str(bad)]) == 1
    missing = str(tmp_path / "nope.cfg")
    assert main(["run", "--config", missing]) == 3
    split_gauss = tmp_path / "sg.cfg"
    split_gauss.write_text("volume=split nodes=gauss\n")
    assert main(["run", "--config", str(split_gauss)]) == 1


def test_cli_study_with_matrix_config(tmp_path):
    cfg = tmp_path / "matrix.cfg"
    cfg.write_text("nodes=lgl flux=llf,roe N=2 ma=3.5 levels=2 cfl=0.5\n")
    out_dir = tmp_path / "study_out"
    code = main(["study", "--config", str(cfg), "--out", str(out_dir), "--threads", "2"])
    assert code == 0
    files = sorted(os.listdir(out_dir))
    assert files == ["study_density_lgl_llf_N2_ma3.5.csv",
                     "study_density_lgl_roe_N2_ma3.5.csv"]


def test_cli_study_requires_exactly_one_source(tmp_path):
    assert main(["study"]) == 1
    cfg = tmp_path / "c.cfg"
    cfg.write_text("flux=llf\n")
    assert main(["study", "--config", str(cfg), "--table", "1"]) == 1


def test_cli_selftest_smoke():
    assert main(["selftest"]) == 0


def test_cli_env_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("DGSEM_OUT", str(tmp_path / "envout"))
    monkeypatch.setenv("DGSEM_THREADS", "2")
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nodes=gauss flux=roe N=2 ma=3.5 levels=2\n")
    assert main(["run", "--config", str(cfg)]) == 0
    assert (tmp_path / "envout" / "density_gauss_roe_N2_ma3.5.csv").exists()
