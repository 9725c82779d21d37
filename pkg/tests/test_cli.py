import json
from pathlib import Path
import subprocess
import sys

import pytest

from magnon_ep3 import cli, config
from magnon_ep3.errors import ValidationError

ROOT = Path(__file__).resolve().parents[1]
EP3_CFG = ROOT / "configs" / "ep3_eta1.cfg"
KERR_CFG = ROOT / "configs" / "kerr_bistable.cfg"


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def read_record(path):
    lines = Path(path).read_text().splitlines()
    assert lines[0] == "key,value"
    return dict(line.split(",", 1) for line in lines[1:])


def test_empty_config_names_first_key(tmp_path, capsys):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("")
    code, out = run(["ep3", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    assert code == 1
    rec = json.loads(out.err)
    assert rec["module"] == "config" and "'eta'" in rec["message"]


def test_config_defaults_and_ep3_keyword():
    rc = config.load(EP3_CFG)
    assert rc.g1 == "ep3" and rc.n_points == 20001 and rc.probe_shift_factor == 2.0
    assert rc.physical_params().kappa1 == pytest.approx(1.5)


def test_config_rejects_unknown_and_bad_values(tmp_path):
    with pytest.raises(ValidationError):
        config.load(EP3_CFG, [("nonsense", "1")])
    with pytest.raises(ValidationError):
        config.load(EP3_CFG, [("eta", "one")])


def test_ep3_command(tmp_path, capsys):
    code, _ = run(["ep3", "--config", str(EP3_CFG), "--out", str(tmp_path)], capsys)
    assert code == 0
    rec = read_record(tmp_path / "ep3.csv")
    assert float(rec["g1_ep3"]) == pytest.approx(float(rec["g1_ep3_closed_form"]), abs=1e-12)
    assert rec["class"] == "Coalesced3"


def test_spectrum_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        code, _ = run(["spectrum", "--config", str(EP3_CFG), "--out", str(d), "--set", "n_points=501"], capsys)
        assert code == 0
    ta = (a / "spectrum.csv").read_bytes()
    assert ta == (b / "spectrum.csv").read_bytes()
    assert ta.splitlines()[0] == b"delta_cp_over_gamma2,s_abs2"
    assert len(ta.splitlines()) == 502


def test_dip_count_mismatch_exit_code(tmp_path, capsys):
    code, out = run(["dips", "--config", str(EP3_CFG), "--out", str(tmp_path), "--set", "delta_k=0"], capsys)
    assert code == 2
    rec = json.loads(out.err)
    assert rec["error"] == "DipCountMismatch" and rec["count"] == 1


def test_kerr_sweep_columns(tmp_path, capsys):
    code, _ = run(["kerr-steady", "--config", str(KERR_CFG), "--out", str(tmp_path)], capsys)
    assert code == 0
    lines = (tmp_path / "kerr_sweep.csv").read_text().splitlines()
    assert lines[0] == "omega_d,branch_index,m,delta_k,multistable"
    assert any(line.endswith(",1") for line in lines[1:])


def test_env_output_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "envout"))
    code, _ = run(["eigen", "--config", str(EP3_CFG)], capsys)
    assert code == 0 and (tmp_path / "envout" / "eigen.csv").exists()


def test_bad_arguments_are_validation_errors(capsys):
    code, out = run(["reproduce", "fig9"], capsys)
    assert code == 1 and json.loads(out.err)["module"] == "cli"


def test_reproduce_fig3(tmp_path, capsys):
    code, _ = run(["reproduce", "fig3", "--out", str(tmp_path), "--plot"], capsys)
    assert code == 0
    for name in ("fig3a.csv", "fig3b.csv", "fig3a.svg", "fig3b_dips.csv"):
        assert (tmp_path / name).exists()
    rows = (tmp_path / "fig3a.csv").read_text().splitlines()[1:]
    assert min(float(r.split(",")[1]) for r in rows) < 1e-20


def test_reproduce_fig4_table(tmp_path, capsys):
    code, _ = run(["reproduce", "fig4", "--out", str(tmp_path)], capsys)
    assert code == 0
    lines = (tmp_path / "fig4.csv").read_text().splitlines()
    assert lines[0] == "eta,xi,delta_omega,enhancement"
    assert {line.split(",")[0] for line in lines[1:]} == {"1.0", "2.0", "3.0"}


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "magnon_ep3", "reproduce", "fig2", "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert (tmp_path / "fig2.csv").exists()
