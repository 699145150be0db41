"""End-to-end CLI runs: every experiment kind, exit-code contract,
reproducible report bytes, and an engineered bound failure."""

import json
import os

import numpy as np
import pytest

from hooleyff.base_field import Field
from hooleyff.cli import main
from hooleyff.polyring import Poly, ResidueRing
from hooleyff.tracefn import TraceFunction

F3, F5 = Field(3), Field(5)


def write_cfg(path, text):
    path.write_text(text)
    return str(path)


SWEEP_TOML = """
[field]
p = 5

[ring]
modulus = [[2], [0], [1]]

[family]
kind = "mixed-char"
preset = "hooley"
exponents = [3]

[experiment]
kind = "sweep"
n_values = [0, 1, 2]

[output]
name = "sweep-hooley"
"""

VARIANCE_TOML = """
[field]
p = 5

[ring]
modulus = [[1], [1], [0], [1]]

[family]
kind = "mixed-char"
preset = "burgess-linear"
exponents = [7]

[experiment]
kind = "variance"
k_values = [0, 1, 2]
"""

COVARIANCE_TOML = """
[field]
p = 5

[ring]
modulus = [[1], [1], [0], [1]]

[family]
kind = "mixed-char"
preset = "burgess-linear"
exponents = [7]

[family2]
kind = "mixed-char"
preset = "burgess-linear"
exponents = [9]

[experiment]
kind = "covariance"
k_values = [0, 1]
main_indicator = false
"""

MORDELL_TOML = """
[field]
p = 5

[ring]
modulus = [[2], [0], [1]]

[family]
kind = "value-set"
P = [[[0]], [[0]], [[1]]]

[experiment]
kind = "mordell"
X_values = [1, 5, 25]
"""

CONTROL_JSON = json.dumps({
    "field": {"p": 3},
    "ring": {"modulus": [[1], [1], [0], [0], [0], [0], [1]]},
    "experiment": {"kind": "control"},
})

IDENTITY_TOML = """
[field]
p = 3

[ring]
modulus = [[0], [1], [1]]

[experiment]
kind = "identity-suite"
tables = 3
"""

KLOOSTERMAN_TOML = """
[field]
p = 3

[ring]
modulus = [[1], [0], [1]]

[family]
kind = "kloosterman"
k = 2

[experiment]
kind = "sweep"
n_values = [0, 1]
"""


ALL_KINDS = [
    ("sweep.toml", SWEEP_TOML, "sweep-hooley"),
    ("variance.toml", VARIANCE_TOML, "variance"),
    ("covariance.toml", COVARIANCE_TOML, "covariance"),
    ("mordell.toml", MORDELL_TOML, "mordell"),
    ("control.json", CONTROL_JSON, "control"),
    ("identity.toml", IDENTITY_TOML, "identity-suite"),
    ("kloosterman.toml", KLOOSTERMAN_TOML, "sweep"),
]


@pytest.mark.parametrize("fname,text,report", ALL_KINDS)
def test_each_kind_passes(tmp_path, capsys, fname, text, report):
    cfg = write_cfg(tmp_path / fname, text)
    rc = main(["run", cfg, "--out", str(tmp_path / "reports")])
    out = capsys.readouterr().out
    assert rc == 0
    assert f"[pass] {report}:" in out
    assert (tmp_path / "reports" / f"{report}.csv").exists()
    doc = json.loads((tmp_path / "reports" / f"{report}.json").read_text())
    assert doc["schema"] == "hooley-ff/report/v1"
    assert doc["rows"] > 0
    assert doc["config"]["experiment"]["kind"] in text


def test_rerun_is_byte_identical(tmp_path):
    cfg = write_cfg(tmp_path / "sweep.toml", SWEEP_TOML)
    main(["run", cfg, "--out", str(tmp_path / "a")])
    main(["run", cfg, "--out", str(tmp_path / "b")])
    for suffix in (".csv", ".json"):
        fa = (tmp_path / "a" / ("sweep-hooley" + suffix)).read_bytes()
        fb = (tmp_path / "b" / ("sweep-hooley" + suffix)).read_bytes()
        assert fa == fb


def test_jobs_flag_matches_serial(tmp_path):
    cfgs = [write_cfg(tmp_path / n, t) for n, t, _ in ALL_KINDS[:3]]
    rc = main(["run", *cfgs, "--out", str(tmp_path / "serial")])
    rc2 = main(["run", *cfgs, "--jobs", "3", "--out", str(tmp_path / "pool")])
    assert rc == rc2 == 0
    for _, _, report in ALL_KINDS[:3]:
        a = (tmp_path / "serial" / f"{report}.csv").read_bytes()
        b = (tmp_path / "pool" / f"{report}.csv").read_bytes()
        assert a == b


def test_gnuplot_emission(tmp_path):
    cfg = write_cfg(tmp_path / "sweep.toml", SWEEP_TOML)
    main(["run", cfg, "--out", str(tmp_path / "r"), "--gnuplot"])
    script = (tmp_path / "r" / "sweep-hooley.gnuplot").read_text()
    assert "plot" in script and "abs_sum" in script


def test_out_dir_resolution(tmp_path, monkeypatch):
    cfg = write_cfg(tmp_path / "sweep.toml", SWEEP_TOML)
    monkeypatch.setenv("HOOLEYFF_OUT", str(tmp_path / "envdir"))
    main(["run", cfg])
    assert (tmp_path / "envdir" / "sweep-hooley.csv").exists()
    # --out beats the environment
    main(["run", cfg, "--out", str(tmp_path / "flagdir")])
    assert (tmp_path / "flagdir" / "sweep-hooley.csv").exists()


def test_seed_override_changes_sampled_centers(tmp_path):
    # a modulus large enough that centers are sampled rather than exhaustive
    big = """
[field]
p = 3

[ring]
modulus = [[2], [0], [1], [0], [0], [0], [0], [1]]

[family]
kind = "mixed-char"
preset = "burgess-linear"
exponents = [1093]

[experiment]
kind = "sweep"
n_values = [1]

[output]
name = "big"
"""
    cfg = write_cfg(tmp_path / "big.toml", big)
    main(["run", cfg, "--out", str(tmp_path / "s0"), "--seed", "0"])
    main(["run", cfg, "--out", str(tmp_path / "s1"), "--seed", "1"])
    a = (tmp_path / "s0" / "big.csv").read_text()
    b = (tmp_path / "s1" / "big.csv").read_text()
    assert a != b
    assert len(a.splitlines()) == len(b.splitlines()) == 65


def test_nonmonic_modulus_warning_in_echo(tmp_path):
    cfg_text = SWEEP_TOML.replace("modulus = [[2], [0], [1]]",
                                  "modulus = [[4], [0], [2]]")
    cfg = write_cfg(tmp_path / "sweep.toml", cfg_text)
    rc = main(["run", cfg, "--out", str(tmp_path / "r")])
    assert rc == 0
    doc = json.loads((tmp_path / "r" / "sweep-hooley.json").read_text())
    assert any("normalized to monic" in w for w in doc["config"]["warnings"])


def test_list_catalog(capsys):
    rc = main(["list-catalog"])
    out = capsys.readouterr().out
    assert rc == 0
    for name in ("hooley", "burgess-linear", "split-inverses", "kloosterman",
                 "value-set", "custom"):
        assert name in out


BAD_CONFIGS = [
    ("missing-section.toml", "[field]\np = 5\n"),
    ("bad-p.toml", SWEEP_TOML.replace("p = 5", "p = 6")),
    ("bad-kind.toml", SWEEP_TOML.replace('kind = "sweep"', 'kind = "mystery"')),
    ("bad-arity.toml", SWEEP_TOML.replace("exponents = [3]", "exponents = [3, 1]")),
    ("bad-preset.toml", SWEEP_TOML.replace('"hooley"', '"no-such-triple"')),
    ("bad-toml.toml", "[field\np ="),
    ("reducible-vs.toml", MORDELL_TOML.replace("[[2], [0], [1]]",
                                               "[[0], [1], [1]]")),
    ("principal-chi.toml", SWEEP_TOML.replace("exponents = [3]",
                                              "exponents = [0]")),
]


@pytest.mark.parametrize("fname,text", BAD_CONFIGS)
def test_bad_configs_exit_1(tmp_path, capsys, fname, text):
    cfg = write_cfg(tmp_path / fname, text)
    rc = main(["run", cfg, "--out", str(tmp_path / "r")])
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error:")


def test_missing_file_exits_1(tmp_path, capsys):
    rc = main(["run", str(tmp_path / "nope.toml")])
    assert rc == 1
    assert "cannot read config" in capsys.readouterr().err


def test_engineered_violation_exits_2(tmp_path, capsys):
    # a custom table whose values no honest trace function could take,
    # with metadata claiming tiny rank and conductor: sweep must flag it
    ring = ResidueRing(Poly(F3, [1, 0, 1]))
    vals = np.full(ring.N, 50.0, dtype=np.complex128)
    t = TraceFunction(ring, vals, "impostor", 1, 0)
    table_path = tmp_path / "impostor.csv"
    t.export_csv(table_path)
    cfg = write_cfg(tmp_path / "bad.toml", f"""
[field]
p = 3

[ring]
modulus = [[1], [0], [1]]

[family]
kind = "custom"
path = "{table_path}"

[experiment]
kind = "sweep"
n_values = [2]

[output]
name = "impostor"
""")
    rc = main(["run", cfg, "--out", str(tmp_path / "r")])
    out = capsys.readouterr().out
    assert rc == 2
    assert "[FAIL] impostor:" in out
    doc = json.loads((tmp_path / "r" / "impostor.json").read_text())
    assert doc["summary"]["violations"] > 0


def test_custom_family_round_trip(tmp_path, capsys):
    # an honest custom import passes the sweep with its stored metadata
    ring = ResidueRing(Poly(F3, [1, 0, 1]))
    rng = np.random.default_rng(2)
    vals = rng.uniform(-0.5, 0.5, ring.N) + 0j
    TraceFunction(ring, vals, "mild", 1, 1).export_csv(tmp_path / "mild.csv")
    cfg = write_cfg(tmp_path / "ok.toml", f"""
[field]
p = 3

[ring]
modulus = [[1], [0], [1]]

[family]
kind = "custom"
path = "{tmp_path / 'mild.csv'}"

[experiment]
kind = "sweep"
n_values = [0, 1]

[output]
name = "mild"
""")
    assert main(["run", cfg, "--out", str(tmp_path / "r")]) == 0
    assert "[pass] mild:" in capsys.readouterr().out
