import json
import math

import numpy as np
import pytest

from phasewave import (NATURAL_UNITS, DataError, GridSpec, StandingWaveSpec, export_field,
                       radial_kernel, read_field, sample_field, standing_wave_field,
                       stationary_field)

P = NATURAL_UNITS
SPEC = StandingWaveSpec(ell=3, A=2.0, C=5.0)


def small_grid():
    return GridSpec(rho_max=2.0, n_rho=4, n_phi=16)


def test_sample_ground_state_on_four_by_four_grid():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=4)
    fld = sample_field(stationary_field(P, 0), grid, 0.0, P)
    assert fld.values.shape == (4, 4)
    for i, rho in enumerate(grid.rho_nodes()):
        expected = (1.0 / math.pi) * math.exp(-rho**2)
        assert fld.values[i] == pytest.approx(np.full(4, expected), rel=1e-12)
        assert float(radial_kernel(P, 0, rho)) == pytest.approx(expected, rel=1e-14)


def test_sampling_is_deterministic():
    grid = small_grid()
    W = standing_wave_field(P, 5, SPEC)
    a = sample_field(W, grid, 0.37, P)
    b = sample_field(W, grid, 0.37, P)
    assert np.array_equal(a.values, b.values)


def test_standing_wave_at_quarter_period_equals_stationary_sample():
    grid = small_grid()
    T = SPEC.period(P.omega)
    a = sample_field(standing_wave_field(P, 1, SPEC), grid, T / 4.0, P)
    b = sample_field(stationary_field(P, 1), grid, T / 4.0, P)
    assert np.max(np.abs(a.values - b.values)) <= 1e-12


def test_nonfinite_sample_names_the_node():
    def broken(x, p, t):
        vals = np.asarray(x, dtype=float) * 0.0
        return np.where(np.asarray(p) > 1.0, np.nan, vals)

    with pytest.raises(DataError, match=r"i=\d+, j=\d+"):
        sample_field(broken, small_grid(), 0.0, P)


def test_csv_export_line_budget(tmp_path):
    grid = GridSpec(rho_max=2.0, n_rho=2, n_phi=2)
    fld = sample_field(stationary_field(P, 0), grid, 0.0, P)
    path = export_field(fld, P, "csv", tmp_path / "f.csv", extra={"n": 0})
    lines = [ln for ln in open(path).read().splitlines() if ln and not ln.startswith("#")]
    assert lines[0] == "rho,phi,x,p,W"
    assert len(lines) == 1 + 4


def test_csv_round_trip_bit_exact(tmp_path):
    grid = small_grid()
    fld = sample_field(standing_wave_field(P, 5, SPEC), grid, 0.21, P)
    path = export_field(fld, P, "csv", tmp_path / "w.csv",
                        extra={"n": 5, "ell": 3, "A": 2.0, "C": 5.0})
    back, meta = read_field(path)
    assert np.array_equal(back.values, fld.values)
    assert back.grid == fld.grid
    assert back.time_tag == fld.time_tag
    assert meta["ell"] == 3 and meta["A"] == 2.0 and meta["C"] == 5.0


def test_json_round_trip_bit_exact(tmp_path):
    grid = small_grid()
    fld = sample_field(standing_wave_field(P, 0, SPEC), grid, 0.11, P)
    path = export_field(fld, P, "json", tmp_path / "w.json",
                        extra={"n": 0, "ell": 3, "A": 2.0, "C": 5.0})
    back, meta = read_field(path)
    assert np.array_equal(back.values, fld.values)
    assert back.grid == fld.grid
    assert back.time_tag == fld.time_tag
    assert meta["ell"] == 3 and meta["A"] == 2.0 and meta["C"] == 5.0
    doc = json.loads(open(path).read())
    assert doc["kind"] == "phasewave-field"
    assert doc["params"]["m"] == 1.0


def test_export_rejects_unknown_format(tmp_path):
    fld = sample_field(stationary_field(P, 0), small_grid(), 0.0, P)
    with pytest.raises(ValueError):
        export_field(fld, P, "xml", tmp_path / "w.xml")


def test_export_is_byte_identical_across_runs(tmp_path):
    grid = small_grid()
    fld = sample_field(standing_wave_field(P, 5, SPEC), grid, 0.37, P)
    p1 = export_field(fld, P, "csv", tmp_path / "a.csv", extra={"n": 5})
    p2 = export_field(fld, P, "csv", tmp_path / "b.csv", extra={"n": 5})
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_read_field_missing_metadata(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("rho,phi,x,p,W\n1,0,1,0,0.3\n")
    with pytest.raises(ValueError, match="metadata"):
        read_field(path)
