"""Polar-grid sampling and bit-stable CSV/JSON field export.

Exports are deterministic byte-for-byte: decimals carry 17 significant
digits so every double round-trips exactly, and row order is fixed
(rho-major, then phi).  Both formats are self-describing through a
parameter block.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .errors import DataError
from .evolution import Field2D, GridSpec
from .oscillator import OscillatorParams, xy_from_polar

#: Fixed key order of the self-describing parameter block.
_META_KEYS = ("n", "ell", "A", "C", "m", "omega", "hbar", "alpha", "t",
              "rho_max", "n_rho", "n_phi", "dt")


def sample_field(W, grid: GridSpec, t: float, params: OscillatorParams) -> Field2D:
    """Evaluate W(x, p, t) at the polar grid nodes, rho-major.

    Raises :class:`~phasewave.errors.DataError` naming the first offending
    node if any sampled value is non-finite.
    """
    rho = grid.rho_nodes()
    phi = grid.phi_nodes()
    x, p = xy_from_polar(params, rho[:, None], phi[None, :])
    vals = np.broadcast_to(np.asarray(W(x, p, t), dtype=float), x.shape).copy()
    bad = ~np.isfinite(vals)
    if bad.any():
        i, j = np.unravel_index(int(np.argmax(bad)), vals.shape)
        raise DataError(
            f"non-finite value at node (i={i}, j={j}), rho={rho[i]!r}, phi={phi[j]!r}"
        )
    return Field2D(grid=grid, values=vals, time_tag=float(t))


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.17g}"


def _metadata(field: Field2D, params: OscillatorParams, extra=None) -> dict:
    meta = {
        "m": params.m, "omega": params.omega, "hbar": params.hbar,
        "alpha": params.alpha, "t": field.time_tag,
        "rho_max": field.grid.rho_max, "n_rho": field.grid.n_rho,
        "n_phi": field.grid.n_phi,
    }
    if field.grid.dt is not None:
        meta["dt"] = field.grid.dt
    if extra:
        meta.update({k: v for k, v in extra.items() if v is not None})
    return {k: meta[k] for k in _META_KEYS if k in meta}


def export_field(field: Field2D, params: OscillatorParams, fmt: str, path,
                 extra=None) -> str:
    """Write a field to ``path`` as CSV or JSON; returns the path written.

    CSV: '#'-prefixed key=value parameter block, one ``rho,phi,x,p,W``
    header line, one row per node.  JSON: parameter block plus nested value
    array.  ``extra`` may carry identifying keys (n, ell, A, C).
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    meta = _metadata(field, params, extra)
    path = os.fspath(path)
    if fmt == "csv":
        rho = field.grid.rho_nodes()
        phi = field.grid.phi_nodes()
        x, p = xy_from_polar(params, rho[:, None], phi[None, :])
        lines = [f"# {k}={_fmt(v)}" for k, v in meta.items()]
        lines.append("rho,phi,x,p,W")
        for i in range(field.grid.n_rho):
            for j in range(field.grid.n_phi):
                lines.append(",".join(_fmt(v) for v in
                                      (rho[i], phi[j], x[i, j], p[i, j], field.values[i, j])))
        payload = "\n".join(lines) + "\n"
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(payload)
    else:
        doc = {
            "kind": "phasewave-field",
            "params": meta,
            "grid": {"rho_max": field.grid.rho_max, "n_rho": field.grid.n_rho,
                     "n_phi": field.grid.n_phi, "dt": field.grid.dt},
            "time": field.time_tag,
            "values": field.values.tolist(),
        }
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            json.dump(doc, fh)
            fh.write("\n")
    return path


def read_field(path):
    """Parse a field written by :func:`export_field`.

    Returns ``(Field2D, metadata_dict)``; values reproduce the exported
    doubles bit-exactly in both formats.
    """
    path = os.fspath(path)
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        grid = GridSpec(rho_max=doc["grid"]["rho_max"], n_rho=doc["grid"]["n_rho"],
                        n_phi=doc["grid"]["n_phi"], dt=doc["grid"].get("dt"))
        values = np.asarray(doc["values"], dtype=float)
        return Field2D(grid=grid, values=values, time_tag=doc["time"]), dict(doc["params"])

    meta = {}
    rows = []
    header_seen = False
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, raw = line[1:].strip().partition("=")
            key = key.strip()
            meta[key] = int(raw) if key in ("n", "ell", "n_rho", "n_phi") else float(raw)
            continue
        if not header_seen:
            if line != "rho,phi,x,p,W":
                raise ValueError(f"unexpected CSV header {line!r} in {path}")
            header_seen = True
            continue
        rows.append([float(tok) for tok in line.split(",")])
    for key in ("rho_max", "n_rho", "n_phi", "t"):
        if key not in meta:
            raise ValueError(f"CSV field file {path} lacks required metadata {key!r}")
    grid = GridSpec(rho_max=meta["rho_max"], n_rho=meta["n_rho"], n_phi=meta["n_phi"],
                    dt=meta.get("dt"))
    data = np.asarray(rows, dtype=float)
    if data.shape != (grid.n_rho * grid.n_phi, 5):
        raise ValueError(f"CSV field file {path} has {data.shape[0]} rows, "
                         f"expected {grid.n_rho * grid.n_phi}")
    values = data[:, 4].reshape(grid.n_rho, grid.n_phi)
    if not math.isfinite(meta["t"]):
        raise ValueError("non-finite time tag in metadata")
    return Field2D(grid=grid, values=values, time_tag=meta["t"]), meta
