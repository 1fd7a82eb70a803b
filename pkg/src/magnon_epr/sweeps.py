"""Parallel k-path sweeps behind the CLI subcommands.

Each sweep maps a pure row function over the k-path with a process
pool, gathers in path order, and emits CSV/JSON tables with stable
formatting, so single- and multi-worker runs produce byte-identical
files.  Unstable k-points (|Gamma| >= 1 or a nonpositive bare mode) are
rows flagged ``unstable``, not failures; a sweep only fails when every
point is unusable.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .config import ConfigError
from .epr import epr_ground
from .experiment import derive_seed, run_protocol
from .lattice import kpath
from .spinwave import (MagnonInstabilityError, bare_modes, bogoliubov,
                       coupling_ratio, hybrid_modes)
from .squeezed import choose_truncation, excited_sequence, ground_entropy

__all__ = [
    "run_dispersion",
    "run_entanglement",
    "run_epr_path",
    "run_experiment",
    "run_validate",
    "resolve_threads",
    "DISPERSION_COLUMNS",
    "EPR_PATH_COLUMNS",
    "EXPERIMENT_COLUMNS",
]

STATUS_OK = "ok"
STATUS_UNSTABLE = "unstable"
STATUS_ERROR = "error"

DISPERSION_COLUMNS = ("k_index", "kx", "ky", "kz", "epsilon", "abs_g", "omega_a",
                      "omega_b", "omega_alpha", "omega_beta", "abs_gamma", "r",
                      "phi", "status")
EPR_PATH_COLUMNS = ("k_index", "k_scalar", "delta0", "regime")
EXPERIMENT_COLUMNS = ("k_index", "f_hat", "delta0_true", "delta0_est", "rel_err",
                      "converged", "status")


def resolve_threads(threads):
    if threads == "auto" or threads is None:
        return max(1, os.cpu_count() or 1)
    threads = int(threads)
    if threads < 1:
        raise ConfigError(f"threads: must be >= 1, got {threads}")
    return threads


def parallel_map(fn, items, threads):
    """Ordered map, in-process for one worker, process pool otherwise."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")


def _write_json_rows(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(rows, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _emit_table(out_dir, name, columns, rows, formats):
    paths = []
    if "csv" in formats:
        p = os.path.join(out_dir, f"{name}.csv")
        _write_csv(p, columns, rows)
        paths.append(p)
    if "json" in formats:
        p = os.path.join(out_dir, f"{name}.json")
        _write_json_rows(p, rows)
        paths.append(p)
    return paths


def _path_points(cfg):
    pts = kpath(cfg.lattice, cfg.kpath.direction, cfg.kpath.k_max,
                cfg.kpath.n_points)
    return list(enumerate(pts))


def _out_dir(cfg):
    os.makedirs(cfg.output.directory, exist_ok=True)
    return cfg.output.directory


### ---- row functions (top level so a process pool can pickle them) ----


def _dispersion_row(item, params, spec):
    index, k = item
    row = dict.fromkeys(DISPERSION_COLUMNS)
    row.update(k_index=index, kx=k[0], ky=k[1], kz=k[2], status=STATUS_OK)
    try:
        bare = bare_modes(params, spec, k)
    except ValueError:
        row["status"] = STATUS_UNSTABLE
        return row
    gamma = coupling_ratio(bare)
    row.update(epsilon=bare.epsilon, abs_g=abs(bare.g), omega_a=bare.omega_a,
               omega_b=bare.omega_b, abs_gamma=abs(gamma))
    try:
        factors = bogoliubov(gamma)
    except MagnonInstabilityError:
        row["status"] = STATUS_UNSTABLE
        return row
    hybrid = hybrid_modes(bare, factors, params.B_field)
    row.update(omega_alpha=hybrid.omega_alpha, omega_beta=hybrid.omega_beta,
               r=factors.r, phi=factors.phi)
    return row


def _entanglement_row(item, params, spec, xy_pairs, tail_tol, unit_scale):
    index, k = item
    columns = ["k_index", "abs_gamma", "r", "delta0", "E_ground"]
    columns += [f"E_{x}{y}" for x, y in xy_pairs]
    row = dict.fromkeys(columns)
    row.update(k_index=index, status=STATUS_OK)
    try:
        bare = bare_modes(params, spec, k)
        factors = bogoliubov(coupling_ratio(bare))
    except ValueError:  # covers MagnonInstabilityError and bare-mode failures
        row["status"] = STATUS_UNSTABLE
        return row
    r, phi = factors.r, factors.phi
    row.update(abs_gamma=abs(factors.Gamma), r=r,
               delta0=epr_ground(r, phi).delta0,
               E_ground=ground_entropy(r) * unit_scale)
    try:
        for x, y in xy_pairs:
            if r == 0.0:
                energy = 0.0  # decoupled limit: exact Fock product, separable
            elif x == 0 and y == 0:
                energy = ground_entropy(r)
            else:
                seq = excited_sequence(r, phi, x, y, tail_tol)
                lam = np.abs(seq.values) ** 2
                lam = lam[lam > 0]
                energy = float(-np.sum(lam * np.log(lam)))
            row[f"E_{x}{y}"] = energy * unit_scale
    except ValueError:
        row["status"] = STATUS_ERROR
    return row


def _epr_path_row(item, params, spec):
    index, k = item
    row = dict.fromkeys(EPR_PATH_COLUMNS)
    row.update(k_index=index, k_scalar=float(np.linalg.norm(k)))
    try:
        bare = bare_modes(params, spec, k)
        factors = bogoliubov(coupling_ratio(bare))
    except ValueError:
        row["regime"] = STATUS_UNSTABLE
        return row
    result = epr_ground(factors.r, factors.phi)
    row.update(delta0=result.delta0, regime=result.regime)
    return row


def _experiment_row(item, params, spec, cavity_dict, acq, master_seed,
                    include_series):
    index, k = item
    if acq["shots"] != "exact":
        acq = dict(acq, seed=derive_seed(master_seed, index))
    try:
        report = run_protocol(params, spec, k, cavity_dict, acq, k_index=index,
                              include_series=include_series)
    except ValueError as exc:
        return {"k_index": index, "error": str(exc)}
    return report


### ---- sweep drivers ----


def run_dispersion(cfg):
    """Bare and hybridized dispersions along the k-path."""
    rows = parallel_map(
        partial(_dispersion_row, params=cfg.model, spec=cfg.lattice),
        _path_points(cfg), resolve_threads(cfg.threads))
    if all(r["status"] == STATUS_UNSTABLE for r in rows):
        raise RuntimeError("all k-points unstable")
    return _emit_table(_out_dir(cfg), "dispersion", DISPERSION_COLUMNS, rows,
                       cfg.output.formats)


def run_entanglement(cfg, bits=False):
    """Entropies and Delta0 along the k-path for the configured (x, y)."""
    if cfg.entanglement is None:
        raise ConfigError("entanglement: required section missing")
    xy = cfg.entanglement.xy
    unit_scale = 1.0 / math.log(2.0) if bits else 1.0
    columns = (["k_index", "abs_gamma", "r", "delta0", "E_ground"]
               + [f"E_{x}{y}" for x, y in xy] + ["status"])
    rows = parallel_map(
        partial(_entanglement_row, params=cfg.model, spec=cfg.lattice,
                xy_pairs=xy, tail_tol=cfg.entanglement.tail_tol,
                unit_scale=unit_scale),
        _path_points(cfg), resolve_threads(cfg.threads))
    if all(r["status"] != STATUS_OK for r in rows):
        raise RuntimeError("all k-points unstable or failed")
    return _emit_table(_out_dir(cfg), "entanglement", columns, rows,
                       cfg.output.formats)


def run_epr_path(cfg):
    """Ground-state EPR variance and regime along the k-path."""
    rows = parallel_map(
        partial(_epr_path_row, params=cfg.model, spec=cfg.lattice),
        _path_points(cfg), resolve_threads(cfg.threads))
    if all(r["regime"] == STATUS_UNSTABLE for r in rows):
        raise RuntimeError("all k-points unstable")
    return _emit_table(_out_dir(cfg), "epr_path", EPR_PATH_COLUMNS, rows,
                       cfg.output.formats)


def run_experiment(cfg):
    """Full measurement protocol at every k-point.

    Emits one JSON report per k-point plus a summary CSV; per-point
    failures become error entries and the sweep continues.
    """
    if cfg.cavity is None:
        raise ConfigError("cavity: required section missing")
    out_dir = _out_dir(cfg)
    dump = cfg.output.dump_series
    reports = parallel_map(
        partial(_experiment_row, params=cfg.model, spec=cfg.lattice,
                cavity_dict=cfg.cavity.as_protocol_dict(),
                acq=cfg.acquisition.as_protocol_dict(),
                master_seed=cfg.acquisition.seed, include_series=dump),
        _path_points(cfg), resolve_threads(cfg.threads))
    if all("error" in rep for rep in reports):
        raise RuntimeError("all k-points failed: " + reports[0]["error"])

    paths = []
    summary = []
    for rep in reports:
        index = rep["k_index"]
        if "error" in rep:
            summary.append({"k_index": index, "f_hat": None, "delta0_true": None,
                            "delta0_est": None, "rel_err": None, "converged": None,
                            "status": rep["error"]})
        else:
            series = rep.pop("series", None)
            if series is not None and "csv" in cfg.output.formats:
                p = os.path.join(out_dir, f"series_k{index:04d}.csv")
                _write_csv(p, ("t", "value"),
                           [{"t": t, "value": v}
                            for t, v in zip(series["times"], series["values"])])
                paths.append(p)
            summary.append({"k_index": index,
                            "f_hat": rep["estimate"]["f_hat"],
                            "delta0_true": rep["delta0_true"],
                            "delta0_est": rep["reconstruction"]["delta0"],
                            "rel_err": rep["rel_err"],
                            "converged": rep["estimate"]["converged"],
                            "status": STATUS_OK})
        if "json" in cfg.output.formats:
            p = os.path.join(out_dir, f"report_k{index:04d}.json")
            with open(p, "w", encoding="utf-8", newline="") as fh:
                json.dump(rep, fh, indent=2, sort_keys=True)
                fh.write("\n")
            paths.append(p)
    if "csv" in cfg.output.formats:
        p = os.path.join(out_dir, "experiment_summary.csv")
        _write_csv(p, EXPERIMENT_COLUMNS, summary)
        paths.append(p)
    return paths


def run_validate(cfg, log=print):
    """Dry-run diagnostics: stability map, truncation sizes, runtime estimate.

    Never raises; returns the process exit code (0 unless nothing on the
    path is usable).
    """
    points = _path_points(cfg)
    log(f"model: {cfg.model}")
    log(f"lattice: {cfg.lattice.name} (z1={cfg.lattice.z1}, z2={cfg.lattice.z2}, "
        f"a={cfg.lattice.lattice_constant:g})")
    log(f"k-path: {len(points)} points to k_max={cfg.kpath.k_max:g} along "
        f"{cfg.kpath.direction.tolist()}")

    unstable = []
    r_values = []
    for index, k in points:
        try:
            factors = bogoliubov(coupling_ratio(bare_modes(cfg.model, cfg.lattice, k)))
        except ValueError:
            unstable.append(index)
            continue
        r_values.append((index, factors.r))
    if unstable:
        log(f"warning: {len(unstable)} unstable k-point(s) (|Gamma| >= 1 or "
            f"nonpositive bare mode): indices {unstable}")
    if not r_values:
        log("error: all k-points unstable; runtime commands will fail")
        return 2

    tail_tol = cfg.entanglement.tail_tol if cfg.entanglement else 1e-12
    r_max_index, r_max = max(r_values, key=lambda item: item[1])
    try:
        n_max = choose_truncation(r_max, tail_tol)
        log(f"truncation: ground-state N = {n_max} at k_index {r_max_index} "
            f"(r_max = {r_max:.4g}, tail_tol = {tail_tol:g})")
    except ValueError as exc:
        log(f"warning: {exc}")

    ### time one representative stable point and scale up
    index, k = points[r_max_index]
    t0 = time.perf_counter()
    _dispersion_row((index, k), cfg.model, cfg.lattice)
    if cfg.entanglement:
        _entanglement_row((index, k), cfg.model, cfg.lattice,
                          cfg.entanglement.xy, tail_tol, 1.0)
    if cfg.cavity:
        _experiment_row((index, k), cfg.model, cfg.lattice,
                        cfg.cavity.as_protocol_dict(),
                        cfg.acquisition.as_protocol_dict(),
                        cfg.acquisition.seed, False)
    per_point = time.perf_counter() - t0
    threads = resolve_threads(cfg.threads)
    log(f"estimated runtime: ~{per_point * len(points) / threads:.2f} s "
        f"on {threads} worker(s) ({per_point * 1e3:.1f} ms/point)")
    log("config valid")
    return 0
