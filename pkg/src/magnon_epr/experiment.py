"""Virtual cavity measurement: Rabi traces, frequency fits, EPR readout.

The simulated experiment mirrors what a microwave setup would record:
photon-to-magnon transfer probability versus drive duration, optionally
degraded by shot noise (binomial sampling with ``shots`` repetitions per
time point), then a sin^2 fit that recovers the Rabi frequency and with
it the ground-state EPR variance.  Everything is deterministic for a
fixed seed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from . import cavity as _cavity
from .cavity import (ALPHA_BLOCK, BETA_BLOCK, CavityBlock, coupling_strength,
                     epr_from_frequency, lambda_from_cavity,
                     transition_probabilities)
from .epr import EprResult, classify_regime, epr_ground
from .spinwave import bare_modes, bogoliubov, coupling_ratio, hybrid_modes

__all__ = [
    "TimeSeries",
    "FrequencyEstimate",
    "EXACT_SHOTS",
    "synthesize",
    "estimate_frequency",
    "reconstruct",
    "run_protocol",
    "derive_seed",
]

EXACT_SHOTS = "exact"

### Simulation defaults: 4 Rabi periods, 64 samples per period.
AUTO_PERIODS = 4.0
AUTO_SAMPLES_PER_PERIOD = 64


@dataclass(eq=False)
class TimeSeries:
    """Sampled transfer probabilities; ``shots`` is an int or ``"exact"``."""

    times: np.ndarray
    values: np.ndarray
    shots: int | str
    seed: int | None


@dataclass
class FrequencyEstimate:
    f_hat: float
    stderr: float
    fit_residual: float
    converged: bool


def derive_seed(master_seed, k_index):
    """Per-k-point seed, stable across worker counts."""
    state = np.random.SeedSequence([int(master_seed), int(k_index)]).generate_state(2)
    return int(state[0]) << 32 | int(state[1])


def synthesize(block, t_max, n_samples, shots=EXACT_SHOTS, seed=None):
    """Sample the transfer probability of ``block`` on [0, t_max].

    ``shots = "exact"`` records the closed-form probabilities; an
    integer draws binomial counts (shots repetitions per time point)
    with numpy's seeded generator, so a fixed seed reproduces the series
    byte for byte.

    Raises
    ------
    ValueError
        When the sampling density falls below 16 points per Rabi period
        ("Nyquist violation").  Records shorter than 4 periods only warn.
    """
    t_max = float(t_max)
    n_samples = int(n_samples)
    if not t_max > 0:
        raise ValueError(f"t_max must be > 0, got {t_max}")
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    try:
        f = _cavity.rabi(block).f
    except ValueError:
        f = None  # stationary block: constant series, no density constraint
    if f is not None:
        periods = t_max * f
        if n_samples < 16.0 * periods:
            raise ValueError(
                f"Nyquist violation: {n_samples / periods:.3g} samples per Rabi "
                f"period, >= 16 required (n_samples >= {math.ceil(16.0 * periods)})"
            )
        if periods < AUTO_PERIODS * (1.0 - 1e-9):
            warnings.warn(
                f"record spans only {periods:.3g} Rabi periods; >= 4 recommended",
                stacklevel=2,
            )
    times = np.linspace(0.0, t_max, n_samples)
    exact = np.array([transition_probabilities(block, t)[1] for t in times])
    if shots == EXACT_SHOTS:
        return TimeSeries(times=times, values=exact, shots=EXACT_SHOTS, seed=None)
    shots = int(shots)
    if shots < 1:
        raise ValueError(f"shots must be >= 1 or 'exact', got {shots}")
    if seed is None:
        raise ValueError("finite shots require a seed for reproducibility")
    rng = np.random.default_rng(int(seed))
    counts = rng.binomial(shots, np.clip(exact, 0.0, 1.0))
    return TimeSeries(times=times, values=counts / shots, shots=shots, seed=int(seed))


def _sin2_model(t, c, a, f, theta):
    return c + a * np.sin(np.pi * f * t + theta) ** 2


def estimate_frequency(series):
    """Rabi frequency from a transfer-probability record.

    A zero-padded (x8) FFT of the mean-removed series initializes f at
    the dominant spectral peak (the sin^2 signal oscillates at exactly
    the Rabi frequency f), then a least-squares fit of
    C + A sin^2(pi f t + theta) refines it; the phase offset is retained
    purely as a robustness term.  Needs >= 32 samples spanning at least
    two periods.

    Raises
    ------
    ValueError
        When no significant spectral peak exists ("no oscillation
        detected") or the record is too short.
    """
    t = np.asarray(series.times, dtype=float)
    v = np.asarray(series.values, dtype=float)
    n = t.size
    if n < 32:
        raise ValueError(f"need at least 32 samples, got {n}")
    span = t[-1] - t[0]
    if not span > 0:
        raise ValueError("times must be strictly increasing")
    if np.ptp(v) < 1e-12:
        raise ValueError("no oscillation detected: series is constant")

    dt = span / (n - 1)
    centered = v - v.mean()
    power = np.abs(np.fft.rfft(centered, 8 * n)) ** 2
    freqs = np.fft.rfftfreq(8 * n, dt)
    searchable = freqs >= 1.5 / span  # demand >= ~2 periods in the record
    if not np.any(searchable):
        raise ValueError("no oscillation detected: record too short")
    p_search = power[searchable]
    floor = np.median(p_search)
    peak = int(np.argmax(p_search))
    if floor > 0 and p_search[peak] < 25.0 * floor:
        raise ValueError("no oscillation detected: no significant spectral peak")
    f0 = float(freqs[searchable][peak])

    p0 = [float(v.min()), float(np.ptp(v)), f0, 0.0]
    converged = True
    try:
        with warnings.catch_warnings():
            ### a machine-exact fit has a singular scaled covariance; the
            ### inf stderr that results is handled below, so the warning
            ### is noise
            warnings.simplefilter("ignore", OptimizeWarning)
            popt, pcov = curve_fit(_sin2_model, t, v, p0=p0, maxfev=20000)
    except RuntimeError:
        popt, pcov = np.array(p0), np.full((4, 4), np.inf)
        converged = False
    f_hat = abs(float(popt[2]))
    var = float(pcov[2, 2])
    stderr = math.sqrt(var) if np.isfinite(var) and var >= 0 else math.inf
    residual = float(np.sqrt(np.mean((v - _sin2_model(t, *popt)) ** 2)))
    converged = bool(converged and f_hat > 0 and np.isfinite(f_hat))
    return FrequencyEstimate(f_hat=f_hat, stderr=stderr, fit_residual=residual,
                             converged=converged)


def reconstruct(estimate, detuning, lambda_k):
    """EPR variance from a fitted frequency, with first-order uncertainty.

    Delta0 = ((pi f_hat)^2 - detuning^2) / lambda^2 and
    sigma_Delta0 = 2 pi^2 f_hat sigma_f / lambda^2.
    """
    if not estimate.converged:
        raise ValueError("frequency estimate did not converge")
    delta0 = epr_from_frequency(estimate.f_hat, detuning, lambda_k)
    err = 2.0 * math.pi ** 2 * estimate.f_hat * estimate.stderr / lambda_k ** 2
    return EprResult(delta0=delta0, regime=classify_regime(delta0),
                     delta0_err=float(err))


RESONANT_ALPHA = "resonant_alpha"
RESONANT_BETA = "resonant_beta"


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def run_protocol(params, spec, k, cavity, acquisition, k_index=0,
                 include_series=False):
    """Full measurement chain at one k-point, reported as a JSON-ready dict.

    ``cavity`` holds ``omega`` (a number, "resonant_alpha" or
    "resonant_beta") and either ``lambda`` directly or ``A0`` (then
    lambda = A0 |k| sqrt(S)).  ``acquisition`` holds ``t_max`` and
    ``n_samples`` (numbers or "auto" = 4 periods / 64 per period),
    ``shots`` and ``seed``.  The cavity block nearest the photon
    frequency is measured.  Component errors propagate tagged with their
    stage name.
    """
    k = np.asarray(k, dtype=float).reshape(3)
    bare = _stage("bare_modes", bare_modes, params, spec, k)
    gamma = _stage("coupling_ratio", coupling_ratio, bare)
    factors = _stage("bogoliubov", bogoliubov, gamma)
    hybrid = _stage("hybrid_modes", hybrid_modes, bare, factors, params.B_field)

    if "lambda" in cavity and cavity["lambda"] is not None:
        lambda_k = float(cavity["lambda"])
    elif "A0" in cavity and cavity["A0"] is not None:
        lambda_k = lambda_from_cavity(float(cavity["A0"]),
                                      float(np.linalg.norm(k)), params.S)
    else:
        raise ValueError("cavity config needs 'lambda' or 'A0'")
    delta_k = _stage("coupling_strength", coupling_strength, lambda_k, factors)

    omega_cfg = cavity["omega"]
    if omega_cfg == RESONANT_ALPHA:
        omega_photon = hybrid.omega_alpha
    elif omega_cfg == RESONANT_BETA:
        omega_photon = hybrid.omega_beta
    else:
        omega_photon = float(omega_cfg)

    if abs(omega_photon - hybrid.omega_alpha) <= abs(omega_photon - hybrid.omega_beta):
        block = CavityBlock(hybrid.omega_alpha, omega_photon, delta_k, ALPHA_BLOCK)
    else:
        block = CavityBlock(hybrid.omega_beta, omega_photon, delta_k, BETA_BLOCK)

    rb = _stage("rabi", _cavity.rabi, block)
    t_max = acquisition.get("t_max", "auto")
    if t_max == "auto":
        t_max = AUTO_PERIODS * rb.period
    n_samples = acquisition.get("n_samples", "auto")
    if n_samples == "auto":
        n_samples = math.ceil(AUTO_SAMPLES_PER_PERIOD * float(t_max) * rb.f)
    shots = acquisition.get("shots", EXACT_SHOTS)
    seed = acquisition.get("seed")

    series = _stage("synthesize", synthesize, block, t_max, n_samples,
                    shots=shots, seed=seed)
    estimate = _stage("estimate_frequency", estimate_frequency, series)
    recon = _stage("reconstruct", reconstruct, estimate, block.detuning, lambda_k)
    truth = epr_ground(factors.r, factors.phi)
    rel_err = abs(recon.delta0 - truth.delta0) / truth.delta0

    report = {
        "k_index": int(k_index),
        "k": [float(c) for c in k],
        "bare": {
            "epsilon": bare.epsilon,
            "g": [bare.g.real, bare.g.imag],
            "omega_a": bare.omega_a,
            "omega_b": bare.omega_b,
        },
        "bogoliubov": {
            "r": factors.r,
            "phi": factors.phi,
            "abs_gamma": abs(factors.Gamma),
        },
        "hybrid": {
            "epsilon_tilde": hybrid.epsilon_tilde,
            "omega_alpha": hybrid.omega_alpha,
            "omega_beta": hybrid.omega_beta,
        },
        "cavity": {
            "block": block.sign,
            "omega_photon": block.omega_photon,
            "lambda": lambda_k,
            "detuning": block.detuning,
            "delta_k": [delta_k.real, delta_k.imag],
        },
        "rabi": {"f": rb.f, "period": rb.period, "visibility": rb.visibility},
        "acquisition": {
            "t_max": float(t_max),
            "n_samples": int(n_samples),
            "shots": series.shots,
            "seed": series.seed,
        },
        "estimate": {
            "f_hat": estimate.f_hat,
            "stderr": estimate.stderr,
            "fit_residual": estimate.fit_residual,
            "converged": estimate.converged,
        },
        "reconstruction": {
            "delta0": recon.delta0,
            "delta0_err": recon.delta0_err,
            "regime": recon.regime,
        },
        "delta0_true": truth.delta0,
        "rel_err": rel_err,
    }
    if include_series:
        report["series"] = {
            "times": series.times.tolist(),
            "values": series.values.tolist(),
        }
    return report
