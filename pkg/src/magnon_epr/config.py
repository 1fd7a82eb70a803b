"""YAML run configuration: parsing, validation, defaults.

Validation is strict: unknown keys are rejected and every error names
the offending key path (``model.J1: must be >= 0``).  Sections that a
subcommand does not need may be omitted; the subcommand checks for the
ones it requires.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from .lattice import LatticeSpec, build_preset, from_vectors, PRESET_NAMES
from .spinwave import ModelParams

__all__ = [
    "ConfigError",
    "RunConfig",
    "KPathConfig",
    "EntanglementConfig",
    "CavityConfig",
    "AcquisitionConfig",
    "OutputConfig",
    "load_config",
    "lattice_to_config",
]


class ConfigError(ValueError):
    """Malformed run configuration; message carries the key path."""


@dataclass
class KPathConfig:
    direction: np.ndarray
    k_max: float
    n_points: int


@dataclass
class EntanglementConfig:
    xy: list
    tail_tol: float


@dataclass
class CavityConfig:
    omega: float | str
    lambda_k: float | None
    A0: float | None

    def as_protocol_dict(self):
        return {"omega": self.omega, "lambda": self.lambda_k, "A0": self.A0}


@dataclass
class AcquisitionConfig:
    t_max: float | str = "auto"
    n_samples: int | str = "auto"
    shots: int | str = "exact"
    seed: int = 0

    def as_protocol_dict(self, seed=None):
        return {
            "t_max": self.t_max,
            "n_samples": self.n_samples,
            "shots": self.shots,
            "seed": self.seed if seed is None else seed,
        }


@dataclass
class OutputConfig:
    directory: str = "out"
    formats: tuple = ("csv", "json")
    dump_series: bool = False


@dataclass
class RunConfig:
    model: ModelParams
    lattice: LatticeSpec
    kpath: KPathConfig
    output: OutputConfig
    entanglement: EntanglementConfig | None = None
    cavity: CavityConfig | None = None
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    threads: int | str = "auto"


def _mapping(node, path):
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected a mapping, got {type(node).__name__}")
    return node


def _reject_unknown(node, allowed, path):
    unknown = sorted(set(node) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}: unknown key")


def _number(node, key, path, required=True, default=None):
    if key not in node or node[key] is None:
        if required:
            raise ConfigError(f"{path}.{key}: required")
        return default
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _integer(node, key, path, required=True, default=None):
    if key not in node or node[key] is None:
        if required:
            raise ConfigError(f"{path}.{key}: required")
        return default
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {value!r}")
    return int(value)


def _parse_model(node):
    node = _mapping(node, "model")
    keys = ("J1", "J2", "D1", "D2", "K_aniso", "B_field", "S")
    _reject_unknown(node, keys, "model")
    values = {
        "J1": _number(node, "J1", "model"),
        "K_aniso": _number(node, "K_aniso", "model"),
        "S": _number(node, "S", "model"),
        "J2": _number(node, "J2", "model", required=False, default=0.0),
        "D1": _number(node, "D1", "model", required=False, default=0.0),
        "D2": _number(node, "D2", "model", required=False, default=0.0),
        "B_field": _number(node, "B_field", "model", required=False, default=0.0),
    }
    try:
        return ModelParams(**values)
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from exc


def _parse_vectors(node, key, path):
    raw = node.get(key)
    if raw is None:
        raise ConfigError(f"{path}.{key}: required")
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}.{key}: expected a list of 3-vectors") from exc
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ConfigError(f"{path}.{key}: expected a list of 3-vectors")
    return arr


def _parse_lattice(node):
    if isinstance(node, str):
        try:
            return build_preset(node)
        except ValueError as exc:
            raise ConfigError(f"lattice: {exc}") from exc
    node = _mapping(node, "lattice")
    if "preset" in node:
        _reject_unknown(node, ("preset", "lattice_constant"), "lattice")
        name = node["preset"]
        if name not in PRESET_NAMES:
            raise ConfigError(f"lattice.preset: unknown lattice preset {name!r}")
        a = _number(node, "lattice_constant", "lattice", required=False, default=1.0)
        return build_preset(name, a)
    _reject_unknown(node, ("name", "lattice_constant", "nn_vectors", "nnn_vectors"),
                    "lattice")
    name = node.get("name", "custom")
    a = _number(node, "lattice_constant", "lattice", required=False, default=1.0)
    nn = _parse_vectors(node, "nn_vectors", "lattice")
    nnn = _parse_vectors(node, "nnn_vectors", "lattice")
    try:
        return from_vectors(name, a, nn, nnn)
    except ValueError as exc:
        raise ConfigError(f"lattice: {exc}") from exc


def _parse_kpath(node):
    node = _mapping(node, "kpath")
    _reject_unknown(node, ("direction", "k_max", "n_points"), "kpath")
    raw = node.get("direction")
    if raw is None:
        raise ConfigError("kpath.direction: required")
    direction = np.asarray(raw, dtype=float)
    if direction.shape != (3,):
        raise ConfigError("kpath.direction: expected a 3-vector")
    if np.linalg.norm(direction) == 0:
        raise ConfigError("kpath.direction: must be nonzero")
    k_max = _number(node, "k_max", "kpath")
    if not k_max > 0:
        raise ConfigError(f"kpath.k_max: must be > 0, got {k_max}")
    n_points = _integer(node, "n_points", "kpath")
    if n_points < 2:
        raise ConfigError(f"kpath.n_points: must be >= 2, got {n_points}")
    return KPathConfig(direction=direction, k_max=k_max, n_points=n_points)


def _parse_entanglement(node):
    node = _mapping(node, "entanglement")
    _reject_unknown(node, ("xy", "tail_tol"), "entanglement")
    raw = node.get("xy", [[1, 0], [1, 1]])
    if not isinstance(raw, list) or not raw:
        raise ConfigError("entanglement.xy: expected a non-empty list of [x, y] pairs")
    pairs = []
    for i, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or any(isinstance(p, bool) or not isinstance(p, int) or p < 0
                       for p in pair)):
            raise ConfigError(
                f"entanglement.xy[{i}]: expected a pair of integers >= 0, got {pair!r}"
            )
        pairs.append((int(pair[0]), int(pair[1])))
    tail_tol = _number(node, "tail_tol", "entanglement", required=False,
                       default=1e-12)
    if not 0 < tail_tol < 1:
        raise ConfigError(f"entanglement.tail_tol: must be in (0, 1), got {tail_tol}")
    return EntanglementConfig(xy=pairs, tail_tol=tail_tol)


def _parse_cavity(node):
    node = _mapping(node, "cavity")
    _reject_unknown(node, ("omega", "lambda", "A0"), "cavity")
    omega = node.get("omega")
    if omega is None:
        raise ConfigError("cavity.omega: required")
    if isinstance(omega, str):
        if omega not in ("resonant_alpha", "resonant_beta"):
            raise ConfigError(
                f"cavity.omega: expected a number, 'resonant_alpha' or "
                f"'resonant_beta', got {omega!r}"
            )
    elif isinstance(omega, bool) or not isinstance(omega, (int, float)):
        raise ConfigError(f"cavity.omega: expected a number or resonance tag, "
                          f"got {omega!r}")
    else:
        omega = float(omega)
    lam = _number(node, "lambda", "cavity", required=False)
    a0 = _number(node, "A0", "cavity", required=False)
    if lam is None and a0 is None:
        raise ConfigError("cavity.lambda: required (or provide cavity.A0)")
    if lam is not None and lam <= 0:
        raise ConfigError(f"cavity.lambda: must be > 0, got {lam}")
    if a0 is not None and a0 <= 0:
        raise ConfigError(f"cavity.A0: must be > 0, got {a0}")
    return CavityConfig(omega=omega, lambda_k=lam, A0=a0)


def _parse_acquisition(node):
    node = _mapping(node, "acquisition")
    _reject_unknown(node, ("t_max", "n_samples", "shots", "seed"), "acquisition")
    t_max = node.get("t_max", "auto")
    if t_max != "auto":
        if isinstance(t_max, bool) or not isinstance(t_max, (int, float)) or t_max <= 0:
            raise ConfigError(f"acquisition.t_max: must be > 0 or 'auto', got {t_max!r}")
        t_max = float(t_max)
    n_samples = node.get("n_samples", "auto")
    if n_samples != "auto":
        if isinstance(n_samples, bool) or not isinstance(n_samples, int) or n_samples < 2:
            raise ConfigError(
                f"acquisition.n_samples: must be an integer >= 2 or 'auto', "
                f"got {n_samples!r}"
            )
    shots = node.get("shots", "exact")
    if shots != "exact":
        if isinstance(shots, bool) or not isinstance(shots, int) or shots < 1:
            raise ConfigError(
                f"acquisition.shots: must be an integer >= 1 or 'exact', got {shots!r}"
            )
    seed = _integer(node, "seed", "acquisition", required=False, default=0)
    return AcquisitionConfig(t_max=t_max, n_samples=n_samples, shots=shots, seed=seed)


def _parse_output(node):
    node = _mapping(node, "output")
    _reject_unknown(node, ("directory", "formats", "dump_series"), "output")
    directory = node.get("directory", "out")
    if not isinstance(directory, str) or not directory:
        raise ConfigError(f"output.directory: expected a non-empty string, "
                          f"got {directory!r}")
    formats = node.get("formats", ["csv", "json"])
    if isinstance(formats, str):
        formats = [formats]
    if (not isinstance(formats, list) or not formats
            or any(f not in ("csv", "json") for f in formats)):
        raise ConfigError(f"output.formats: expected a subset of [csv, json], "
                          f"got {formats!r}")
    dump_series = node.get("dump_series", False)
    if not isinstance(dump_series, bool):
        raise ConfigError(f"output.dump_series: expected a boolean, got {dump_series!r}")
    return OutputConfig(directory=directory, formats=tuple(formats),
                        dump_series=dump_series)


TOP_LEVEL_KEYS = ("model", "lattice", "kpath", "entanglement", "cavity",
                  "acquisition", "output", "threads")


def load_config(path):
    """Parse and validate a YAML run config into a :class:`RunConfig`."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    raw = _mapping(raw, "config")
    _reject_unknown(raw, TOP_LEVEL_KEYS, "config")
    for key in ("model", "lattice", "kpath"):
        if key not in raw:
            raise ConfigError(f"{key}: required section missing")
    threads = raw.get("threads", "auto")
    if threads != "auto":
        if isinstance(threads, bool) or not isinstance(threads, int) or threads < 1:
            raise ConfigError(f"threads: must be a positive integer or 'auto', "
                              f"got {threads!r}")
    return RunConfig(
        model=_parse_model(raw["model"]),
        lattice=_parse_lattice(raw["lattice"]),
        kpath=_parse_kpath(raw["kpath"]),
        entanglement=(_parse_entanglement(raw["entanglement"])
                      if "entanglement" in raw else None),
        cavity=_parse_cavity(raw["cavity"]) if "cavity" in raw else None,
        acquisition=(_parse_acquisition(raw["acquisition"])
                     if "acquisition" in raw else AcquisitionConfig()),
        output=_parse_output(raw["output"]) if "output" in raw else OutputConfig(),
        threads=threads,
    )


def lattice_to_config(spec):
    """Serialize a :class:`LatticeSpec` back to its config mapping."""
    return {
        "name": spec.name,
        "lattice_constant": spec.lattice_constant,
        "nn_vectors": spec.nn_vectors.tolist(),
        "nnn_vectors": spec.nnn_vectors.tolist(),
    }
