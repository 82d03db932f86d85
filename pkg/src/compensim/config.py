"""INI run configuration.

One section per concern. ``[run]`` picks the model, the section named after
the model holds its parameters, and ``[sweep]``, ``[fourier]`` and ``[magic]``
hold subcommand settings. Every key maps to exactly one field; anything else
is rejected with the key named. ``docs/config-schema.md`` lists the keys.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .dicke import DickeConfig
from .stirap import StirapConfig
from .twolevel import TwoLevelConfig

MODEL_TYPES = {"twolevel": TwoLevelConfig, "dicke": DickeConfig, "stirap": StirapConfig}


class ConfigError(ValueError):
    """Schema or value error; ``key`` is ``section.option`` when known."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    num: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


@dataclass(frozen=True)
class SweepSection:
    axis1: Axis
    axis2: Axis
    n_checkpoint: int = 50


@dataclass(frozen=True)
class FourierSection:
    n_periods: int = 64
    samples_per_period: int = 64
    mode: str = "point"


@dataclass(frozen=True)
class MagicSection:
    lower: float
    upper: float
    n_checkpoint: int | None = None
    tol: float = 1e-4


@dataclass(frozen=True)
class RunConfig:
    model: str
    params: object
    samples_per_period: int = 64
    sweep: SweepSection | None = None
    fourier: FourierSection = field(default_factory=FourierSection)
    magic: MagicSection | None = None


_RUN_KEYS = {"model": str, "samples_per_period": int}
_FOURIER_KEYS = {"n_periods": int, "samples_per_period": int, "mode": str}
_MAGIC_KEYS = {"lower": float, "upper": float, "n_checkpoint": int, "tol": float}
_SWEEP_KEYS = {"n_checkpoint": int}
for _i in (1, 2):
    _SWEEP_KEYS.update({f"axis{_i}": str, f"axis{_i}_start": float, f"axis{_i}_stop": float, f"axis{_i}_num": int})


def _convert(section: str, key: str, raw: str, kind):
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        if kind is bool:
            return {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}[raw.lower()]
        return raw.strip()
    except (ValueError, KeyError):
        raise ConfigError(f"cannot read {raw!r} as {kind.__name__}", f"{section}.{key}") from None


def _read_section(cp, section: str, schema: dict, required=()) -> dict:
    out = {}
    for key, raw in cp.items(section):
        if key not in schema:
            raise ConfigError("unknown key", f"{section}.{key}")
        out[key] = _convert(section, key, raw, schema[key])
    for key in required:
        if key not in out:
            raise ConfigError("missing required key", f"{section}.{key}")
    return out


def model_schema(model: str) -> dict:
    kinds = {"int": int, "float": float, "bool": bool}
    schema = {}
    for f in fields(MODEL_TYPES[model]):
        t = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", "str")
        schema[f.name] = kinds.get(t, str)
    return schema


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, default_section="__none__")
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    if not cp.has_section("run"):
        raise ConfigError("missing required section [run]")
    run = _read_section(cp, "run", _RUN_KEYS, required=("model",))
    model = run["model"]
    if model not in MODEL_TYPES:
        raise ConfigError(f"unknown model {model!r}, expected one of {sorted(MODEL_TYPES)}", "run.model")
    allowed = {"run", model, "sweep", "fourier", "magic"}
    for section in cp.sections():
        if section not in allowed:
            raise ConfigError(f"unknown section [{section}] for model {model!r}")

    values = _read_section(cp, model, model_schema(model)) if cp.has_section(model) else {}
    try:
        params = MODEL_TYPES[model](**values)
    except ValueError as exc:
        # validators phrase messages as "<field> must ...", so recover the key
        name = str(exc).split()[0]
        raise ConfigError(str(exc), f"{model}.{name}" if name in values else model) from None

    sweep = None
    if cp.has_section("sweep"):
        s = _read_section(
            cp, "sweep", _SWEEP_KEYS,
            required=[f"axis{i}{suffix}" for i in (1, 2) for suffix in ("", "_start", "_stop", "_num")],
        )
        axes = []
        for i in (1, 2):
            name = s[f"axis{i}"]
            if name not in {f.name for f in fields(params)}:
                raise ConfigError(f"{name!r} is not a {model} parameter", f"sweep.axis{i}")
            if s[f"axis{i}_num"] < 1:
                raise ConfigError("must be at least 1", f"sweep.axis{i}_num")
            if s[f"axis{i}_num"] > 1 and s[f"axis{i}_start"] == s[f"axis{i}_stop"]:
                raise ConfigError("start equals stop with more than one point", f"sweep.axis{i}_stop")
            axes.append(Axis(name, s[f"axis{i}_start"], s[f"axis{i}_stop"], s[f"axis{i}_num"]))
        sweep = SweepSection(axes[0], axes[1], s.get("n_checkpoint", 50))
        if not 1 <= sweep.n_checkpoint <= 10_000:
            raise ConfigError("must be in 1..10000", "sweep.n_checkpoint")

    fourier = FourierSection()
    if cp.has_section("fourier"):
        fourier = FourierSection(**_read_section(cp, "fourier", _FOURIER_KEYS))
        if fourier.mode not in ("point", "grid"):
            raise ConfigError("must be 'point' or 'grid'", "fourier.mode")
        if fourier.n_periods < 8:
            raise ConfigError("must be at least 8", "fourier.n_periods")
        if fourier.samples_per_period < 16:
            raise ConfigError("must be at least 16", "fourier.samples_per_period")

    magic = None
    if cp.has_section("magic"):
        magic = MagicSection(**_read_section(cp, "magic", _MAGIC_KEYS, required=("lower", "upper")))
        if magic.n_checkpoint is not None and not 1 <= magic.n_checkpoint <= 10_000:
            raise ConfigError("must be in 1..10000", "magic.n_checkpoint")
        if not magic.tol > 0:
            raise ConfigError("must be positive", "magic.tol")

    spp = run.get("samples_per_period", 64)
    if spp < 1:
        raise ConfigError("must be positive", "run.samples_per_period")
    return RunConfig(model, params, spp, sweep, fourier, magic)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
