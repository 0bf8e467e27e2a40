"""Flat key-value configuration files and sweep grid files.

The configuration format is a plain text file of ``key = value`` lines (a
``#`` starts a comment).  Keys are fixed and SI-suffixed; unknown or
duplicate keys are rejected so that sweep inputs diff cleanly.  A grid file
uses the same keys with comma-separated value lists; the cartesian product
of the lists, in file order with the last key varying fastest, defines the
sweep points.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Mapping

from .errors import ConfigurationError
from .model import (
    BodyParams,
    CompressionPolicy,
    Configuration,
    LegGeometry,
    LossModel,
    SpringParams,
)

REQUIRED_KEYS = (
    "mass_kg",
    "gravity_mps2",
    "segment_length_m",
    "standing_length_m",
    "max_deformation_m",
    "spring_stiffness_n_per_m",
    "spring_free_length_m",
    "spring_solid_length_m",
    "initial_spring_position_m",
)

OPTIONAL_KEYS = (
    "force_cap_n",  # default: body weight
    "efficiency",  # default 1.0
    "ratchet_pitch_m",  # default 0.0
    "policy",  # force_limited | full_range, default force_limited
    "max_iterations",  # default 100
    "sample_count",  # default 1000
)

ALL_KEYS = REQUIRED_KEYS + OPTIONAL_KEYS

_INT_KEYS = ("max_iterations", "sample_count")
_POLICIES = {p.value: p for p in CompressionPolicy}


def parse_config_text(text: str, source: str = "<config>") -> Configuration:
    """Parse configuration text; see :func:`parse_config` for the file form."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in ALL_KEYS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigurationError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, value.strip(), source, lineno)
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigurationError(f"{source}: missing required keys: {', '.join(missing)}")
    return config_from_values(values)


def parse_config(path: str | Path) -> Configuration:
    """Read and validate a configuration file.

    Raises
    ------
    ConfigurationError
        On unknown, duplicate, or missing keys, unparsable values, or any
        violated parameter bound; the message names the key and the bound.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))


def config_from_values(values: Mapping[str, object]) -> Configuration:
    """Build a validated Configuration from a flat key-value mapping."""
    unknown = [k for k in values if k not in ALL_KEYS]
    if unknown:
        raise ConfigurationError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigurationError(f"missing required keys: {', '.join(missing)}")

    def num(key: str) -> float:
        return _coerce_float(key, values[key])

    policy_raw = values.get("policy", CompressionPolicy.FORCE_LIMITED.value)
    if isinstance(policy_raw, CompressionPolicy):
        policy = policy_raw
    elif str(policy_raw) in _POLICIES:
        policy = _POLICIES[str(policy_raw)]
    else:
        raise ConfigurationError(
            f"policy must be one of {sorted(_POLICIES)}, got {policy_raw!r}"
        )

    body = BodyParams(mass=num("mass_kg"), gravity=num("gravity_mps2"))
    geom = LegGeometry(
        segment_length=num("segment_length_m"),
        standing_length=num("standing_length_m"),
        max_deformation=num("max_deformation_m"),
    )
    spring = SpringParams(
        stiffness=num("spring_stiffness_n_per_m"),
        free_length=num("spring_free_length_m"),
        solid_length=num("spring_solid_length_m"),
    )
    loss = LossModel(
        efficiency=num("efficiency") if "efficiency" in values else 1.0,
        ratchet_pitch=num("ratchet_pitch_m") if "ratchet_pitch_m" in values else 0.0,
    )
    return Configuration(
        body=body,
        leg=geom,
        spring=spring,
        initial_spring_position=num("initial_spring_position_m"),
        force_cap=num("force_cap_n") if "force_cap_n" in values else None,
        loss=loss,
        policy=policy,
        max_iterations=_coerce_int("max_iterations", values.get("max_iterations", 100)),
        sample_count=_coerce_int("sample_count", values.get("sample_count", 1000)),
    )


def values_from_config(config: Configuration) -> dict[str, object]:
    """Flat key-value view of a Configuration (inverse of config_from_values)."""
    return {
        "mass_kg": config.body.mass,
        "gravity_mps2": config.body.gravity,
        "segment_length_m": config.leg.segment_length,
        "standing_length_m": config.leg.standing_length,
        "max_deformation_m": config.leg.max_deformation,
        "spring_stiffness_n_per_m": config.spring.stiffness,
        "spring_free_length_m": config.spring.free_length,
        "spring_solid_length_m": config.spring.solid_length,
        "initial_spring_position_m": config.initial_spring_position,
        "force_cap_n": config.force_cap,
        "efficiency": config.loss.efficiency,
        "ratchet_pitch_m": config.loss.ratchet_pitch,
        "policy": config.policy.value,
        "max_iterations": config.max_iterations,
        "sample_count": config.sample_count,
    }


def parse_grid(path: str | Path) -> list[dict[str, object]]:
    """Read a sweep grid file into an explicit list of override points.

    Each line is ``key = v1, v2, ...`` with a known configuration key; the
    points are the cartesian product of the listed values, in file order
    with the last key varying fastest.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read grid file {path}: {exc}") from exc
    keys: list[str] = []
    columns: list[list[object]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = v1, v2, ...', got {raw!r}")
        key, _, rest = line.partition("=")
        key = key.strip()
        if key not in ALL_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        if key in keys:
            raise ConfigurationError(f"{path}:{lineno}: duplicate key {key!r}")
        items = [item.strip() for item in rest.split(",") if item.strip()]
        if not items:
            raise ConfigurationError(f"{path}:{lineno}: no values for key {key!r}")
        parsed = [_parse_value(key, item, str(path), lineno) for item in items]
        keys.append(key)
        columns.append(parsed)
    if not keys:
        raise ConfigurationError(f"{path}: empty grid file")
    return [dict(zip(keys, combo)) for combo in itertools.product(*columns)]


def _parse_value(key: str, text: str, source: str, lineno: int) -> object:
    if key == "policy":
        return text
    if key in _INT_KEYS:
        try:
            return int(text)
        except ValueError as exc:
            raise ConfigurationError(
                f"{source}:{lineno}: key {key!r} needs an integer, got {text!r}"
            ) from exc
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigurationError(
            f"{source}:{lineno}: key {key!r} needs a number, got {text!r}"
        ) from exc


def _coerce_float(key: str, value: object) -> float:
    try:
        result = float(value)  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"key {key!r} needs a number, got {value!r}") from exc
    return result


def _coerce_int(key: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigurationError(f"key {key!r} needs an integer, got {value!r}")
    try:
        as_float = float(value)
    except ValueError as exc:
        raise ConfigurationError(f"key {key!r} needs an integer, got {value!r}") from exc
    result = int(as_float)
    if result != as_float:
        raise ConfigurationError(f"key {key!r} needs an integer, got {value!r}")
    return result
