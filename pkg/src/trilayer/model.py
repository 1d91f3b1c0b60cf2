"""Flow configuration for the three-layer constant-viscosity displacement.

A displacing fluid (viscosity ``mu_L``, region ``x < a``) pushes a bounded
middle layer (``mu``, ``a < x < b``) into the displaced fluid (``mu_R``,
``x > b``). All quantities live in one nondimensional system; the Darcy
permeability prefactor is absorbed into the far-upstream speed ``U``.
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

NUMERIC_FIELDS = ("mu_L", "mu", "mu_R", "U", "T_a", "T_b", "a", "b")


class ConfigError(ValueError):
    """Raised when a configuration is malformed or violates a constraint.

    ``problems`` holds one message per violated constraint or bad field.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class FlowConfig:
    """Physical parameters of the three-layer displacement.

    Parameters
    ----------
    mu_L, mu, mu_R : float
        Viscosities of the displacing, middle and displaced fluids.
    U : float
        Far-upstream displacement speed.
    T_a, T_b : float
        Surface tensions at the left (``x = a``) and right (``x = b``)
        interfaces.
    a, b : float
        Interface positions, ``a < b <= 0``.
    relax_ordering : bool
        Skip the viscosity-ordering and ``U > 0`` checks.
    """

    mu_L: float
    mu: float
    mu_R: float
    U: float
    T_a: float
    T_b: float
    a: float
    b: float
    relax_ordering: bool = False

    @property
    def layer_length(self) -> float:
        """Middle-layer thickness ``b - a``."""
        return self.b - self.a


class ValidatedConfig(FlowConfig):
    """A :class:`FlowConfig` that has passed :func:`validate`."""


def violations(cfg: FlowConfig) -> list[str]:
    """Return every violated constraint of ``cfg`` (empty when valid)."""
    problems = []
    for name in NUMERIC_FIELDS:
        value = getattr(cfg, name)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"non-numeric {name}: {value!r}")
        elif not math.isfinite(value):
            problems.append(f"non-finite {name}: {value!r}")
    if problems:
        return problems

    for name in ("mu_L", "mu", "mu_R", "T_a", "T_b"):
        value = getattr(cfg, name)
        if not value > 0:
            problems.append(f"{name} > 0 violated ({name}={value!r})")
    if not cfg.relax_ordering:
        if not cfg.mu_L < cfg.mu < cfg.mu_R:
            problems.append(
                "ordering violated: need mu_L < mu < mu_R "
                f"(mu_L={cfg.mu_L!r}, mu={cfg.mu!r}, mu_R={cfg.mu_R!r})"
            )
        if not cfg.U > 0:
            problems.append(f"U > 0 violated (U={cfg.U!r})")
    if not cfg.a < cfg.b:
        problems.append(f"a < b violated (a={cfg.a!r}, b={cfg.b!r})")
    if not cfg.b <= 0:
        problems.append(f"b <= 0 violated (b={cfg.b!r})")
    return problems


def validate(cfg: FlowConfig) -> ValidatedConfig:
    """Check ``cfg`` against the standing assumptions of the model.

    Default validation enforces ``0 < mu_L < mu < mu_R``, ``U > 0``,
    positive tensions and ``a < b <= 0``. With ``relax_ordering`` the
    ordering and sign-of-``U`` checks are skipped, positivity is kept.

    Raises
    ------
    ConfigError
        Listing every violated constraint, not just the first.
    """
    if isinstance(cfg, ValidatedConfig):
        return cfg
    problems = violations(cfg)
    if problems:
        raise ConfigError(problems)
    values = {f.name: getattr(cfg, f.name) for f in dataclasses.fields(cfg)}
    for name in NUMERIC_FIELDS:
        values[name] = float(values[name])
    return ValidatedConfig(**values)


def with_values(cfg: FlowConfig, **changes) -> ValidatedConfig:
    """Copy ``cfg`` with fields replaced, then validate the result."""
    values = {f.name: getattr(cfg, f.name) for f in dataclasses.fields(cfg)}
    values.update(changes)
    return validate(FlowConfig(**values))


def viscosity_at(cfg: FlowConfig, x: float) -> float:
    """Piecewise-constant viscosity profile.

    The interface points themselves take the middle-layer value.
    """
    if x < cfg.a:
        return cfg.mu_L
    if x > cfg.b:
        return cfg.mu_R
    return cfg.mu


def config_from_mapping(data) -> FlowConfig:
    """Build a :class:`FlowConfig` from a decoded JSON object."""
    if not isinstance(data, dict):
        raise ConfigError([f"config must be a JSON object, got {type(data).__name__}"])
    problems = []
    allowed = set(NUMERIC_FIELDS) | {"relax_ordering"}
    for key in sorted(set(data) - allowed):
        problems.append(f"unknown field {key!r}")
    missing = [name for name in NUMERIC_FIELDS if name not in data]
    if missing:
        problems.append(f"missing {len(missing)} field(s): {', '.join(missing)}")
    for name in NUMERIC_FIELDS:
        if name not in data:
            continue
        value = data[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"non-numeric {name}: {value!r}")
        elif not math.isfinite(value):
            problems.append(f"non-finite {name}: {value!r}")
    relax = data.get("relax_ordering", False)
    if not isinstance(relax, bool):
        problems.append(f"relax_ordering must be a boolean, got {relax!r}")
    if problems:
        raise ConfigError(problems)
    return FlowConfig(
        **{name: float(data[name]) for name in NUMERIC_FIELDS},
        relax_ordering=relax,
    )


def parse_config(text: str) -> FlowConfig:
    """Parse a JSON config document (not yet validated)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"malformed JSON: {exc}"]) from None
    return config_from_mapping(data)


def serialize_config(cfg: FlowConfig) -> str:
    """JSON text for ``cfg``; floats use the shortest round-trip form."""
    data = {name: float(getattr(cfg, name)) for name in NUMERIC_FIELDS}
    if cfg.relax_ordering:
        data["relax_ordering"] = True
    return json.dumps(data)


def load_config(path) -> ValidatedConfig:
    """Read, parse and validate a config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([f"cannot read config {str(path)!r}: {exc.strerror}"]) from None
    return validate(parse_config(text))
