"""Scenario configuration: the concrete cell a simulation runs.

A scenario is a nested, immutable record mirrored one-to-one by the
key-value scenario file format (``belt.speed = 0.1`` and so on). Feature
bindings address fields through the same dotted paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

from ..errors import BindingError, ConfigError, DomainError, UnknownNameError
from ..kvdoc import parse_bool, parse_float, parse_int, parse_point, read_kv, write_kv

MODE_SSM = "ssm"
MODE_MONITORED_STOP = "monitored_stop"


@dataclass(frozen=True)
class BeltConfig:
    start: tuple[float, float] = (-0.45, 0.80)
    end: tuple[float, float] = (0.51, 0.80)
    speed: float = 0.1            # m/s along start->end
    spawn_interval: float = 3.0   # s between objects entering at start
    object_count: int = 3


@dataclass(frozen=True)
class ArmConfig:
    base: tuple[float, float] = (0.0, 0.0)
    link1: float = 0.55
    link2: float = 0.45
    max_speed: float = 1.2        # m/s cap on any arm point
    brake_decel: float = 2.0      # m/s^2, also the acceleration limit
    pick_radius: float = 0.07
    bin: tuple[float, float] = (-0.65, 0.35)


@dataclass(frozen=True)
class OperatorConfig:
    start: tuple[float, float] = (0.0, 1.62)  # torso position, fixed
    hand_intrusion: float = 0.40  # m the hand reaches toward the belt
    hand_speed: float = 0.9       # m/s of the hand along its path
    approach_time: float = 0.8    # s before the first reach begins


@dataclass(frozen=True)
class CameraConfig:
    # Offset from the cell midline so the arm base stays out of the
    # camera-to-operator sight line when the arm is parked.
    position: tuple[float, float] = (0.9, -1.4)
    yaw: float = 1.5708           # rad, view direction
    fov_half_angle: float = 1.05  # rad


@dataclass(frozen=True)
class EnvironmentConfig:
    illuminance: float = 5000.0   # lux
    contrast: float = 0.85        # 0..1 operator/background contrast


@dataclass(frozen=True)
class ControllerConfig:
    mode: str = MODE_SSM
    reaction_time: float = 0.1        # s, T_r
    assumed_human_speed: float = 1.6  # m/s, v_h in the separation formula
    min_clearance: float = 0.1        # m, C term


@dataclass(frozen=True)
class PerceptionConfig:
    p_base: float = 0.99
    e_min: float = 100.0          # lux floor: no detection at or below
    e_sat: float = 1000.0         # lux where the illuminance gate saturates
    contrast_exponent: float = 0.5
    miss_horizon: int = 5         # steps a stale hand fix is still trusted
    ignore_occlusion: bool = False


@dataclass(frozen=True)
class Scenario:
    duration: float = 8.0
    dt: float = 0.02
    belt: BeltConfig = field(default_factory=BeltConfig)
    arm: ArmConfig = field(default_factory=ArmConfig)
    operator: OperatorConfig = field(default_factory=OperatorConfig)
    camera: CameraConfig = field(default_factory=CameraConfig)
    environment: EnvironmentConfig = field(default_factory=EnvironmentConfig)
    controller: ControllerConfig = field(default_factory=ControllerConfig)
    perception: PerceptionConfig = field(default_factory=PerceptionConfig)


def validate_scenario(scenario: Scenario) -> None:
    """Raise DomainError on the first violated scenario invariant."""
    s = scenario
    if not (s.dt > 0.0):
        raise DomainError(f"dt must be positive, got {s.dt}")
    if not (s.duration >= s.dt):
        raise DomainError(f"duration {s.duration} shorter than one step {s.dt}")
    if s.belt.speed < 0.0:
        raise DomainError(f"belt speed must be non-negative, got {s.belt.speed}")
    if s.belt.start == s.belt.end:
        raise DomainError("belt start equals belt end")
    if s.belt.spawn_interval <= 0.0:
        raise DomainError(f"spawn interval must be positive, got {s.belt.spawn_interval}")
    if s.belt.object_count < 0:
        raise DomainError(f"object count must be non-negative, got {s.belt.object_count}")
    if s.arm.link1 <= 0.0 or s.arm.link2 <= 0.0:
        raise DomainError("arm link lengths must be positive")
    if s.arm.max_speed <= 0.0:
        raise DomainError(f"arm max speed must be positive, got {s.arm.max_speed}")
    if s.arm.brake_decel <= 0.0:
        raise DomainError(f"a non-braking arm is not assurable: brake_decel {s.arm.brake_decel}")
    if s.arm.pick_radius <= 0.0:
        raise DomainError("pick radius must be positive")
    if s.operator.hand_intrusion < 0.0:
        raise DomainError(f"hand intrusion must be non-negative, got {s.operator.hand_intrusion}")
    if s.operator.hand_speed <= 0.0:
        raise DomainError(f"hand speed must be positive, got {s.operator.hand_speed}")
    if s.operator.approach_time < 0.0:
        raise DomainError("approach time must be non-negative")
    if not (0.0 < s.camera.fov_half_angle <= math.pi):
        raise DomainError(f"fov half angle outside (0, pi]: {s.camera.fov_half_angle}")
    if s.environment.illuminance < 0.0:
        raise DomainError(f"illuminance must be non-negative, got {s.environment.illuminance}")
    if not (0.0 <= s.environment.contrast <= 1.0):
        raise DomainError(f"contrast outside [0, 1]: {s.environment.contrast}")
    if s.controller.mode not in (MODE_SSM, MODE_MONITORED_STOP):
        raise DomainError(f"unknown controller mode {s.controller.mode!r}")
    if s.controller.reaction_time < 0.0 or s.controller.min_clearance < 0.0:
        raise DomainError("controller reaction time and clearance must be non-negative")
    if s.controller.assumed_human_speed < 0.0:
        raise DomainError("assumed human speed must be non-negative")
    if not (0.0 <= s.perception.p_base <= 1.0):
        raise DomainError(f"p_base outside [0, 1]: {s.perception.p_base}")
    if not (0.0 < s.perception.e_min < s.perception.e_sat):
        raise DomainError(
            f"need 0 < e_min < e_sat, got {s.perception.e_min}, {s.perception.e_sat}")
    if s.perception.contrast_exponent < 0.0:
        raise DomainError("contrast exponent must be non-negative")
    if s.perception.miss_horizon < 0:
        raise DomainError("miss horizon must be non-negative")


# -- dotted-path field access ------------------------------------------------

_GROUPS = ("belt", "arm", "operator", "camera", "environment", "controller",
           "perception")


def scenario_get(scenario: Scenario, path: str):
    """Fetch a field by dotted path, e.g. ``environment.illuminance``."""
    obj = scenario
    for part in _split_path(path):
        obj = getattr(obj, part)
    return obj


def scenario_with(scenario: Scenario, path: str, value) -> Scenario:
    """Return a scenario with the field at `path` replaced by `value`.

    The value is coerced to the field's current type; incompatible values
    raise BindingError.
    """
    parts = _split_path(path)
    if len(parts) == 1:
        current = getattr(scenario, parts[0])
        return replace(scenario, **{parts[0]: _coerce(path, value, current)})
    group_name, field_name = parts
    group = getattr(scenario, group_name)
    current = getattr(group, field_name)
    return replace(scenario, **{group_name: replace(
        group, **{field_name: _coerce(path, value, current)})})


def _split_path(path: str) -> list[str]:
    parts = path.split(".")
    if len(parts) == 1 and parts[0] in ("duration", "dt"):
        return parts
    if len(parts) != 2 or parts[0] not in _GROUPS:
        raise BindingError(f"no scenario field at path {path!r}")
    group_fields = {f.name for f in fields(getattr(Scenario(), parts[0]))}
    if parts[1] not in group_fields:
        raise BindingError(f"no scenario field at path {path!r}")
    return parts


def _coerce(path, value, current):
    if isinstance(current, bool):
        if isinstance(value, bool):
            return value
        raise BindingError(f"{path}: expected a boolean, got {value!r}")
    if isinstance(current, int):
        if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
            raise BindingError(f"{path}: expected an integer, got {value!r}")
        if isinstance(value, (int, float)):
            return int(value)
        raise BindingError(f"{path}: expected an integer, got {value!r}")
    if isinstance(current, float):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise BindingError(f"{path}: expected a number, got {value!r}")
    if isinstance(current, tuple):
        try:
            x, y = value
            return (float(x), float(y))
        except (TypeError, ValueError):
            raise BindingError(f"{path}: expected a point, got {value!r}") from None
    if isinstance(current, str):
        if isinstance(value, str):
            return value
        raise BindingError(f"{path}: expected a string, got {value!r}")
    raise BindingError(f"{path}: unsupported field type")


def bind_assignment(scenario: Scenario, model, assignment: dict) -> Scenario:
    """Apply a feature assignment to a scenario through the model bindings.

    Every assigned feature must exist in the model and the value must lie
    in its declared domain; otherwise UnknownNameError/DomainError.
    """
    bound = scenario
    for name, value in assignment.items():
        feature = model.feature(name)  # raises UnknownNameError
        if not feature.contains(value):
            raise DomainError(
                f"value {value!r} outside domain of feature {name!r}")
        bound = scenario_with(bound, feature.binding, value)
    return bound


# -- file format --------------------------------------------------------------

_POINT_KEYS = {"belt.start", "belt.end", "arm.base", "arm.bin",
               "operator.start", "camera.position"}
_INT_KEYS = {"belt.object_count", "perception.miss_horizon"}
_BOOL_KEYS = {"perception.ignore_occlusion"}
_STR_KEYS = {"controller.mode"}


def load_scenario(text: str, source: str = "<string>") -> Scenario:
    """Build a scenario from key-value text; unspecified keys keep defaults.

    Unknown keys raise ConfigError so typos cannot silently change nothing.
    """
    scenario = Scenario()
    for key, raw in read_kv(text, source).items():
        if key in _POINT_KEYS:
            value = parse_point(key, raw)
        elif key in _INT_KEYS:
            value = parse_int(key, raw)
        elif key in _BOOL_KEYS:
            value = parse_bool(key, raw)
        elif key in _STR_KEYS:
            value = raw
        else:
            value = parse_float(key, raw)
        try:
            scenario = scenario_with(scenario, key, value)
        except BindingError as exc:
            raise ConfigError(f"{source}: {exc}") from None
    validate_scenario(scenario)
    return scenario


def dump_scenario(scenario: Scenario) -> str:
    """Emit every field in the key-value format, defaults included."""
    entries: dict[str, str] = {
        "duration": repr(scenario.duration),
        "dt": repr(scenario.dt),
    }
    for group in _GROUPS:
        obj = getattr(scenario, group)
        for f in fields(obj):
            key = f"{group}.{f.name}"
            value = getattr(obj, f.name)
            if isinstance(value, bool):
                entries[key] = "true" if value else "false"
            elif isinstance(value, tuple):
                entries[key] = f"{value[0]!r}, {value[1]!r}"
            elif isinstance(value, float):
                entries[key] = repr(value)
            else:
                entries[key] = str(value)
    return write_kv(entries)
