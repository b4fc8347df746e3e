"""Scenario configuration: defaults, validation, and the flat key=value file.

The file format is deliberately plain text, one ``key = value`` per
line, ``#`` comments, dotted section prefixes (``mobility.v_walk``).
Omitted keys take documented defaults; unknown or duplicate keys are
rejected. An empty file is the default scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .channel import ChannelParams
from .energy import FIRST_ORDER, LUMPED, RadioModel
from .geometry import FieldConfig
from .mobility import MAX_PLAYERS, MobilityParams
from .physiology import FatigueThresholds, LactateParams
from .protocol import THEFAME, WSTM, ProtocolConfig, thefame_config, wstm_config

CORRECTED = "corrected"
EXTENDED = "extended"


class ScenarioError(Exception):
    """Base for configuration problems."""


class ParseError(ScenarioError):
    """Malformed scenario text; carries line and key context."""


class ValidationError(ScenarioError):
    """Structurally valid text violating a scenario invariant."""


@dataclass(frozen=True)
class Scenario:
    protocol: str = THEFAME
    seed: int = 0
    rounds: int = 5400
    players: int = 22
    field_length: float = 106.0
    field_width: float = 68.0
    sink_placement: str = CORRECTED
    mobility: MobilityParams = field(default_factory=MobilityParams)
    lactate: LactateParams = field(default_factory=LactateParams)
    thresholds: FatigueThresholds = field(default_factory=FatigueThresholds)
    radio: RadioModel = field(default_factory=RadioModel)
    initial_energy_j: float = 0.025
    channel: ChannelParams = field(default_factory=ChannelParams)
    max_hops: int = 10
    wstm_period_s: int = 10

    def __post_init__(self):
        if self.protocol not in (THEFAME, WSTM):
            raise ValidationError(f"protocol must be thefame or wstm, got {self.protocol!r}")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative")
        if self.rounds <= 0:
            raise ValidationError("rounds must be positive")
        if not 1 <= self.players <= MAX_PLAYERS:
            raise ValidationError(f"players must be in [1, {MAX_PLAYERS}]")
        if self.field_length <= 0 or self.field_width <= 0:
            raise ValidationError("field dimensions must be positive")
        if self.sink_placement not in (CORRECTED, EXTENDED):
            raise ValidationError(
                f"field.sink_placement must be corrected or extended, got {self.sink_placement!r}")
        if self.initial_energy_j <= 0:
            raise ValidationError("energy.initial_j must be positive")
        if self.max_hops < 1:
            raise ValidationError("wstm.max_hops must be at least 1")
        if self.wstm_period_s <= 0:
            raise ValidationError("wstm.period_s must be positive")

    def build_field(self) -> FieldConfig:
        if self.protocol == WSTM:
            return FieldConfig.goal_sinks(self.field_length, self.field_width)
        return FieldConfig.six_sinks(self.field_length, self.field_width,
                                     extended=self.sink_placement == EXTENDED)

    def protocol_config(self) -> ProtocolConfig:
        if self.protocol == WSTM:
            return wstm_config(self.wstm_period_s, self.max_hops)
        return thefame_config(self.max_hops)

    def with_protocol(self, protocol: str) -> "Scenario":
        return replace(self, protocol=protocol)

    def with_seed(self, seed: int) -> "Scenario":
        return replace(self, seed=seed)


# key -> (section dataclass attribute on Scenario or None for top level,
#         field name, cast)
_KEYS = {
    "protocol": (None, "protocol", str),
    "seed": (None, "seed", int),
    "rounds": (None, "rounds", int),
    "players": (None, "players", int),
    "field.length": (None, "field_length", float),
    "field.width": (None, "field_width", float),
    "field.sink_placement": (None, "sink_placement", str),
    "mobility.v_run_min": ("mobility", "v_run_min", float),
    "mobility.v_run_max": ("mobility", "v_run_max", float),
    "mobility.v_sprint": ("mobility", "v_sprint", float),
    "mobility.v_walk": ("mobility", "v_walk", float),
    "mobility.sprint_min_s": ("mobility", "sprint_min_s", int),
    "mobility.sprint_max_s": ("mobility", "sprint_max_s", int),
    "mobility.sprints_per_match": ("mobility", "sprints_per_match", float),
    "mobility.rest_multiple": ("mobility", "rest_multiple", float),
    "mobility.deviation_radius": ("mobility", "deviation_radius", float),
    "mobility.group_speed_kmh": ("mobility", "group_speed_kmh", float),
    "mobility.run_episode_mean_s": ("mobility", "run_episode_mean_s", float),
    "mobility.walk_episode_mean_s": ("mobility", "walk_episode_mean_s", float),
    "lactate.base": ("lactate", "l_base", float),
    "lactate.threshold": ("lactate", "l_threshold", float),
    "lactate.v_aerobic": ("lactate", "v_aerobic", float),
    "lactate.alpha": ("lactate", "alpha", float),
    "lactate.beta": ("lactate", "beta", float),
    "fatigue.lactate_threshold": ("thresholds", "lactate", float),
    "fatigue.distance_km": ("thresholds", "distance_km", float),
    "fatigue.hysteresis": ("thresholds", "hysteresis", float),
    "radio.e_circuitry": ("radio", "e_circuitry", float),
    "radio.e_amp": ("radio", "e_amp", float),
    "radio.packet_bits": ("radio", "packet_bits", int),
    "radio.form": ("radio", "form", str),
    "energy.initial_j": (None, "initial_energy_j", float),
    "drop_probability": ("channel", "drop_probability", float),
    "data_rate": ("channel", "data_rate_bps", float),
    "per_hop_processing": ("channel", "per_hop_processing_s", float),
    "wstm.max_hops": (None, "max_hops", int),
    "wstm.period_s": (None, "wstm_period_s", int),
}

_SECTION_TYPES = {
    "mobility": MobilityParams,
    "lactate": LactateParams,
    "thresholds": FatigueThresholds,
    "radio": RadioModel,
    "channel": ChannelParams,
}


def parse_scenario_text(text: str, source: str = "<string>") -> Scenario:
    """Build a validated Scenario from flat key=value text."""
    top: dict[str, object] = {}
    sections: dict[str, dict[str, object]] = {name: {} for name in _SECTION_TYPES}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in seen:
            raise ParseError(f"{source}:{lineno}: duplicate key {key!r} "
                             f"(first set on line {seen[key]})")
        seen[key] = lineno
        section, attr, cast = _KEYS[key]
        try:
            parsed = cast(value)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: key {key!r} expects "
                             f"{cast.__name__}, got {value!r}") from None
        if section is None:
            top[attr] = parsed
        else:
            sections[section][attr] = parsed

    if "form" in sections["radio"] and sections["radio"]["form"] not in (LUMPED, FIRST_ORDER):
        raise ValidationError(
            f"radio.form must be {LUMPED!r} or {FIRST_ORDER!r}, "
            f"got {sections['radio']['form']!r}")
    try:
        for name, cls in _SECTION_TYPES.items():
            if sections[name]:
                top[name] = cls(**sections[name])
        return Scenario(**top)
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def parse_scenario(path: str) -> Scenario:
    """Read and validate a scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario_text(fh.read(), source=path)


def scenario_keys() -> list[str]:
    """All recognized configuration keys, for docs and error hints."""
    return sorted(_KEYS)
