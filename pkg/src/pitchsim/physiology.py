"""Blood-lactate dynamics and the two-sided fatigue trigger.

Lactate follows a first-order production/clearance law stepped with
forward Euler:

    L' = L + dt * (alpha * max(0, v - v_aerobic) - beta * max(0, L - L_base))

Production engages only above the aerobic speed; clearance pulls the
level back toward baseline. The default production rate is chosen so
that a sustained top-speed effort starting from baseline reaches the
trigger threshold after three minutes with clearance disabled.

Fatigue is declared when either the lactate level or the cumulative
distance crosses its threshold. The lactate trigger re-arms only after
the level falls below a hysteresis fraction of the threshold; the
distance trigger fires at most once per match.

Units: mmol/L for concentration, km/h for speed, seconds for time,
km for distance. Reports convert mmol/L to mg/dL with the 9.0 factor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

MGDL_PER_MMOL_L = 9.0


def onset_alpha(l_base: float = 1.0, l_threshold: float = 2.2,
                v_peak: float = 25.0, v_aerobic: float = 12.9,
                onset_s: float = 180.0) -> float:
    """Production rate that lifts baseline to threshold after ``onset_s``
    seconds at ``v_peak``, with clearance disabled."""
    return (l_threshold - l_base) / (onset_s * (v_peak - v_aerobic))


@dataclass(frozen=True)
class LactateParams:
    l_base: float = 1.0
    l_threshold: float = 2.2
    v_aerobic: float = 12.9
    alpha: float = onset_alpha()
    beta: float = 0.005          # 1/s; clearance half-life ~2.3 min at rest

    def __post_init__(self):
        if not self.l_base < self.l_threshold:
            raise ValueError("l_base must be below l_threshold")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        # Euler at 1 s steps turns unstable once beta*dt approaches 1
        if self.beta >= 1.0:
            raise ValueError("beta must be below 1.0 for a stable 1 s step")


def step_lactate(level: float, v: float, params: LactateParams, dt: float) -> float:
    """One Euler step of the production/clearance law; never below zero."""
    production = params.alpha * max(0.0, v - params.v_aerobic)
    clearance = params.beta * max(0.0, level - params.l_base)
    new = level + dt * (production - clearance)
    return new if new > 0.0 else 0.0


class FatigueCause(enum.Enum):
    LACTATE = "lactate"
    DISTANCE = "distance"


@dataclass(frozen=True)
class FatigueThresholds:
    lactate: float = 2.2         # mmol/L
    distance_km: float = 11.0
    hysteresis: float = 0.9      # lactate re-arm fraction of threshold

    def __post_init__(self):
        if self.lactate <= 0 or self.distance_km <= 0:
            raise ValueError("thresholds must be positive")
        if not 0.0 < self.hysteresis <= 1.0:
            raise ValueError("hysteresis must be in (0, 1]")


@dataclass(frozen=True)
class FatigueEvent:
    player_id: int
    time: float
    cause: FatigueCause
    value: float


class FatigueMonitor:
    """Per-player trigger state: lactate hysteresis and one-shot distance."""

    def __init__(self, thresholds: FatigueThresholds):
        self.thresholds = thresholds
        self._lactate_armed = True
        self._distance_fired = False

    def check(self, lactate: float, cum_distance_km: float, t: float,
              player_id: int) -> FatigueEvent | None:
        """Evaluate the composite trigger; lactate takes precedence."""
        th = self.thresholds
        if not self._lactate_armed and lactate < th.lactate * th.hysteresis:
            self._lactate_armed = True
        if self._lactate_armed and lactate >= th.lactate:
            self._lactate_armed = False
            return FatigueEvent(player_id, t, FatigueCause.LACTATE, lactate)
        if not self._distance_fired and cum_distance_km >= th.distance_km:
            self._distance_fired = True
            return FatigueEvent(player_id, t, FatigueCause.DISTANCE, cum_distance_km)
        return None
