"""Group-reference player movement with a sprint/run/walk effort schedule.

Players track a shared reference point (random-waypoint motion across
the pitch) plus a fixed formation offset and a fresh random deviation
each step, with the actual move capped by the speed of the player's
current effort mode. The scheduler draws sprint onsets as a per-second
hazard tuned so the expected sprint count over a match matches
``sprints_per_match``; every sprint is followed by an uninterruptible
walking recovery of ``rest_multiple`` times its length, and the rest of
the time alternates run and walk episodes.

Speeds are km/h, positions yards, durations seconds, accumulated
distance km.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field

from .geometry import FieldConfig, Point, clamp_to_field
from .seeding import stream

KMH_TO_YDS = (1000.0 / 0.9144) / 3600.0   # km/h -> yd/s
KM_PER_YARD = 0.9144 / 1000.0

TWO_PI = 2.0 * math.pi


class SpeedMode(enum.Enum):
    REST = "rest"
    WALK = "walk"
    RUN = "run"
    SPRINT = "sprint"


@dataclass(frozen=True)
class MobilityParams:
    v_run_min: float = 10.3
    v_run_max: float = 12.9
    v_sprint: float = 25.0
    v_walk: float = 4.5
    sprint_min_s: int = 2
    sprint_max_s: int = 5
    sprints_per_match: float = 100.0
    rest_multiple: float = 2.0           # recovery length as multiple of sprint length
    deviation_radius: float = 5.0        # yards
    group_speed_kmh: float = 7.0
    run_episode_mean_s: float = 14.0
    walk_episode_mean_s: float = 20.0
    match_seconds: float = 5400.0

    def __post_init__(self):
        if not 0.0 <= self.v_walk < self.v_run_min <= self.v_run_max < self.v_sprint:
            raise ValueError("speeds must satisfy 0 <= walk < run_min <= run_max < sprint")
        if not 0 < self.sprint_min_s <= self.sprint_max_s:
            raise ValueError("sprint duration range is invalid")
        if self.sprints_per_match < 0:
            raise ValueError("sprints_per_match must be non-negative")
        if self.rest_multiple < 0 or self.deviation_radius < 0 or self.group_speed_kmh < 0:
            raise ValueError("rest_multiple, deviation_radius, group_speed must be non-negative")
        if self.run_episode_mean_s <= 0 or self.walk_episode_mean_s <= 0:
            raise ValueError("episode means must be positive")
        if self.match_seconds <= 0:
            raise ValueError("match_seconds must be positive")
        if self.sprints_per_match > 0 and self._eligible_seconds() <= 0:
            raise ValueError("sprints_per_match does not fit in match_seconds "
                             "with the given durations and rest_multiple")

    def _eligible_seconds(self) -> float:
        mean_sprint = (self.sprint_min_s + self.sprint_max_s) / 2.0
        busy = self.sprints_per_match * mean_sprint * (1.0 + self.rest_multiple)
        return self.match_seconds - busy

    def sprint_hazard(self) -> float:
        """Per-second sprint onset probability outside sprints and recoveries."""
        if self.sprints_per_match <= 0:
            return 0.0
        return self.sprints_per_match / self._eligible_seconds()


@dataclass(slots=True)
class PlayerKinematics:
    player_id: int
    x: float
    y: float
    offset_x: float
    offset_y: float
    mode: SpeedMode = SpeedMode.WALK
    mode_time_left: float = 0.0
    speed_kmh: float = 0.0
    lock_time_left: float = 0.0     # remaining forced recovery; blocks sprint onset
    sprint_len: float = 0.0         # drawn length of the current/last sprint
    cumulative_km: float = 0.0

    @property
    def position(self) -> Point:
        return Point(self.x, self.y)


def _begin_next_episode(k: PlayerKinematics, p: MobilityParams, rng: random.Random) -> None:
    # alternate walk and run; each run episode re-draws its own pace
    if k.mode is SpeedMode.RUN:
        k.mode = SpeedMode.WALK
        k.speed_kmh = p.v_walk
        k.mode_time_left = rng.uniform(0.5, 1.5) * p.walk_episode_mean_s
    else:
        k.mode = SpeedMode.RUN
        k.speed_kmh = rng.uniform(p.v_run_min, p.v_run_max)
        k.mode_time_left = rng.uniform(0.5, 1.5) * p.run_episode_mean_s


def schedule_mode(k: PlayerKinematics, p: MobilityParams, dt: float,
                  rng: random.Random) -> SpeedMode:
    """Advance the effort schedule by dt and return the mode for this step."""
    if k.mode is SpeedMode.SPRINT:
        if k.mode_time_left <= 0.0:
            # sprint over: forced walking recovery, immune to new onsets
            k.mode = SpeedMode.WALK
            k.speed_kmh = p.v_walk
            k.lock_time_left = p.rest_multiple * k.sprint_len
            k.mode_time_left = k.lock_time_left
    elif k.mode_time_left <= 0.0:
        _begin_next_episode(k, p, rng)

    if k.mode is not SpeedMode.SPRINT and k.lock_time_left <= 0.0:
        hazard = p.sprint_hazard()
        if hazard > 0.0 and rng.random() < hazard * dt:
            length = float(rng.randint(p.sprint_min_s, p.sprint_max_s))
            k.mode = SpeedMode.SPRINT
            k.speed_kmh = p.v_sprint
            k.mode_time_left = length
            k.sprint_len = length

    k.mode_time_left -= dt
    if k.lock_time_left > 0.0:
        k.lock_time_left -= dt
    return k.mode


def step_player(k: PlayerKinematics, ref: Point, field: FieldConfig,
                p: MobilityParams, dt: float, rng: random.Random) -> PlayerKinematics:
    """Move one player toward its formation slot around the reference.

    The target is ref + offset + a uniform draw from the deviation disc,
    clamped to the pitch; the move toward it is capped at the current
    mode speed times dt. The deviation is drawn even for resting players
    so RNG consumption does not depend on the mode sequence.
    """
    r = p.deviation_radius * math.sqrt(rng.random())
    theta = TWO_PI * rng.random()
    tx = ref.x + k.offset_x + r * math.cos(theta)
    ty = ref.y + k.offset_y + r * math.sin(theta)
    tx = min(max(tx, 0.0), field.length)
    ty = min(max(ty, 0.0), field.width)

    cap = k.speed_kmh * KMH_TO_YDS * dt
    dx = tx - k.x
    dy = ty - k.y
    dist = math.hypot(dx, dy)
    if dist > cap:
        if cap <= 0.0:
            return k
        scale = cap / dist
        tx = k.x + dx * scale
        ty = k.y + dy * scale
        moved = cap
    else:
        moved = dist
    k.cumulative_km += moved * KM_PER_YARD
    k.x = tx
    k.y = ty
    return k


@dataclass(slots=True)
class GroupReference:
    """Shared reference point following random-waypoint motion."""

    x: float
    y: float
    waypoint_x: float
    waypoint_y: float

    @classmethod
    def centered(cls, field: FieldConfig) -> "GroupReference":
        cx, cy = field.length / 2.0, field.width / 2.0
        return cls(cx, cy, cx, cy)


def step_group_reference(g: GroupReference, field: FieldConfig, p: MobilityParams,
                         dt: float, rng: random.Random) -> Point:
    """Advance the reference toward its waypoint, redrawing on arrival."""
    cap = p.group_speed_kmh * KMH_TO_YDS * dt
    dx = g.waypoint_x - g.x
    dy = g.waypoint_y - g.y
    dist = math.hypot(dx, dy)
    if dist <= cap:
        g.x, g.y = g.waypoint_x, g.waypoint_y
        g.waypoint_x = rng.uniform(0.0, field.length)
        g.waypoint_y = rng.uniform(0.0, field.width)
    else:
        scale = cap / dist
        g.x += dx * scale
        g.y += dy * scale
    return Point(g.x, g.y)


# One mirrored 1-4-4-2 slot template per team, in yards on the default
# pitch; the twelfth slot hosts the optional extra player. Offsets scale
# with the field so formations keep their shape on non-default pitches.
_TEAM_TEMPLATE = (
    (-38.0, 0.0),
    (-26.0, -21.0), (-26.0, -7.0), (-26.0, 7.0), (-26.0, 21.0),
    (-12.0, -21.0), (-12.0, -7.0), (-12.0, 7.0), (-12.0, 21.0),
    (2.0, -8.0), (2.0, 8.0),
    (-5.0, 0.0),
)

MAX_PLAYERS = 2 * len(_TEAM_TEMPLATE)


def formation_offsets(n_players: int, field: FieldConfig) -> list[tuple[float, float]]:
    """Formation offsets for two mirrored teams of up to 12 players each."""
    if not 1 <= n_players <= MAX_PLAYERS:
        raise ValueError(f"n_players must be in [1, {MAX_PLAYERS}]")
    sx = field.length / 106.0
    sy = field.width / 68.0
    home = n_players - n_players // 2
    away = n_players // 2
    offsets = [(ox * sx, oy * sy) for ox, oy in _TEAM_TEMPLATE[:home]]
    offsets += [(-ox * sx, oy * sy) for ox, oy in _TEAM_TEMPLATE[:away]]
    return offsets


def make_players(n_players: int, field: FieldConfig) -> list[PlayerKinematics]:
    """Players placed at their formation slots around the pitch center."""
    ref = Point(field.length / 2.0, field.width / 2.0)
    players = []
    for pid, (ox, oy) in enumerate(formation_offsets(n_players, field)):
        start = clamp_to_field(Point(ref.x + ox, ref.y + oy), field)
        players.append(PlayerKinematics(pid, start.x, start.y, ox, oy))
    return players


@dataclass(frozen=True)
class SprintEpisode:
    player_id: int
    start: int          # round of the first sprinting second
    duration: int       # seconds spent sprinting
    truncated: bool = False   # cut off by the end of the run


@dataclass
class MobilityRun:
    players: list[PlayerKinematics]
    sprints: list[SprintEpisode]


def simulate_mobility(params: MobilityParams, field: FieldConfig, n_players: int,
                      rounds: int, seed: int) -> MobilityRun:
    """Run the movement subsystem alone; used for calibration and tests.

    The RNG streams match the full engine's, so trajectories agree with
    protocol runs at the same seed.
    """
    mob = stream(seed, "mobility")
    sched = stream(seed, "scheduling")
    players = make_players(n_players, field)
    group = GroupReference.centered(field)
    open_since: dict[int, int] = {}
    sprints: list[SprintEpisode] = []
    for t in range(1, rounds + 1):
        ref = step_group_reference(group, field, params, 1.0, mob)
        for k in players:
            was_sprinting = k.player_id in open_since
            mode = schedule_mode(k, params, 1.0, sched)
            step_player(k, ref, field, params, 1.0, mob)
            if mode is SpeedMode.SPRINT and not was_sprinting:
                open_since[k.player_id] = t
            elif mode is not SpeedMode.SPRINT and was_sprinting:
                start = open_since.pop(k.player_id)
                sprints.append(SprintEpisode(k.player_id, start, t - start))
    for pid, start in sorted(open_since.items()):
        sprints.append(SprintEpisode(pid, start, rounds + 1 - start, truncated=True))
    return MobilityRun(players, sprints)
