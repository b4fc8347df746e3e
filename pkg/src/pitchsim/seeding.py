"""Named deterministic RNG streams derived from one scenario seed.

Each subsystem (mobility, scheduling, channel) gets its own stream so
that, say, toggling the channel model cannot perturb trajectories.
"""

from __future__ import annotations

import random


def stream(seed: int, name: str) -> random.Random:
    """A reproducible generator for one subsystem of one run."""
    return random.Random(f"{seed}:{name}")
