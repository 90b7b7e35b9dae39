"""Environment specs and family generation.

A "family" is a set of side-scrolling platformer environments that share the
same five-action control scheme but differ in theme (palette / textures) and
level layout. Specs are plain data: the level itself is derived
deterministically from (family_seed, env_id), see level.py.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from .hashing import HashStream, mix2

ACTION_LEFT = 0
ACTION_RIGHT = 1
ACTION_UP = 2
ACTION_DOWN = 3
ACTION_JUMP = 4
NUM_ACTIONS = 5
ACTION_NAMES = ("left", "right", "up", "down", "jump")


@dataclass(frozen=True)
class EnvSpec:
    env_id: str
    family_seed: int
    theme: int
    level_length: int  # tiles
    gravity: float  # pixels/step^2, exact multiple of 1/256
    obstacle_density: float
    enemy_density: float
    frame_size: tuple[int, int]  # (H, W)

    def __post_init__(self):
        h, w = self.frame_size
        if h % 4 or w % 4:
            raise ValueError("frame_size must be divisible by the 4px tile size")
        object.__setattr__(self, "frame_size", (int(h), int(w)))
        object.__setattr__(
            self, "obstacle_density", min(1.0, max(0.0, self.obstacle_density))
        )
        object.__setattr__(
            self, "enemy_density", min(1.0, max(0.0, self.enemy_density))
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d["frame_size"] = list(self.frame_size)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "EnvSpec":
        d = dict(d)
        d["frame_size"] = tuple(d["frame_size"])
        return cls(**d)


def generate_family(
    family_seed: int, count: int, frame_size: tuple[int, int] = (32, 32)
) -> list[EnvSpec]:
    """Generate `count` specs with distinct themes/layouts and shared controls.

    Deterministic in family_seed; count is clamped to >= 1.
    """
    count = max(1, int(count))
    specs = []
    for i in range(count):
        rng = HashStream(mix2(family_seed, i))
        theme = rng.below(1 << 16)
        level_length = 96 + rng.below(64)
        # gravity in [0.1875, 0.3125] px/step^2 in exact 1/256 increments
        gravity = (48 + rng.below(33)) / 256.0
        obstacle_density = (10 + rng.below(20)) / 100.0
        enemy_density = (6 + rng.below(12)) / 100.0
        specs.append(
            EnvSpec(
                env_id=f"toy-{family_seed}-{i:03d}",
                family_seed=family_seed,
                theme=theme,
                level_length=level_length,
                gravity=gravity,
                obstacle_density=obstacle_density,
                enemy_density=enemy_density,
                frame_size=frame_size,
            )
        )
    return specs


def save_family(specs: list[EnvSpec], path: str | Path) -> None:
    Path(path).write_text(json.dumps([s.to_json() for s in specs], indent=2))


def load_family(path: str | Path) -> list[EnvSpec]:
    return [EnvSpec.from_json(d) for d in json.loads(Path(path).read_text())]
