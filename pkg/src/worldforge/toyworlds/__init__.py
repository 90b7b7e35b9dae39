"""Procedurally generated toy platformer environments."""

from .engine import (
    EnvState,
    ToyEnv,
    columns_revealed,
    render_backend,
    render_state,
    replay,
    reset,
    step,
    use_backend,
)
from .expert import random_policy, scripted_expert
from .level import Level, build_level
from .specs import (
    ACTION_DOWN,
    ACTION_JUMP,
    ACTION_LEFT,
    ACTION_NAMES,
    ACTION_RIGHT,
    ACTION_UP,
    NUM_ACTIONS,
    EnvSpec,
    generate_family,
    load_family,
    save_family,
)

__all__ = [
    "EnvSpec",
    "EnvState",
    "Level",
    "ToyEnv",
    "ACTION_LEFT",
    "ACTION_RIGHT",
    "ACTION_UP",
    "ACTION_DOWN",
    "ACTION_JUMP",
    "ACTION_NAMES",
    "NUM_ACTIONS",
    "build_level",
    "columns_revealed",
    "generate_family",
    "load_family",
    "random_policy",
    "render_backend",
    "render_state",
    "replay",
    "reset",
    "save_family",
    "scripted_expert",
    "step",
    "use_backend",
]
