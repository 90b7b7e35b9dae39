"""Policies: a scripted forward-progress expert and a uniform random policy.

The expert walks right, hopping over gaps, pillars and enemies it can see a
couple of tiles ahead. With probability epsilon it takes a uniform random
action instead, so collected test sets contain every action.
"""

from __future__ import annotations

from .engine import ENEMY_W, PLAYER_H, PLAYER_W, SUBPIX, EnvState, _on_ground
from .level import SOLID, TILE, build_level
from .specs import ACTION_JUMP, ACTION_RIGHT, NUM_ACTIONS, EnvSpec

DEFAULT_EPSILON = 0.2


def random_policy(state: EnvState, spec: EnvSpec, rng) -> int:
    return rng.randrange(NUM_ACTIONS)


def scripted_expert(
    state: EnvState, spec: EnvSpec, rng, epsilon: float = DEFAULT_EPSILON
) -> int:
    """Forward-progress action for an alive state, epsilon-mixed with random."""
    if epsilon > 0 and rng.random() < epsilon:
        return rng.randrange(NUM_ACTIONS)

    level = build_level(spec)
    if state.blank > 0:
        return ACTION_RIGHT

    x = state.px // SUBPIX
    y = state.py // SUBPIX
    col = (x + PLAYER_W - 1) // TILE
    rows, length = level.tiles.shape
    grounded = _on_ground(level, state.px, state.py)

    def col_has_ground(c: int) -> bool:
        if c >= length:
            return True
        return bool((level.tiles[:, c] == SOLID).any())

    def col_blocked(c: int) -> bool:
        """Solid tile overlapping the player's body rows in column c."""
        if c >= length:
            return False
        top = y // TILE
        bot = (y + PLAYER_H - 1) // TILE
        for r in range(max(0, top), min(rows, bot + 1)):
            if level.tiles[r, c] == SOLID:
                return True
        return False

    if grounded:
        # gap ahead: jump at the edge to keep the full arc for the crossing
        if not col_has_ground(col + 1):
            return ACTION_JUMP
        # wall/pillar ahead at body height
        if col_blocked(col + 1):
            return ACTION_JUMP
        # enemy close ahead on roughly our level
        for ex, ey, _ in state.entities:
            if 0 <= ex - x <= 3 * TILE and abs(ey - (y + PLAYER_H - ENEMY_W)) <= TILE:
                return ACTION_JUMP
    return ACTION_RIGHT
