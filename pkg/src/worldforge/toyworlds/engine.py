"""Environment state, fixed-point physics, and rendering.

All state transitions use integer subpixel arithmetic (1 px = 256 subpixels),
so rollouts are bit-identical across runs and platforms. Rendering goes
through a backend selected at import: the compiled kernel from _engine_c if
it was built, otherwise the numpy reference in _engine_py. Both implement the
same integer pixel contract; WORLDFORGE_PURE_PY=1 forces the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation
from . import _engine_py
from .hashing import mix3
from .level import LADDER, TILE, Level, build_level
from .specs import (
    ACTION_DOWN,
    ACTION_JUMP,
    ACTION_LEFT,
    ACTION_RIGHT,
    ACTION_UP,
    EnvSpec,
)

try:
    from . import _engine_c as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

SUBPIX = 256
WALK = 256  # 1 px/step
CLIMB = 192
MAX_FALL = 1024
JUMP_V = 640
SCROLL_MARGIN = 12
PLAYER_W, PLAYER_H = _engine_py.PLAYER_W, _engine_py.PLAYER_H
ENEMY_W, ENEMY_H = _engine_py.ENEMY_W, _engine_py.ENEMY_H
START_LIVES = 5
BLANK_FRAMES = 3
INVULN_TICKS = 20


def _select_backend():
    if _compiled is not None and os.environ.get("WORLDFORGE_PURE_PY") != "1":
        return "compiled", _compiled.render_frame
    return "python", _engine_py.render_frame


_backend_name, _render_fn = _select_backend()


def render_backend() -> str:
    return _backend_name


def use_backend(name: str) -> None:
    """Force a render backend ("compiled" or "python"); used by tests/benchmarks."""
    global _backend_name, _render_fn
    if name == "python":
        _backend_name, _render_fn = "python", _engine_py.render_frame
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled render backend is not built")
        _backend_name, _render_fn = "compiled", _compiled.render_frame
    else:
        raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class EnvState:
    px: int  # player top-left, subpixels
    py: int
    vx: int  # subpixels/step
    vy: int
    camera: int  # pixels, monotone non-decreasing
    tick: int
    lives: int
    blank: int  # death-blank frames remaining
    invuln: int
    alive: bool
    done: bool
    phases: tuple  # per-enemy patrol phase, fixed at reset
    entities: tuple  # per-enemy (x_px, y_px, phase) at current tick


def _entity_positions(level: Level, phases: tuple, tick: int) -> tuple:
    out = []
    for i, (lo, hi, y) in enumerate(level.enemies):
        span = hi - lo
        period = 2 * span
        d = (phases[i] + tick // 2) % period
        x = lo + (d if d <= span else period - d)
        out.append((x, y, phases[i]))
    return tuple(out)


def _solid(level: Level, x_px: int, y_px: int) -> bool:
    if x_px < 0:
        return True  # left world edge is a wall
    if y_px < 0 or y_px >= level.height_px:
        return False
    tx = x_px // TILE
    if tx >= level.tiles.shape[1]:
        return False
    return level.tiles[y_px // TILE, tx] == 1


def _rect_hits_solid(level: Level, x_px: int, y_px: int) -> bool:
    for cx in (x_px, x_px + PLAYER_W - 1):
        for cy in (y_px, y_px + PLAYER_H // 2, y_px + PLAYER_H - 1):
            if _solid(level, cx, cy):
                return True
    return False


def _on_ground(level: Level, px: int, py: int) -> bool:
    x, y = px // SUBPIX, py // SUBPIX
    foot = y + PLAYER_H
    return _solid(level, x, foot) or _solid(level, x + PLAYER_W - 1, foot)


def _on_ladder(level: Level, px: int, py: int) -> bool:
    x = px // SUBPIX + PLAYER_W // 2
    y = py // SUBPIX + PLAYER_H // 2
    if y < 0 or y >= level.height_px or x < 0 or x >= level.tiles.shape[1] * TILE:
        return False
    return level.tiles[y // TILE, x // TILE] == LADDER


def _respawn_position(level: Level, camera: int) -> tuple[int, int]:
    col = (camera + SCROLL_MARGIN) // TILE
    for c in range(col, level.tiles.shape[1]):
        top = level.ground_top_px(c)
        if top < level.height_px:
            return c * TILE * SUBPIX, (top - PLAYER_H) * SUBPIX
    return camera * SUBPIX, 0


def render_state(level: Level, state: EnvState) -> np.ndarray:
    """Render the state to an (H, W, 3) uint8 frame via the active backend."""
    blank = state.blank > 0 or not state.alive
    if blank:
        sprites = np.zeros((0, 3), dtype=np.int64)
    else:
        rows = [(_engine_py.SPRITE_PLAYER, state.px // SUBPIX, state.py // SUBPIX)]
        rows += [
            (_engine_py.SPRITE_ENEMY, ex, ey) for ex, ey, _ in state.entities
        ]
        sprites = np.asarray(rows, dtype=np.int64)
    return _render_fn(
        level.tiles,
        level.palette,
        level.theme,
        state.camera,
        sprites,
        level.height_px,
        level.width_px,
        blank,
    )


def reset(spec: EnvSpec, episode_seed: int) -> tuple[EnvState, np.ndarray]:
    """Start state and its rendered frame, shape (1, H, W, 3).

    Deterministic in (spec, episode_seed); the seed only varies enemy phases.
    """
    level = build_level(spec)
    phases = tuple(
        mix3(episode_seed, i, 0xE11) % (2 * (hi - lo))
        for i, (lo, hi, _) in enumerate(level.enemies)
    )
    state = EnvState(
        px=level.spawn[0] * SUBPIX,
        py=level.spawn[1] * SUBPIX,
        vx=0,
        vy=0,
        camera=0,
        tick=0,
        lives=START_LIVES,
        blank=0,
        invuln=0,
        alive=True,
        done=False,
        phases=phases,
        entities=_entity_positions(level, phases, 0),
    )
    return state, render_state(level, state)[None]


def step(
    state: EnvState, action: int, spec: EnvSpec
) -> tuple[EnvState, np.ndarray, bool]:
    """One physics tick; returns (state, frame (1,H,W,3), done)."""
    if state.done:
        raise ContractViolation("cannot step a finished episode")
    level = build_level(spec)
    action = int(action) % 5

    px, py, vx, vy = state.px, state.py, state.vx, state.vy
    camera = state.camera
    tick = state.tick + 1
    lives, blank, invuln = state.lives, state.blank, state.invuln
    alive, done = state.alive, False

    if blank > 0:
        blank -= 1
        if blank == 0:
            px, py = _respawn_position(level, camera)
            vx = vy = 0
            invuln = INVULN_TICKS
    else:
        vx = -WALK if action == ACTION_LEFT else WALK if action == ACTION_RIGHT else 0
        if _on_ladder(level, px, py):
            vy = -CLIMB if action == ACTION_UP else CLIMB if action == ACTION_DOWN else 0
        else:
            # up (and down) are inert in the air: plain no-ops this tick
            if action == ACTION_JUMP and _on_ground(level, px, py):
                vy = -JUMP_V
            else:
                vy = min(vy + level.gravity_subpix, MAX_FALL)

        # horizontal move with wall clamping; the camera is a hard left edge
        px = max(px + vx, camera * SUBPIX)
        px = min(px, (level.length_px - PLAYER_W) * SUBPIX)
        x_px, y_px = px // SUBPIX, py // SUBPIX
        if vx > 0:
            edge = x_px + PLAYER_W - 1
            if any(
                _solid(level, edge, y_px + dy)
                for dy in (0, PLAYER_H // 2, PLAYER_H - 1)
            ):
                px = ((edge // TILE) * TILE - PLAYER_W) * SUBPIX
        elif vx < 0:
            if any(
                _solid(level, x_px, y_px + dy)
                for dy in (0, PLAYER_H // 2, PLAYER_H - 1)
            ):
                px = ((x_px // TILE) * TILE + TILE) * SUBPIX

        # vertical move with floor/ceiling clamping
        py = py + vy
        x_px, y_px = px // SUBPIX, py // SUBPIX
        if vy > 0:
            foot = y_px + PLAYER_H - 1
            if _solid(level, x_px, foot) or _solid(level, x_px + PLAYER_W - 1, foot):
                py = ((foot // TILE) * TILE - PLAYER_H) * SUBPIX
                vy = 0
        elif vy < 0:
            if _solid(level, x_px, y_px) or _solid(level, x_px + PLAYER_W - 1, y_px):
                py = ((y_px // TILE) * TILE + TILE) * SUBPIX
                vy = 0
        py = max(py, -8 * SUBPIX)

        camera = max(camera, px // SUBPIX - SCROLL_MARGIN)
        camera = min(max(camera, 0), max(0, level.length_px - level.width_px))

        died = py // SUBPIX >= level.height_px  # fell into a pit
        entities = _entity_positions(level, state.phases, tick)
        if not died and invuln == 0:
            pl = px // SUBPIX
            pt = py // SUBPIX
            for ex, ey, _ in entities:
                if (
                    pl < ex + ENEMY_W
                    and ex < pl + PLAYER_W
                    and pt < ey + ENEMY_H
                    and ey < pt + PLAYER_H
                ):
                    died = True
                    break
        if died:
            lives -= 1
            if lives > 0:
                blank = BLANK_FRAMES
            else:
                alive = False
                done = True
        invuln = max(0, invuln - 1)
        if px // SUBPIX + PLAYER_W >= level.goal_x_px:
            done = True

    new_state = EnvState(
        px=px,
        py=py,
        vx=vx,
        vy=vy,
        camera=camera,
        tick=tick,
        lives=lives,
        blank=blank,
        invuln=invuln,
        alive=alive,
        done=done,
        phases=state.phases,
        entities=_entity_positions(level, state.phases, tick),
    )
    return new_state, render_state(level, new_state)[None], done


class ToyEnv:
    """Convenience wrapper binding a spec to its (cached) level."""

    def __init__(self, spec: EnvSpec):
        self.spec = spec
        self.level = build_level(spec)

    def reset(self, episode_seed: int):
        return reset(self.spec, episode_seed)

    def step(self, state: EnvState, action: int):
        return step(state, action, self.spec)

    def render(self, state: EnvState) -> np.ndarray:
        return render_state(self.level, state)


def replay(
    spec: EnvSpec, episode_seed: int, actions
) -> tuple[np.ndarray, list[EnvState]]:
    """Re-simulate an action sequence; returns (frames [T,H,W,3], states)."""
    state, frame = reset(spec, episode_seed)
    frames = [frame[0]]
    states = [state]
    for a in actions:
        if state.done:
            break
        state, frame, _ = step(state, int(a), spec)
        frames.append(frame[0])
        states.append(state)
    return np.stack(frames), states


def columns_revealed(states, width_px: int) -> int:
    """Distinct world pixel columns ever visible: the scroll-novelty counter."""
    if not states:
        return 0
    return max(s.camera for s in states) + width_px
