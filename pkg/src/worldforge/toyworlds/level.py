"""Deterministic level construction from an EnvSpec.

The level (tile map, enemy patrol routes, spawn, goal, palette) is a pure
function of the spec, so two resets of the same spec always agree on layout.
Episode seeds only perturb enemy patrol phases, never geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hashing import HashStream, mix2, mix3
from .specs import EnvSpec

TILE = 4  # pixels per tile edge

EMPTY = 0
SOLID = 1
LADDER = 2
FLAG = 3

# palette rows
PAL_SKY = 0
PAL_SKY_ACCENT = 1
PAL_SKY_HILL = 2
PAL_GROUND = 3
PAL_GROUND_LINE = 4
PAL_LADDER = 5
PAL_FLAG = 6
PAL_PLAYER = 7
PAL_ENEMY = 8
PAL_ROWS = 9

START_ZONE_COLS = 10  # flat, hazard-free lead-in


def theme_palette(theme: int) -> np.ndarray:
    """9x3 uint8 palette derived from the theme id."""
    rng = HashStream(mix2(theme, 0x9A1E77E))
    pal = np.zeros((PAL_ROWS, 3), dtype=np.uint8)
    sky = (20 + rng.below(50), 30 + rng.below(60), 80 + rng.below(110))
    pal[PAL_SKY] = sky
    pal[PAL_SKY_ACCENT] = tuple(min(255, c + 70) for c in sky)
    pal[PAL_SKY_HILL] = (30 + rng.below(40), 70 + rng.below(70), 40 + rng.below(40))
    ground = (80 + rng.below(90), 55 + rng.below(70), 30 + rng.below(50))
    pal[PAL_GROUND] = ground
    pal[PAL_GROUND_LINE] = tuple(max(0, c - 40) for c in ground)
    pal[PAL_LADDER] = (150 + rng.below(80), 110 + rng.below(60), 30 + rng.below(40))
    pal[PAL_FLAG] = (200 + rng.below(55), 30 + rng.below(40), 30 + rng.below(40))
    # player warm, enemy cool: keep the two sprites visually separable
    pal[PAL_PLAYER] = (220 + rng.below(35), 70 + rng.below(80), 40 + rng.below(40))
    pal[PAL_ENEMY] = (30 + rng.below(40), 160 + rng.below(90), 120 + rng.below(100))
    return pal


@dataclass(frozen=True)
class Level:
    tiles: np.ndarray  # int8 [rows, length]
    enemies: tuple  # ((min_px, max_px, y_px), ...)
    spawn: tuple  # (x_px, y_px) player top-left
    goal_x_px: int
    palette: np.ndarray  # uint8 [PAL_ROWS, 3]
    theme: int
    height_px: int
    width_px: int  # frame width
    length_px: int  # level width
    gravity_subpix: int

    def ground_top_px(self, col: int) -> int:
        """Top pixel row of the highest solid tile in a column, or height_px."""
        rows = self.tiles.shape[0]
        col = min(max(col, 0), self.tiles.shape[1] - 1)
        for r in range(rows):
            if self.tiles[r, col] == SOLID:
                return r * TILE
        return self.height_px


def _flat_runs(heights: list[int], min_len: int) -> list[tuple[int, int]]:
    runs = []
    start = 0
    for c in range(1, len(heights) + 1):
        if c == len(heights) or heights[c] != heights[start]:
            if heights[start] > 0 and c - start >= min_len:
                runs.append((start, c - 1))
            start = c
    return runs


@lru_cache(maxsize=256)
def build_level(spec: EnvSpec) -> Level:
    h_px, w_px = spec.frame_size
    rows = h_px // TILE
    length = spec.level_length
    rng = HashStream(mix3(spec.family_seed, spec.theme, length))

    max_h = min(3, rows - 5)
    heights = [1] * length
    h = 1
    c = 0
    while c < length:
        seg = 4 + rng.below(5)
        if c >= START_ZONE_COLS:
            h = min(max_h, max(1, h + rng.below(3) - 1))
        for cc in range(c, min(c + seg, length)):
            heights[cc] = h
        c += seg

    # gaps: 2-wide pits the player can always clear; the far side is never
    # higher than the takeoff side, so the fixed jump arc suffices
    obst_pct = int(spec.obstacle_density * 100)
    c = START_ZONE_COLS
    while c < length - 8:
        if rng.chance(obst_pct, 200):
            near = heights[c - 1]
            heights[c] = heights[c + 1] = 0
            for cc in range(c + 2, min(c + 6, length - 8)):
                heights[cc] = min(heights[cc], near)
            c += 6
        else:
            c += 1

    # pillars: single-column one-tile bumps to hop over; never shortly before
    # a gap, where the descent from the pillar jump would land in the pit
    for c in range(START_ZONE_COLS, length - 8):
        if heights[c] > 0 and rng.chance(obst_pct, 150):
            if (
                heights[c - 1] > 0
                and heights[c + 1] > 0
                and all(heights[cc] > 0 for cc in range(c + 1, min(c + 8, length)))
            ):
                heights[c] = min(max_h + 1, heights[c] + 1)

    tiles = np.zeros((rows, length), dtype=np.int8)
    for c in range(length):
        for r in range(rows - heights[c], rows):
            tiles[r, c] = SOLID

    # ladders: short climbable columns so "up" has somewhere to matter
    for c in range(START_ZONE_COLS, length - 8):
        if heights[c] > 0 and rng.chance(4, 100):
            top = rows - heights[c]
            for r in range(max(0, top - 3), top):
                if tiles[r, c] == EMPTY:
                    tiles[r, c] = LADDER

    # goal flag near the end of the level
    goal_col = length - 2
    heights[goal_col] = max(1, heights[goal_col])
    top = rows - heights[goal_col]
    for r in range(rows - heights[goal_col], rows):
        tiles[r, goal_col] = SOLID
    tiles[max(0, top - 2), goal_col] = FLAG
    tiles[max(0, top - 1), goal_col] = FLAG

    # enemies patrol flat runs outside the start zone
    enemy_pct = int(spec.enemy_density * 100)
    enemies = []
    for c0, c1 in _flat_runs(heights, 5):
        if c1 < START_ZONE_COLS or c0 >= goal_col - 2:
            continue
        if rng.chance(enemy_pct, 100):
            # inset 2 columns so jump landings past obstacles stay clear
            lo = max(c0 + 2, START_ZONE_COLS) * TILE
            hi = (c1 - 2) * TILE
            if hi - lo >= TILE:
                y = (rows - heights[c0]) * TILE - TILE
                enemies.append((lo, hi, y))

    spawn_col = 1
    spawn_y = (rows - heights[spawn_col]) * TILE - 6  # player is 4x6 px
    return Level(
        tiles=tiles,
        enemies=tuple(enemies),
        spawn=(spawn_col * TILE, spawn_y),
        goal_x_px=goal_col * TILE,
        palette=theme_palette(spec.theme),
        theme=spec.theme,
        height_px=h_px,
        width_px=w_px,
        length_px=length * TILE,
        gravity_subpix=round(spec.gravity * 256),
    )
