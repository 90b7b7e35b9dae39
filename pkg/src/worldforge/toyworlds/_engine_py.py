"""Pure-Python (numpy) frame renderer.

This is the reference implementation of the per-pixel render contract; the
compiled backend in _engine_c.pyx mirrors it bit for bit. All color math is
64-bit integer hashing so output is platform independent.

Sprite rows are (kind, x_px, y_px) with kind 0 = player, 1 = enemy;
coordinates are world-space pixels of the sprite's top-left corner.
"""

from __future__ import annotations

import numpy as np

from .level import (
    FLAG,
    LADDER,
    PAL_ENEMY,
    PAL_FLAG,
    PAL_GROUND,
    PAL_GROUND_LINE,
    PAL_LADDER,
    PAL_PLAYER,
    PAL_SKY,
    PAL_SKY_ACCENT,
    PAL_SKY_HILL,
    SOLID,
)

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

SPRITE_PLAYER = 0
SPRITE_ENEMY = 1
PLAYER_W, PLAYER_H = 4, 6
ENEMY_W, ENEMY_H = 4, 4


def _mix(x: np.ndarray) -> np.ndarray:
    # uint64 wraparound is the point here; silence numpy's scalar overflow note
    with np.errstate(over="ignore"):
        x = x + _GAMMA
        x = (x ^ (x >> np.uint64(30))) * _M1
        x = (x ^ (x >> np.uint64(27))) * _M2
        return x ^ (x >> np.uint64(31))


def _mix2(a, b):
    return _mix(a ^ _mix(b))


def _mix3(a, b, c):
    return _mix(_mix2(a, b) ^ _mix(c))


def render_frame(tiles, palette, theme, camera, sprites, h_px, w_px, blank):
    """Render one (h_px, w_px, 3) uint8 frame."""
    out = np.zeros((h_px, w_px, 3), dtype=np.uint8)
    if blank:
        return out

    rows, length = tiles.shape
    pal = palette.astype(np.int64)
    th = np.uint64(theme)

    wx = np.uint64(camera) + np.arange(w_px, dtype=np.uint64)[None, :]
    wy = np.arange(h_px, dtype=np.uint64)[:, None]
    wx_b = np.broadcast_to(wx, (h_px, w_px))
    wy_b = np.broadcast_to(wy, (h_px, w_px))

    tx = (wx_b >> np.uint64(2)).astype(np.int64)
    ty = (wy_b >> np.uint64(2)).astype(np.int64)
    in_level = tx < length
    tile = np.where(in_level, tiles[ty, np.minimum(tx, length - 1)], 0)

    # sky layer: flat color, sparse accent speckle, hills near the horizon
    hill_row = h_px - 10 - (_mix2(wx_b >> np.uint64(3), th) % np.uint64(9)).astype(
        np.int64
    )
    speckle = _mix3(wx_b >> np.uint64(1), wy_b >> np.uint64(1), th) % np.uint64(43) == 0
    sky = np.where(
        (wy_b.astype(np.int64) >= hill_row)[:, :, None],
        pal[PAL_SKY_HILL][None, None, :],
        np.where(
            speckle[:, :, None],
            pal[PAL_SKY_ACCENT][None, None, :],
            pal[PAL_SKY][None, None, :],
        ),
    )

    # solid ground: grid lines on tile borders, hashed brightness inside
    border = ((wx_b & np.uint64(3)) == 0) | ((wy_b & np.uint64(3)) == 0)
    noise = (_mix3(wx_b >> np.uint64(2), wy_b >> np.uint64(2), th) & np.uint64(0xF)).astype(
        np.int64
    ) - 8
    ground = np.where(
        border[:, :, None],
        pal[PAL_GROUND_LINE][None, None, :],
        np.clip(pal[PAL_GROUND][None, None, :] + noise[:, :, None], 0, 255),
    )

    # ladder: two rails plus rungs, sky in between
    xin = wx_b & np.uint64(3)
    yin = wy_b & np.uint64(3)
    ladder_px = (xin == 0) | (xin == 3) | (yin == 1)
    ladder = np.where(ladder_px[:, :, None], pal[PAL_LADDER][None, None, :], sky)

    # flag: pole column plus a small banner in the upper-right quadrant
    pole = xin == 1
    banner = ((yin == 0) | (yin == 1)) & ((xin == 2) | (xin == 3))
    flag = np.where(
        pole[:, :, None],
        pal[PAL_GROUND_LINE][None, None, :],
        np.where(banner[:, :, None], pal[PAL_FLAG][None, None, :], sky),
    )

    img = sky
    img = np.where((tile == SOLID)[:, :, None], ground, img)
    img = np.where((tile == LADDER)[:, :, None], ladder, img)
    img = np.where((tile == FLAG)[:, :, None], flag, img)
    out[:] = img.astype(np.uint8)

    cam = int(camera)
    for kind, sx, sy in np.asarray(sprites, dtype=np.int64).reshape(-1, 3):
        _blit_sprite(out, pal, int(kind), int(sx) - cam, int(sy), h_px, w_px)
    return out


def _blit_sprite(out, pal, kind, x, y, h_px, w_px):
    if kind == SPRITE_PLAYER:
        w, h = PLAYER_W, PLAYER_H
        body = pal[PAL_PLAYER]
        head = np.clip(body + 45, 0, 255)
    else:
        w, h = ENEMY_W, ENEMY_H
        body = pal[PAL_ENEMY]
        head = body
    for dy in range(h):
        py = y + dy
        if py < 0 or py >= h_px:
            continue
        for dx in range(w):
            px = x + dx
            if px < 0 or px >= w_px:
                continue
            if kind == SPRITE_PLAYER:
                if dy == 1 and dx == 2:
                    out[py, px] = (250, 250, 250)
                elif dy < 2:
                    out[py, px] = head
                else:
                    out[py, px] = body
            else:
                if dy == 1 and dx in (1, 2):
                    out[py, px] = (250, 250, 250)
                else:
                    out[py, px] = body
