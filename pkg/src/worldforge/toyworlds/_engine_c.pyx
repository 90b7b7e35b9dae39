# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled frame renderer.

Scalar mirror of the numpy reference in _engine_py.py. The two backends must
stay bit-identical; tests/test_toyworlds.py enforces parity on random scenes.
"""

import numpy as np

ctypedef unsigned long long u64

cdef enum:
    T_SOLID = 1
    T_LADDER = 2
    T_FLAG = 3

    # palette rows, keep in sync with level.py
    P_SKY = 0
    P_SKY_ACCENT = 1
    P_SKY_HILL = 2
    P_GROUND = 3
    P_GROUND_LINE = 4
    P_LADDER = 5
    P_FLAG = 6
    P_PLAYER = 7
    P_ENEMY = 8

    PLAYER_W = 4
    PLAYER_H = 6
    ENEMY_W = 4
    ENEMY_H = 4


cdef inline u64 _mix(u64 x) nogil:
    x = x + <u64>0x9E3779B97F4A7C15
    x = (x ^ (x >> 30)) * <u64>0xBF58476D1CE4E5B9
    x = (x ^ (x >> 27)) * <u64>0x94D049BB133111EB
    return x ^ (x >> 31)


cdef inline u64 _mix2(u64 a, u64 b) nogil:
    return _mix(a ^ _mix(b))


cdef inline u64 _mix3(u64 a, u64 b, u64 c) nogil:
    return _mix(_mix2(a, b) ^ _mix(c))


cdef inline unsigned char _clamp(long v) nogil:
    if v < 0:
        return 0
    if v > 255:
        return 255
    return <unsigned char>v


def render_frame(tiles, palette, theme, camera, sprites, h_px, w_px, blank):
    """Render one (h_px, w_px, 3) uint8 frame."""
    out = np.zeros((h_px, w_px, 3), dtype=np.uint8)
    if blank:
        return out

    cdef signed char[:, :] t = tiles
    cdef unsigned char[:, :] pal = palette
    cdef long long[:, :] spr = np.ascontiguousarray(
        np.asarray(sprites, dtype=np.int64).reshape(-1, 3)
    )
    cdef unsigned char[:, :, :] o = out

    cdef u64 th = <u64>theme
    cdef long cam = camera
    cdef long H = h_px, W = w_px
    cdef long length = t.shape[1]
    cdef long x, y, tx, ty, hill_row, noise, c
    cdef u64 wx, wy
    cdef int tile, xin, yin
    cdef int row

    for y in range(H):
        wy = <u64>y
        ty = y >> 2
        for x in range(W):
            wx = <u64>(cam + x)
            tx = (cam + x) >> 2
            tile = t[ty, tx] if tx < length else 0

            if tile == T_SOLID:
                if (wx & 3) == 0 or (wy & 3) == 0:
                    row = P_GROUND_LINE
                    for c in range(3):
                        o[y, x, c] = pal[row, c]
                else:
                    noise = <long>(_mix3(wx >> 2, wy >> 2, th) & 0xF) - 8
                    for c in range(3):
                        o[y, x, c] = _clamp(<long>pal[P_GROUND, c] + noise)
                continue

            xin = <int>(wx & 3)
            yin = <int>(wy & 3)
            if tile == T_LADDER and (xin == 0 or xin == 3 or yin == 1):
                for c in range(3):
                    o[y, x, c] = pal[P_LADDER, c]
                continue
            if tile == T_FLAG:
                if xin == 1:
                    for c in range(3):
                        o[y, x, c] = pal[P_GROUND_LINE, c]
                    continue
                if (yin == 0 or yin == 1) and (xin == 2 or xin == 3):
                    for c in range(3):
                        o[y, x, c] = pal[P_FLAG, c]
                    continue

            # sky
            hill_row = H - 10 - <long>(_mix2(wx >> 3, th) % 9)
            if y >= hill_row:
                row = P_SKY_HILL
            elif _mix3(wx >> 1, wy >> 1, th) % 43 == 0:
                row = P_SKY_ACCENT
            else:
                row = P_SKY
            for c in range(3):
                o[y, x, c] = pal[row, c]

    cdef long k, kind, sx, sy, dx, dy, px, py
    for k in range(spr.shape[0]):
        kind = spr[k, 0]
        sx = spr[k, 1] - cam
        sy = spr[k, 2]
        if kind == 0:
            for dy in range(PLAYER_H):
                py = sy + dy
                if py < 0 or py >= H:
                    continue
                for dx in range(PLAYER_W):
                    px = sx + dx
                    if px < 0 or px >= W:
                        continue
                    if dy == 1 and dx == 2:
                        o[py, px, 0] = 250
                        o[py, px, 1] = 250
                        o[py, px, 2] = 250
                    elif dy < 2:
                        for c in range(3):
                            o[py, px, c] = _clamp(<long>pal[P_PLAYER, c] + 45)
                    else:
                        for c in range(3):
                            o[py, px, c] = pal[P_PLAYER, c]
        else:
            for dy in range(ENEMY_H):
                py = sy + dy
                if py < 0 or py >= H:
                    continue
                for dx in range(ENEMY_W):
                    px = sx + dx
                    if px < 0 or px >= W:
                        continue
                    if dy == 1 and (dx == 1 or dx == 2):
                        o[py, px, 0] = 250
                        o[py, px, 1] = 250
                        o[py, px, 2] = 250
                    else:
                        for c in range(3):
                            o[py, px, c] = pal[P_ENEMY, c]
    return out
