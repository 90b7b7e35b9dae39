"""Bit-exact on-disk episode format.

Layout (all integers little-endian):
    magic   4s   b"GRXE"
    version u16  = 1
    T       u32  frame count
    H, W    u16  frame height/width
    C       u8   = 3
    env_id  u16 length + UTF-8 bytes
    seed    u64  episode seed
    payload raw frame bytes, row-major T*H*W*C, then T-1 action bytes (u8)

Raw frames (no codec) keep replay comparisons exact; compression, if ever
wanted, belongs to the storage layer, not the format.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import (
    MagicMismatchError,
    ShapeMismatchError,
    TruncationError,
    VersionMismatchError,
)

MAGIC = b"GRXE"
VERSION = 1
_HEADER = struct.Struct("<4sHIHHB")
_SEED = struct.Struct("<Q")


@dataclass
class Episode:
    env_id: str
    episode_seed: int
    frames: np.ndarray  # uint8 [T, H, W, 3]
    actions: np.ndarray  # uint8 [T-1]

    def __post_init__(self):
        self.frames = np.ascontiguousarray(self.frames, dtype=np.uint8)
        self.actions = np.ascontiguousarray(self.actions, dtype=np.uint8)
        if self.frames.ndim != 4 or self.frames.shape[3] != 3:
            raise ShapeMismatchError(f"frames shape {self.frames.shape}")
        if len(self.actions) != len(self.frames) - 1:
            raise ShapeMismatchError(
                f"{len(self.actions)} actions for {len(self.frames)} frames"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Episode)
            and self.env_id == other.env_id
            and self.episode_seed == other.episode_seed
            and np.array_equal(self.frames, other.frames)
            and np.array_equal(self.actions, other.actions)
        )

    def __len__(self):
        return len(self.frames)


def write_episode(ep: Episode, path: str | Path) -> None:
    t, h, w, c = ep.frames.shape
    env_bytes = ep.env_id.encode("utf-8")
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, VERSION, t, h, w, c))
        f.write(struct.pack("<H", len(env_bytes)))
        f.write(env_bytes)
        f.write(_SEED.pack(ep.episode_seed))
        f.write(ep.frames.tobytes())
        f.write(ep.actions.tobytes())


def read_episode(path: str | Path) -> Episode:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise TruncationError(f"{path}: file shorter than header")
    magic, version, t, h, w, c = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise MagicMismatchError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise VersionMismatchError(f"{path}: version {version}")
    if c != 3:
        raise ShapeMismatchError(f"{path}: {c} channels")
    off = _HEADER.size
    if len(data) < off + 2:
        raise TruncationError(f"{path}: truncated env_id length")
    (n_env,) = struct.unpack_from("<H", data, off)
    off += 2
    if len(data) < off + n_env + _SEED.size:
        raise TruncationError(f"{path}: truncated env_id/seed")
    env_id = data[off : off + n_env].decode("utf-8")
    off += n_env
    (seed,) = _SEED.unpack_from(data, off)
    off += _SEED.size

    n_frame_bytes = t * h * w * c
    n_action_bytes = max(0, t - 1)
    if len(data) != off + n_frame_bytes + n_action_bytes:
        raise TruncationError(
            f"{path}: header promises {off + n_frame_bytes + n_action_bytes} "
            f"bytes, file has {len(data)}"
        )
    frames = np.frombuffer(
        data, dtype=np.uint8, count=n_frame_bytes, offset=off
    ).reshape(t, h, w, c)
    actions = np.frombuffer(
        data, dtype=np.uint8, count=n_action_bytes, offset=off + n_frame_bytes
    )
    return Episode(env_id, seed, frames.copy(), actions.copy())
