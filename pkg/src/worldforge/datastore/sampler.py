"""Batched sequence sampling for training."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from ..errors import EmptyPoolError
from .episodes import Episode, read_episode
from .manifest import DatasetManifest


@lru_cache(maxsize=1024)
def _cached_episode(path: str) -> Episode:
    return read_episode(path)


def clear_episode_cache() -> None:
    _cached_episode.cache_clear()


def sample_batch(
    manifest: DatasetManifest,
    batch: int,
    seq_len: int = 16,
    rng: np.random.Generator | None = None,
    split: str | None = "train",
) -> tuple[np.ndarray, np.ndarray]:
    """Sample (frames [B, seq_len, H, W, 3], actions [B, seq_len-1]).

    Uniform over eligible episodes, then uniform over start offsets within
    the pick. Episodes shorter than seq_len are excluded; if none remain,
    raises EmptyPoolError.
    """
    rng = rng or np.random.default_rng()
    pool = [e for e in manifest.entries(split=split) if e.length >= seq_len]
    if not pool:
        raise EmptyPoolError(
            f"no episode of length >= {seq_len} in split {split!r}"
        )
    frames, actions = [], []
    for _ in range(batch):
        entry = pool[int(rng.integers(len(pool)))]
        ep = _cached_episode(str(manifest.episode_path(entry)))
        start = int(rng.integers(entry.length - seq_len + 1))
        frames.append(ep.frames[start : start + seq_len])
        actions.append(ep.actions[start : start + seq_len - 1])
    return np.stack(frames), np.stack(actions)
