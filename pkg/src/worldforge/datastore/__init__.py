"""Episode recording, storage format, manifests and batch sampling."""

from .collect import collect, record_episode
from .episodes import Episode, read_episode, write_episode
from .manifest import (
    SPLIT_TEST,
    SPLIT_TRAIN,
    SPLIT_VAL,
    DatasetManifest,
    EpisodeEntry,
    split_validation,
)
from .sampler import clear_episode_cache, sample_batch

__all__ = [
    "Episode",
    "DatasetManifest",
    "EpisodeEntry",
    "SPLIT_TRAIN",
    "SPLIT_VAL",
    "SPLIT_TEST",
    "clear_episode_cache",
    "collect",
    "read_episode",
    "record_episode",
    "sample_batch",
    "split_validation",
    "write_episode",
]
