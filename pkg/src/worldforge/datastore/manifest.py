"""Dataset manifests: the index over a directory of episode files."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..toyworlds import EnvSpec

MANIFEST_NAME = "manifest.json"

SPLIT_TRAIN = "train"
SPLIT_VAL = "val"
SPLIT_TEST = "test"


@dataclass
class EpisodeEntry:
    path: str  # relative to the manifest directory
    env_id: str
    length: int
    episode_seed: int
    split: str = SPLIT_TRAIN


@dataclass
class DatasetManifest:
    name: str
    policy: str  # {random, expert, explore}
    specs: list[EnvSpec]
    episodes: list[EpisodeEntry] = field(default_factory=list)
    root: Path | None = None  # set on save/load, not serialized

    def spec_for(self, env_id: str) -> EnvSpec:
        for s in self.specs:
            if s.env_id == env_id:
                return s
        raise KeyError(env_id)

    def entries(self, split: str | None = None, env_id: str | None = None):
        out = self.episodes
        if split is not None:
            out = [e for e in out if e.split == split]
        if env_id is not None:
            out = [e for e in out if e.env_id == env_id]
        return out

    def episode_path(self, entry: EpisodeEntry) -> Path:
        if self.root is None:
            raise ValueError("manifest has no root directory")
        return self.root / entry.path

    def save(self, directory: str | Path) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        payload = {
            "name": self.name,
            "policy": self.policy,
            "specs": [s.to_json() for s in self.specs],
            "episodes": [
                {
                    "path": e.path,
                    "env_id": e.env_id,
                    "length": e.length,
                    "episode_seed": e.episode_seed,
                    "split": e.split,
                }
                for e in self.episodes
            ],
        }
        path = directory / MANIFEST_NAME
        path.write_text(json.dumps(payload, indent=1))
        self.root = directory
        return path

    @classmethod
    def load(cls, path: str | Path) -> "DatasetManifest":
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_NAME
        d = json.loads(path.read_text())
        m = cls(
            name=d["name"],
            policy=d["policy"],
            specs=[EnvSpec.from_json(s) for s in d["specs"]],
            episodes=[EpisodeEntry(**e) for e in d["episodes"]],
        )
        m.root = path.parent
        return m


def split_validation(
    manifest: DatasetManifest, frac: float = 0.01, seed: int = 0
) -> DatasetManifest:
    """Tag ceil(frac*n) episodes per environment as validation.

    frac=0 means an explicitly empty validation split. Deterministic in seed;
    returns the same manifest object with updated split tags.
    """
    rng = np.random.default_rng(seed)
    by_env: dict[str, list[EpisodeEntry]] = {}
    for e in manifest.episodes:
        by_env.setdefault(e.env_id, []).append(e)
    for env_id in sorted(by_env):
        entries = by_env[env_id]
        n_val = 0 if frac <= 0 else math.ceil(frac * len(entries))
        picks = rng.permutation(len(entries))[:n_val]
        chosen = set(int(i) for i in picks)
        for i, e in enumerate(entries):
            e.split = SPLIT_VAL if i in chosen else SPLIT_TRAIN
    return manifest
