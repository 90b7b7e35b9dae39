"""Episode collection: roll policies in environments and persist the results."""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np

from ..toyworlds import EnvSpec, reset, step
from ..toyworlds.hashing import mix3
from .episodes import Episode, write_episode
from .manifest import DatasetManifest, EpisodeEntry


def record_episode(
    spec: EnvSpec, policy, episode_seed: int, max_len: int, rng
) -> Episode:
    """Roll one episode; length in [2, max_len] frames."""
    state, frame = reset(spec, episode_seed)
    frames = [frame[0]]
    actions = []
    while len(frames) < max_len and not state.done:
        a = int(policy(state, spec, rng))
        state, frame, _ = step(state, a, spec)
        actions.append(a)
        frames.append(frame[0])
    if len(frames) < 2:  # policy cannot end an episode at the reset frame
        a = int(policy(state, spec, rng))
        state, frame, _ = step(state, a, spec)
        actions.append(a)
        frames.append(frame[0])
    return Episode(spec.env_id, episode_seed, np.stack(frames), np.array(actions))


def collect(
    policy,
    specs: list[EnvSpec],
    episodes_per_env: int,
    max_len: int,
    out: str | Path,
    name: str = "dataset",
    policy_tag: str = "random",
    seed: int = 0,
) -> DatasetManifest:
    """Record episodes_per_env episodes in every spec and write a manifest.

    Episode seeds and policy rngs derive from `seed`, so a collection run is
    reproducible. On failure, already-written episode files are removed and
    no manifest is left behind.
    """
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = DatasetManifest(name=name, policy=policy_tag, specs=list(specs))
    written: list[Path] = []
    try:
        for si, spec in enumerate(specs):
            for k in range(episodes_per_env):
                episode_seed = mix3(seed, si, k) & 0x7FFFFFFF
                rng = random.Random(mix3(seed ^ 0xC0111EC7, si, k))
                ep = record_episode(spec, policy, episode_seed, max_len, rng)
                rel = f"{spec.env_id}_{k:05d}.grxe"
                write_episode(ep, out / rel)
                written.append(out / rel)
                manifest.episodes.append(
                    EpisodeEntry(
                        path=rel,
                        env_id=spec.env_id,
                        length=len(ep),
                        episode_seed=episode_seed,
                    )
                )
    except BaseException:
        for p in written:
            p.unlink(missing_ok=True)
        raise
    manifest.save(out)
    return manifest
