import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from worldforge.datastore import (
    DatasetManifest,
    Episode,
    collect,
    read_episode,
    sample_batch,
    split_validation,
    write_episode,
)
from worldforge.errors import (
    EmptyPoolError,
    MagicMismatchError,
    TruncationError,
    VersionMismatchError,
)
from worldforge.toyworlds import generate_family, random_policy, replay


def _episode(t=5, h=8, w=8, seed=0):
    rng = np.random.default_rng(seed)
    return Episode(
        env_id="toy-test",
        episode_seed=seed,
        frames=rng.integers(0, 256, (t, h, w, 3), dtype=np.uint8),
        actions=rng.integers(0, 5, (t - 1,), dtype=np.uint8),
    )


class TestEpisodeFormat:
    def test_roundtrip(self, tmp_path):
        ep = _episode()
        write_episode(ep, tmp_path / "a.grxe")
        assert read_episode(tmp_path / "a.grxe") == ep

    @settings(max_examples=25, deadline=None)
    @given(
        t=st.integers(2, 9),
        h=st.sampled_from([4, 8, 16]),
        w=st.sampled_from([4, 8, 16]),
        seed=st.integers(0, 10_000),
    )
    def test_roundtrip_property(self, tmp_path_factory, t, h, w, seed):
        path = tmp_path_factory.mktemp("eps") / "e.grxe"
        ep = _episode(t, h, w, seed)
        write_episode(ep, path)
        assert read_episode(path) == ep

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "a.grxe"
        write_episode(_episode(), path)
        data = bytearray(path.read_bytes())
        data[:4] = b"NOPE"
        path.write_bytes(bytes(data))
        with pytest.raises(MagicMismatchError):
            read_episode(path)

    def test_bad_version(self, tmp_path):
        path = tmp_path / "a.grxe"
        write_episode(_episode(), path)
        data = bytearray(path.read_bytes())
        data[4:6] = (99).to_bytes(2, "little")
        path.write_bytes(bytes(data))
        with pytest.raises(VersionMismatchError):
            read_episode(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "a.grxe"
        write_episode(_episode(), path)
        data = path.read_bytes()
        path.write_bytes(data[:-10])
        with pytest.raises(TruncationError):
            read_episode(path)

    def test_header_payload_inconsistency(self, tmp_path):
        path = tmp_path / "a.grxe"
        write_episode(_episode(t=4), path)
        data = bytearray(path.read_bytes())
        data[6:10] = (400).to_bytes(4, "little")  # inflate T
        path.write_bytes(bytes(data))
        with pytest.raises(TruncationError):
            read_episode(path)


@pytest.fixture(scope="module")
def small_dataset(tmp_path_factory):
    specs = generate_family(7, 2, (32, 32))
    out = tmp_path_factory.mktemp("ds")
    manifest = collect(
        random_policy, specs, episodes_per_env=5, max_len=40, out=out, seed=3
    )
    return manifest


class TestCollect:
    def test_counts_and_lengths(self, small_dataset):
        assert len(small_dataset.episodes) == 10
        for e in small_dataset.episodes:
            assert 2 <= e.length <= 40

    def test_minimum_episode(self, tmp_path):
        specs = generate_family(7, 1, (32, 32))
        m = collect(random_policy, specs, 1, 2, tmp_path, seed=0)
        ep = read_episode(m.episode_path(m.episodes[0]))
        assert len(ep.frames) == 2
        assert len(ep.actions) == 1

    def test_failure_cleans_partial_output(self, tmp_path):
        specs = generate_family(7, 1, (32, 32))
        calls = {"n": 0}

        def flaky_policy(state, spec, rng):
            calls["n"] += 1
            if calls["n"] > 30:
                raise OSError("disk on fire")
            return 1

        with pytest.raises(OSError):
            collect(flaky_policy, specs, 5, 10, tmp_path, seed=0)
        assert list(tmp_path.glob("*.grxe")) == []
        assert not (tmp_path / "manifest.json").exists()

    def test_manifest_roundtrip(self, small_dataset):
        loaded = DatasetManifest.load(small_dataset.root)
        assert loaded.name == small_dataset.name
        assert [e.path for e in loaded.episodes] == [
            e.path for e in small_dataset.episodes
        ]

    def test_replay_fidelity(self, small_dataset):
        # bit-exact re-simulation of every stored episode
        for entry in small_dataset.episodes:
            ep = read_episode(small_dataset.episode_path(entry))
            spec = small_dataset.spec_for(entry.env_id)
            frames, _ = replay(spec, ep.episode_seed, ep.actions)
            assert np.array_equal(frames, ep.frames)


class TestSplitValidation:
    def _manifest(self, n_per_env, envs=("a", "b")):
        from worldforge.datastore import EpisodeEntry

        m = DatasetManifest(name="x", policy="random", specs=[])
        for env in envs:
            for k in range(n_per_env):
                m.episodes.append(EpisodeEntry(f"{env}_{k}", env, 10, k))
        return m

    def test_one_percent_of_100(self):
        m = split_validation(self._manifest(100), frac=0.01, seed=0)
        for env in ("a", "b"):
            assert len(m.entries(split="val", env_id=env)) == 1

    def test_ceiling_rounding(self):
        m = split_validation(self._manifest(50), frac=0.01, seed=0)
        for env in ("a", "b"):
            assert len(m.entries(split="val", env_id=env)) == 1

    def test_frac_zero(self):
        m = split_validation(self._manifest(10), frac=0.0, seed=0)
        assert m.entries(split="val") == []

    def test_partition_and_determinism(self):
        m1 = split_validation(self._manifest(31), frac=0.1, seed=5)
        m2 = split_validation(self._manifest(31), frac=0.1, seed=5)
        assert [e.split for e in m1.episodes] == [e.split for e in m2.episodes]
        n_val = len(m1.entries(split="val"))
        n_train = len(m1.entries(split="train"))
        assert n_val + n_train == len(m1.episodes)
        assert n_val == 2 * 4  # ceil(3.1) per env


class TestSampleBatch:
    def test_shapes(self, small_dataset):
        rng = np.random.default_rng(0)
        frames, actions = sample_batch(small_dataset, 4, seq_len=16, rng=rng)
        assert frames.shape == (4, 16, 32, 32, 3)
        assert actions.shape == (4, 15)

    def test_deterministic(self, small_dataset):
        a = sample_batch(small_dataset, 4, 8, np.random.default_rng(5))
        b = sample_batch(small_dataset, 4, 8, np.random.default_rng(5))
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_empty_pool(self, small_dataset):
        with pytest.raises(EmptyPoolError):
            sample_batch(small_dataset, 2, seq_len=10_000)

    def test_coverage(self, tmp_path):
        # every eligible episode must eventually be drawn
        from worldforge.datastore import EpisodeEntry

        m = DatasetManifest(name="x", policy="random", specs=[])
        m.root = tmp_path
        for k in range(10):
            ep = Episode(
                "e",
                k,
                np.full((4, 4, 4, 3), k, dtype=np.uint8),
                np.zeros(3, dtype=np.uint8),
            )
            write_episode(ep, tmp_path / f"{k}.grxe")
            m.episodes.append(EpisodeEntry(f"{k}.grxe", "e", 4, k))
        rng = np.random.default_rng(0)
        seen = set()
        for _ in range(100):
            frames, _ = sample_batch(m, 100, seq_len=2, rng=rng)
            seen.update(np.unique(frames[:, 0, 0, 0, 0]).tolist())
        assert seen == set(range(10))
