import math
from collections import Counter

import pytest
from scipy.stats import chi2

from hooklaw.errors import ResourceError
from hooklaw.exact import enumerate_all, hook_distribution_via_part_counts, partition_counts
from hooklaw.partitions import Cell, Partition
from hooklaw.sampling import (
    EXACT_RECURSIVE,
    FRISTEDT_REJECTION,
    SamplerConfig,
    _FristedtSampler,
    cell_from_index,
    default_algorithm,
    make_sampler,
    sample_cell,
    sample_hooks,
    sample_partition,
    stream,
)

SEED = 20250810


def _draws(n, algorithm, count, seed=SEED):
    cfg = SamplerConfig(n=n, algorithm=algorithm, seed=seed)
    sampler = make_sampler(cfg)
    return [sampler.draw(stream(seed, trial)) for trial in range(count)]


def _uniform_chisq_pvalue(n, algorithm, count):
    classes = [p.parts for p in enumerate_all(n)]
    freq = Counter(p.parts for p in _draws(n, algorithm, count))
    expected = count / len(classes)
    stat = sum((freq.get(c, 0) - expected) ** 2 / expected for c in classes)
    return chi2.sf(stat, len(classes) - 1)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(n=0)
    with pytest.raises(ValueError):
        SamplerConfig(n=5, algorithm="bogus")


def test_default_algorithm_switchover():
    assert default_algorithm(10) == EXACT_RECURSIVE
    assert default_algorithm(100_000) == EXACT_RECURSIVE
    assert default_algorithm(100_001) == FRISTEDT_REJECTION


def test_n1_is_always_the_single_partition():
    for algorithm in (EXACT_RECURSIVE, FRISTEDT_REJECTION):
        for p in _draws(1, algorithm, 10):
            assert p.parts == (1,)


def test_sampled_partitions_have_size_n():
    for algorithm in (EXACT_RECURSIVE, FRISTEDT_REJECTION):
        for p in _draws(23, algorithm, 50):
            assert p.n == 23
            assert p.parts == tuple(sorted(p.parts, reverse=True))


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("algorithm", [EXACT_RECURSIVE, FRISTEDT_REJECTION])
def test_uniformity_chisq(n, algorithm):
    assert _uniform_chisq_pvalue(n, algorithm, 20000) > 0.001


def test_exact_sampler_matches_hook_law_at_n100():
    # n = 100 exercises the blocked-envelope path; the reference law comes
    # from the counting table, not from sampling
    n, count = 100, 40000
    cfg = SamplerConfig(n=n, algorithm=EXACT_RECURSIVE, seed=SEED)
    obs = sample_hooks(cfg, count)
    freq = Counter(o.hook for o in obs)
    dist = hook_distribution_via_part_counts(n)
    total = dist.total
    # pool hooks into bins with expected count >= 10
    stat = 0.0
    got = expect = 0.0
    bins = 0
    for k in range(1, n + 1):
        got += freq.get(k, 0)
        expect += dist.weights.get(k, 0) / total * count
        if expect >= 10:
            stat += (got - expect) ** 2 / expect
            got = expect = 0.0
            bins += 1
    assert chi2.sf(stat, bins - 1) > 0.001


def test_two_algorithms_agree_at_n30():
    n, count = 30, 100_000
    he = Counter(o.hook for o in sample_hooks(SamplerConfig(n, EXACT_RECURSIVE, SEED), count, threads=2))
    hf = Counter(o.hook for o in sample_hooks(SamplerConfig(n, FRISTEDT_REJECTION, SEED), count, threads=2))
    for k in range(1, n + 1):
        p1 = he.get(k, 0) / count
        p2 = hf.get(k, 0) / count
        pooled = 0.5 * (p1 + p2)
        if pooled == 0:
            continue
        sigma = math.sqrt(pooled * (1 - pooled) * 2 / count)
        assert abs(p1 - p2) <= 3 * sigma + 1e-12, f"bin {k}: {p1} vs {p2}"


def test_inline_hook_matches_public_hook():
    from hooklaw.partitions import cells, hook_length
    from hooklaw.sampling import _hook_of_cell

    for trial in range(20):
        p = sample_partition(SamplerConfig(n=60, seed=8), stream(8, trial))
        for c in cells(p):
            assert _hook_of_cell(p, c) == hook_length(p, c)


def test_cell_index_map():
    lam = Partition((2, 1))
    assert cell_from_index(lam, 1) == Cell(1, 1)
    assert cell_from_index(lam, 2) == Cell(1, 2)
    assert cell_from_index(lam, 3) == Cell(2, 1)
    with pytest.raises(ValueError):
        cell_from_index(lam, 4)


def test_sample_cell_single():
    rng = stream(0, 0)
    assert sample_cell(Partition((1,)), rng) == Cell(1, 1)
    with pytest.raises(ValueError):
        sample_cell(Partition(()), rng)


def test_sample_cell_uniform():
    lam = Partition((2, 1))
    rng = stream(SEED, 1)
    freq = Counter(sample_cell(lam, rng) for _ in range(30000))
    for c, count in freq.items():
        assert abs(count / 30000 - 1 / 3) <= 3 * math.sqrt((1 / 3) * (2 / 3) / 30000)


def test_hook_observations_match_exact_law():
    for n, count in ((2, 40000), (3, 60000)):
        obs = sample_hooks(SamplerConfig(n=n, seed=SEED), count)
        freq = Counter(o.hook for o in obs)
        dist = hook_distribution_via_part_counts(n)
        for k, w in dist.weights.items():
            p = w / dist.total
            sigma = math.sqrt(p * (1 - p) / count)
            assert abs(freq.get(k, 0) / count - p) <= 3.5 * sigma


def test_observation_fields():
    obs = sample_hooks(SamplerConfig(n=40, seed=1), 200)
    assert len(obs) == 200
    for o in obs:
        assert 1 <= o.hook <= 40
        assert o.scaled == pytest.approx(math.pi * o.hook / math.sqrt(240.0))


def test_determinism_same_seed():
    a = sample_hooks(SamplerConfig(n=200, seed=77), 300)
    b = sample_hooks(SamplerConfig(n=200, seed=77), 300)
    assert a == b
    c = sample_hooks(SamplerConfig(n=200, seed=78), 300)
    assert a != c


def test_thread_independence():
    a = sample_hooks(SamplerConfig(n=150, seed=5), 301, threads=1)
    b = sample_hooks(SamplerConfig(n=150, seed=5), 301, threads=2)
    assert a == b


def test_algorithms_share_the_stream_contract():
    # different algorithms may consume differently but each is reproducible
    cfg = SamplerConfig(n=12, algorithm=FRISTEDT_REJECTION, seed=3)
    p1 = sample_partition(cfg, stream(3, 9))
    p2 = sample_partition(cfg, stream(3, 9))
    assert p1 == p2


def test_fristedt_budget_error():
    sampler = _FristedtSampler(30, budget=64)
    with pytest.raises(ResourceError, match="budget"):
        # a budget of one batch nearly never hits n = 30 on the first 64
        for trial in range(50):
            sampler.draw(stream(1, trial))


def test_fristedt_conditioning():
    cfg = SamplerConfig(n=37, algorithm=FRISTEDT_REJECTION, seed=SEED)
    sampler = make_sampler(cfg)
    for trial in range(200):
        assert sampler.draw(stream(SEED, trial)).n == 37


def test_fristedt_large_n_conditioning():
    # the multiplicity cutoff sits well below n here; conditioning must
    # still hold exactly on accepted draws
    sampler = make_sampler(SamplerConfig(n=10000, algorithm=FRISTEDT_REJECTION, seed=SEED))
    assert sampler.jcut < 10000
    for trial in range(2):
        assert sampler.draw(stream(SEED, trial)).n == 10000
    assert sampler.trials > sampler.accepted  # rejection actually happened


def test_exact_sampler_rejects_short_table():
    with pytest.raises(ValueError, match="table too short"):
        make_sampler(SamplerConfig(n=50), ptable=partition_counts(10))
