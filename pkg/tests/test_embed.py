import math

import pytest

from radolab.embed import DeadEnd, EmbedConfig, embed_target, required_type, score_candidate, verify_embedding
from radolab.graphs import complete, cycle, empty_graph, path, petersen
from radolab.oracle import EdgeOracle
from radolab.sets import VertexSet


def test_required_type_first_step_is_empty():
    t = required_type(complete(3), (), 1)
    assert t.base == () and t.mask == 0


def test_required_type_complete_and_empty_targets():
    assert required_type(complete(3), (10, 20), 3).bits == "11"
    assert required_type(empty_graph(3), (10, 20), 3).bits == "00"
    assert required_type(path(3), (5, 9), 3).bits == "01"


def test_required_type_index_mismatch():
    with pytest.raises(ValueError):
        required_type(complete(3), (10,), 3)


def test_score_first_step_balanced_classes():
    o = EdgeOracle(13)
    host = VertexSet.interval(1, 1024)
    score = score_candidate(o, host, (), 5)
    # pool of 1023 splits into two classes around 511.5
    sigma = math.sqrt(1023 * 0.25)
    assert abs(score - 511.5) <= 4 * sigma
    assert score <= 1023 // 2


def test_score_pigeonhole_bound():
    o = EdgeOracle(3)
    host = VertexSet.interval(1, 64)
    placed = (1, 2, 3)
    for m in (10, 20, 30):
        n = len(placed) + 1
        pool = len(host) - len(placed) - 1
        assert 0 <= score_candidate(o, host, placed, m) <= pool // 2**n


def test_score_zero_when_classes_outnumber_pool():
    o = EdgeOracle(3)
    host = VertexSet.interval(1, 10)
    assert score_candidate(o, host, (1, 2, 3, 4), 5) == 0


def test_single_vertex_choice_matches_independent_scoring():
    o = EdgeOracle(21)
    host = VertexSet.interval(1, 128)
    emb = embed_target(o, empty_graph(1), host)
    scores = [(score_candidate(o, host, (), m), -m) for m in host.elements[:64]]
    best = max(scores)
    assert emb.images == (-best[1],)
    assert emb.steps[0].score == best[0]


def test_k4_fixture_and_reverification():
    o = EdgeOracle(7)
    emb = embed_target(o, complete(4), VertexSet.interval(1, 4096))
    assert emb.images == (35, 63, 89, 7)
    for i in range(4):
        for j in range(i + 1, 4):
            assert o.edge(emb.images[i], emb.images[j])


def test_determinism():
    o = EdgeOracle(5)
    host = VertexSet.interval(1, 512)
    a = embed_target(o, cycle(5), host)
    b = embed_target(o, cycle(5), host)
    assert a.images == b.images
    assert [s.to_json() for s in a.steps] == [s.to_json() for s in b.steps]


def test_k5_succeeds_on_twenty_seeds():
    host = VertexSet.interval(1, 4096)
    for seed in range(1, 21):
        emb = embed_target(EdgeOracle(seed), complete(5), host)
        assert emb.verified and len(emb.images) == 5


def test_petersen_verified():
    o = EdgeOracle(2)
    emb = embed_target(o, petersen(), VertexSet.interval(1, 4096))
    p = petersen()
    for i in range(10):
        for j in range(i + 1, 10):
            assert o.edge(emb.images[i], emb.images[j]) == p.has_edge(i, j)


def test_monotone_host_weak_property():
    o = EdgeOracle(11)
    emb = embed_target(o, cycle(4), VertexSet.interval(1, 256))
    # the same images remain a valid embedding inside any larger host
    verify_embedding(o, cycle(4), emb.images)


def test_dead_end_reports_step_and_type():
    o = EdgeOracle(1)
    # [1, 10, 3042] is part of a verified edgeless union for this seed
    host = VertexSet.from_iterable([1, 10, 3042])
    with pytest.raises(DeadEnd) as exc:
        embed_target(o, complete(3), host)
    assert exc.value.step == 2
    assert exc.value.required.bits == "1"
    assert exc.value.pool_remaining == 2


def test_backtracking_rescues_known_case():
    # fail-fast dead-ends here; one-step retry succeeds (found by scan)
    o = EdgeOracle(3)
    host = VertexSet.interval(1, 8)
    with pytest.raises(DeadEnd):
        embed_target(o, cycle(4), host, EmbedConfig(fail_fast=True))
    emb = embed_target(o, cycle(4), host, EmbedConfig(fail_fast=False))
    assert emb.images == (3, 2, 6, 8)
    c4 = cycle(4)
    for i in range(4):
        for j in range(i + 1, 4):
            assert o.edge(emb.images[i], emb.images[j]) == c4.has_edge(i, j)


def test_backtracking_is_passthrough_when_no_dead_end():
    o = EdgeOracle(5)
    host = VertexSet.interval(1, 512)
    a = embed_target(o, complete(4), host, EmbedConfig(fail_fast=True))
    b = embed_target(o, complete(4), host, EmbedConfig(fail_fast=False))
    assert a.images == b.images


def test_empty_target():
    emb = embed_target(EdgeOracle(1), empty_graph(0), VertexSet.interval(1, 10))
    assert emb.images == () and emb.verified


def test_empty_host_rejected():
    with pytest.raises(ValueError):
        embed_target(EdgeOracle(1), complete(2), VertexSet.empty())


def test_config_validation():
    with pytest.raises(ValueError):
        EmbedConfig(candidate_cap=0)
    with pytest.raises(ValueError):
        EmbedConfig(score_horizon=0)


def test_score_horizon_limits_pool():
    o = EdgeOracle(9)
    host = VertexSet.interval(1, 256)
    full = score_candidate(o, host, (), 7)
    small = score_candidate(o, host, (), 7, score_horizon=16)
    assert small <= 16 // 2
    assert full > small


def test_step_records_expose_config_trace():
    emb = embed_target(EdgeOracle(4), path(3), VertexSet.interval(1, 256))
    assert [s.index for s in emb.steps] == [1, 2, 3]
    assert emb.steps[1].required_type in ("0", "1")
    js = emb.to_json()
    assert js["verified"] and len(js["steps"]) == 3
