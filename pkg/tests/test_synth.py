from __future__ import annotations

import numpy as np
import pytest

from seev.synth import SynthSpec, generate_corpus, planted_block_graph


def test_generate_corpus_shapes():
    spec = SynthSpec(events=3, messages_per_event=5, dim=8, seed=1)
    records, truth = generate_corpus(spec)
    assert len(records) == 15
    assert sorted(len(c) for c in truth) == [5, 5, 5]
    ids = [r.message_id for r in records]
    assert len(set(ids)) == 15
    assert sorted(m for c in truth for m in c) == sorted(ids)


def test_generate_corpus_deterministic():
    spec = SynthSpec(events=4, messages_per_event=6, seed=9)
    a_records, a_truth = generate_corpus(spec)
    b_records, b_truth = generate_corpus(spec)
    assert a_truth == b_truth
    for ra, rb in zip(a_records, b_records):
        assert ra.message_id == rb.message_id
        assert ra.attributes == rb.attributes
        assert np.array_equal(ra.embedding, rb.embedding)


def test_generate_corpus_zero_noise_exact_centroids():
    spec = SynthSpec(events=2, messages_per_event=3, noise_scale=0.0, seed=2)
    records, truth = generate_corpus(spec)
    by_id = {r.message_id: r for r in records}
    for cluster in truth:
        base = by_id[cluster[0]].embedding
        assert all(np.allclose(by_id[m].embedding, base) for m in cluster)


def test_generate_corpus_attribute_model():
    spec = SynthSpec(
        events=2, messages_per_event=50, attr_coverage=1.0, leak_prob=0.0, seed=3
    )
    records, truth = generate_corpus(spec)
    label = {m: e for e, c in enumerate(truth) for m in c}
    for r in records:
        assert r.attributes == frozenset({f"tag:event{label[r.message_id]}"})


def test_generate_corpus_unequal_sizes():
    spec = SynthSpec(
        events=3, messages_per_event=1, seed=4, event_sizes=(2, 5, 7)
    )
    records, truth = generate_corpus(spec)
    assert len(records) == 14
    assert sorted(len(c) for c in truth) == [2, 5, 7]


def test_synth_spec_validation():
    with pytest.raises(ValueError):
        SynthSpec(events=0, messages_per_event=5)
    with pytest.raises(ValueError):
        SynthSpec(events=2, messages_per_event=5, leak_prob=1.5)
    with pytest.raises(ValueError):
        SynthSpec(events=2, messages_per_event=5, event_sizes=(1,))


def test_planted_block_graph_labels():
    g, labels = planted_block_graph(40, 4, 0.9, 0.0, seed=5)
    assert g.node_count == 40
    assert len(set(labels)) == 4
    for u, v, _ in g.edges():
        assert labels[u] == labels[v]  # p_inter = 0 keeps blocks disconnected


def test_planted_block_graph_deterministic():
    a, _ = planted_block_graph(30, 3, 0.5, 0.1, seed=8)
    b, _ = planted_block_graph(30, 3, 0.5, 0.1, seed=8)
    assert sorted(a.edges()) == sorted(b.edges())
