from __future__ import annotations

import random

import pytest

from seev.metrics import ami, ari, nmi

from . import oracles


IDENTICAL = (["a", "a", "b", "b", "c"], [1, 1, 2, 2, 3])
SIX_ITEM_TRUE = [0, 0, 0, 1, 1, 2]
SIX_ITEM_PRED = [0, 0, 1, 1, 2, 2]


def test_ari_identical_partitions():
    assert ari(*IDENTICAL) == 1.0


def test_ari_one_cluster_vs_singletons_is_zero():
    truth = list(range(6))
    pred = [0] * 6
    assert ari(truth, pred) == pytest.approx(0.0, abs=1e-15)


def test_ari_crossed_pairs_matches_pair_counting():
    truth = [0, 0, 1, 1]  # {a,b}{c,d}
    pred = [0, 1, 0, 1]  # {a,c}{b,d}
    assert ari(truth, pred) == pytest.approx(
        oracles.pair_count_ari(truth, pred), abs=1e-12
    )


def test_ari_random_matches_pair_counting():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 24)
        a = [rng.randrange(4) for _ in range(n)]
        b = [rng.randrange(4) for _ in range(n)]
        assert ari(a, b) == pytest.approx(oracles.pair_count_ari(a, b), abs=1e-12)


def test_ari_rejects_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        ari([0, 1], [0, 1, 2])


def test_ami_identical_partitions():
    assert ami(*IDENTICAL) == 1.0


def test_ami_single_cluster_both_sides():
    assert ami([7, 7, 7], ["x", "x", "x"]) == 1.0


def test_ami_six_item_matches_direct_formula():
    assert ami(SIX_ITEM_TRUE, SIX_ITEM_PRED) == pytest.approx(
        oracles.direct_ami(SIX_ITEM_TRUE, SIX_ITEM_PRED), abs=1e-12
    )


def test_ami_random_matches_direct_formula():
    rng = random.Random(8)
    for _ in range(10):
        n = rng.randint(3, 14)
        a = [rng.randrange(3) for _ in range(n)]
        b = [rng.randrange(3) for _ in range(n)]
        assert ami(a, b) == pytest.approx(oracles.direct_ami(a, b), abs=1e-10)


def test_ami_near_zero_on_independent_labelings():
    rng = random.Random(123)
    n = 600
    a = [rng.randrange(2) for _ in range(n)]
    b = [rng.randrange(2) for _ in range(n)]
    assert abs(ami(a, b)) < 0.05


def test_nmi_identical_partitions():
    assert nmi(*IDENTICAL) == 1.0


def test_nmi_six_item_matches_direct_formula():
    assert nmi(SIX_ITEM_TRUE, SIX_ITEM_PRED) == pytest.approx(
        oracles.direct_nmi(SIX_ITEM_TRUE, SIX_ITEM_PRED), abs=1e-12
    )


def test_nmi_independent_coin_labelings():
    rng = random.Random(99)
    n = 1000
    a = [rng.randrange(2) for _ in range(n)]
    b = [rng.randrange(2) for _ in range(n)]
    assert nmi(a, b) <= 0.05


def test_label_permutation_invariance():
    rng = random.Random(4)
    a = [rng.randrange(3) for _ in range(30)]
    b = [rng.randrange(3) for _ in range(30)]
    remap = {0: "z", 1: "y", 2: "x"}
    a2 = [remap[x] for x in a]
    for fn in (ari, ami, nmi):
        assert fn(a, b) == pytest.approx(fn(a2, b), abs=1e-12)


def test_metric_symmetry():
    rng = random.Random(6)
    a = [rng.randrange(4) for _ in range(25)]
    b = [rng.randrange(3) for _ in range(25)]
    for fn in (ari, ami, nmi):
        assert fn(a, b) == pytest.approx(fn(b, a), abs=1e-12)
