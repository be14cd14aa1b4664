"""Smoke tests for the python bindings."""

import math

import pytest

import ctwdi


def test_version():
    assert ctwdi.__version__


def test_oracle_values():
    assert ctwdi.binary_entropy(0.5) == 1.0
    assert ctwdi.binary_entropy(0.2) == pytest.approx(0.721928, abs=1e-5)
    assert ctwdi.markov_bsc_rate(0.3, 0.2) == pytest.approx(0.236114, abs=1e-5)
    di, rev, mi = ctwdi.coupled_bsc_rates(0.1, 0.2)
    assert di == pytest.approx(0.357750, abs=1e-5)
    assert rev == pytest.approx(0.104818, abs=1e-5)
    assert mi == pytest.approx(di + rev, abs=1e-12)


def test_exact_oracles_match_closed_forms():
    di, rev, mi = ctwdi.exact_markov_bsc(0.3, 0.2, n=10)
    assert di == pytest.approx(ctwdi.markov_bsc_rate(0.3, 0.2), abs=0.02)
    assert mi == pytest.approx(di + rev, abs=1e-9)


def test_quantize_returns():
    seq = ctwdi.quantize_returns([100.0, 101.0, 100.5], threshold=0.008)
    assert seq.symbols == [2, 1]
    assert seq.alphabet_size == 3


def test_pair_roundtrip():
    x = ctwdi.SymbolSequence(2, [0, 1, 1, 0])
    y = ctwdi.SymbolSequence(3, [2, 0, 1, 2])
    z = ctwdi.pair_symbols(x, y)
    assert z.alphabet_size == 6
    rx, ry = ctwdi.unpair_symbols(z, 2, 3)
    assert rx.symbols == x.symbols
    assert ry.symbols == y.symbols


def test_context_tree_basics():
    tree = ctwdi.ContextTree(alphabet_size=2, depth=2)
    p = tree.predict([0, 0])
    assert p.weights == pytest.approx([0.5, 0.5])
    tree.update(1, [0, 0])
    assert tree.symbols_seen == 1
    assert tree.assignment_log2_prob() == pytest.approx(-1.0)
    assert "-" in tree.dump()


def test_estimation_on_coupled_system():
    pair = ctwdi.coupled_bsc_system(0.1, 0.2, 30000, seed=1)
    method = ctwdi.EstimatorMethod.entropy
    di = ctwdi.estimate_di(pair, method, depth=3).final_bits
    rev = ctwdi.reverse_di(pair, method, depth=3).final_bits
    truth_di, truth_rev, _ = ctwdi.coupled_bsc_rates(0.1, 0.2)
    assert di == pytest.approx(truth_di, abs=0.06)
    assert rev == pytest.approx(truth_rev, abs=0.06)

    report = ctwdi.measure_causality(pair, method, depth=3)
    assert report.verdict == ctwdi.CausalVerdict.x_causes_y
    assert report.mi == pytest.approx(report.di + report.reverse, abs=1e-12)


def test_estimation_is_deterministic():
    pair = ctwdi.iid_pair(0.5, False, 5000, seed=9)
    a = ctwdi.estimate_di(pair, ctwdi.EstimatorMethod.logloss, depth=3)
    b = ctwdi.estimate_di(pair, ctwdi.EstimatorMethod.logloss, depth=3)
    assert a.partials == b.partials


def test_delay_scan():
    x = ctwdi.gen_markov_binary(0.3, 30000, seed=2)
    y = ctwdi.isi_delay_channel(x, delay=2, eps=0.1, seed=2)
    pair = ctwdi.CausalPair(x, y)
    scan = ctwdi.delay_scan(pair, d_max=4, method=ctwdi.EstimatorMethod.entropy,
                            depth=4, threshold=0.02)
    assert scan.detected == 2
    assert scan.estimates[0][1] < 0.02
    assert scan.estimates[2][1] > 0.1


def test_make_pair_helper():
    pair = ctwdi.make_pair([0, 1, 0, 1], [1, 1, 0, 0])
    assert len(pair) == 4
    assert pair.x.alphabet_size == 2


def test_error_propagation():
    with pytest.raises(ValueError):
        ctwdi.binary_entropy(1.5)
    with pytest.raises(ValueError):
        ctwdi.SymbolSequence(2, [0, 3])
