import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybrid_ass.combining import (effective_channel, link_metrics, mmse_combiner, sinr,
                                  sum_rate, sum_rate_from_sinr)
from hybrid_ass.rf import apply_selection

from conftest import crandn


def _unit(rng, *shape):
    return np.exp(1j * rng.uniform(0, 2 * np.pi, shape))


def test_effective_channel_coherent_sum():
    assert effective_channel(np.ones((5, 1)), np.ones((5, 1)))[0, 0] == 5


def test_effective_channel_double_loop_oracle(rng):
    w, h = _unit(rng, 7, 3), crandn(rng, 7, 3)
    want = np.array([[sum(np.conj(w[n, a]) * h[n, b] for n in range(7)) for b in range(3)]
                     for a in range(3)])
    np.testing.assert_allclose(effective_channel(w, h), want, atol=1e-13)


def test_zeroed_row_equals_deleted_antenna(rng):
    w, h = _unit(rng, 6, 2), crandn(rng, 6, 2)
    s = np.ones((6, 2))
    s[3, 1] = 0
    he = effective_channel(apply_selection(w, s), h)
    keep = np.arange(6) != 3
    np.testing.assert_allclose(he[1], w[keep, 1].conj() @ h[keep], atol=1e-14)


def test_mmse_scalar():
    np.testing.assert_allclose(mmse_combiner(np.array([[1.0]]), 1.0), [[0.5]])


def test_mmse_explicit_inverse_oracle(rng):
    he = crandn(rng, 4, 4)
    p = 2.5
    want = he @ np.linalg.inv(np.eye(4) + p * he.conj().T @ he)
    got = mmse_combiner(he, p)
    assert np.linalg.norm(got - want) / np.linalg.norm(want) < 1e-10


def test_mmse_orthogonal_channel_is_diagonal():
    w_bb = mmse_combiner(np.eye(3), 1e6)
    assert np.allclose(w_bb - np.diag(np.diag(w_bb)), 0)


def test_sinr_scalar_scale_free():
    for scale in (1e-3, 1.0, 7.0):
        assert sinr(0, np.ones((1, 1)), np.array([[scale]]), np.ones((1, 1)), 1.0) == pytest.approx(1.0)


def test_sinr_interference_free():
    # orthogonal effective channel with gain g, identity digital combiner
    g, p = 2.0, 3.0
    w_rf = np.eye(3)
    h = g * np.eye(3)
    for k in range(3):
        assert sinr(k, w_rf, np.eye(3), h, p) == pytest.approx(p * g ** 2)


def test_sinr_brute_force_expansion(rng):
    w_rf, h = _unit(rng, 8, 2), crandn(rng, 8, 2)
    p = 4.0
    w_bb = mmse_combiner(effective_channel(w_rf, h), p)
    for k in range(2):
        v = sum(w_rf[:, c] * w_bb[c, k] for c in range(2))  # W_RF w_BB,k
        num = p * abs(np.vdot(v, h[:, k])) ** 2
        den = p * sum(abs(np.vdot(v, h[:, i])) ** 2 for i in range(2) if i != k)
        den += sum(abs(x) ** 2 for x in v)
        assert sinr(k, w_rf, w_bb, h, p) == pytest.approx(num / den, rel=1e-12)


def test_sum_rate_examples(rng):
    assert sum_rate_from_sinr([0, 0, 0]) == 0
    assert sum_rate(np.ones((1, 1)), np.ones((1, 1)), 1.0) == pytest.approx(1.0)
    w_rf, h = _unit(rng, 6, 2), crandn(rng, 6, 2)
    m = link_metrics(w_rf, h, 2.0)
    assert m.sum_rate == pytest.approx(np.log2(1 + m.sinr_per_user[0]) + np.log2(1 + m.sinr_per_user[1]),
                                       abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 31), scale=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_sinr_scale_invariance(seed, scale):
    rng = np.random.default_rng(seed)
    w_rf, h = _unit(rng, 8, 3), crandn(rng, 8, 3)
    w_bb = mmse_combiner(effective_channel(w_rf, h), 2.0)
    for k in range(3):
        a = sinr(k, w_rf, w_bb, h, 2.0)
        b = sinr(k, w_rf, w_bb * scale, h, 2.0)
        assert abs(a - b) <= 1e-10 * a


def test_sum_rate_nondecreasing_in_snr(rng):
    for _ in range(20):
        w_rf, h = _unit(rng, 8, 3), crandn(rng, 8, 3)
        rates = [sum_rate(w_rf, h, 10 ** (db / 10)) for db in range(-20, 31, 2)]
        assert np.all(np.diff(rates) >= -1e-12)


def test_interference_only_lowers_sinr(rng):
    w_rf, h = _unit(rng, 8, 3), crandn(rng, 8, 3)
    p = 5.0
    w_bb = mmse_combiner(effective_channel(w_rf, h), p)
    for k in range(3):
        v = w_rf @ w_bb[:, k]
        no_intf = p * abs(np.vdot(v, h[:, k])) ** 2 / np.vdot(v, v).real
        assert sinr(k, w_rf, w_bb, h, p) <= no_intf


def test_mmse_rejects_nonpositive_snr():
    with pytest.raises(ValueError):
        mmse_combiner(np.eye(2), 0.0)
