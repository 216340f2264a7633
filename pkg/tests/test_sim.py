import numpy as np
import pytest

from srsc.decoder import DecoderConfig
from srsc.params import SrscParams
from srsc.sim import (
    CSV_HEADER,
    ChannelModel,
    SimConfig,
    apply_channel,
    noise_rng,
    result_row,
    run_sim,
    sweep,
)

SYM = SrscParams(m1=24, m2=24, q1=2, q2=2, w=2, nu1=6, nu2=6, t1=2, t2=2)
ASYM = SrscParams(m1=12, m2=12, q1=2, q2=3, w=2, nu1=5, nu2=5, t1=2, t2=2)


def _cfg(mode="mf", **kw):
    base = dict(seed=7, decoder=DecoderConfig(window=7, mode=mode),
                min_errors=20, max_bits=3 * 10**6, chain_len=10)
    base.update(kw)
    return SimConfig(**base)


def test_channel_validation():
    with pytest.raises(ValueError):
        ChannelModel.bsc(0.6)
    with pytest.raises(ValueError):
        ChannelModel.bsc(0.0)
    ch = ChannelModel.awgn_hard(5.0, 0.9)
    assert 0 < ch.p < 0.5 and ch.param == 5.0


def test_apply_channel_deterministic():
    blk = np.zeros((16, 16), dtype=np.uint8)
    a = apply_channel(ChannelModel.bsc(0.1), blk, seed=1, trial=3, block_index=4)
    b = apply_channel(ChannelModel.bsc(0.1), blk, seed=1, trial=3, block_index=4)
    c = apply_channel(ChannelModel.bsc(0.1), blk, seed=1, trial=3, block_index=5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_noise_rng_counter_independence():
    # streams for different (trial, block) pairs are distinct
    x = noise_rng(9, 0, 1).random(8)
    y = noise_rng(9, 1, 1).random(8)
    z = noise_rng(9, 0, 2).random(8)
    assert not np.allclose(x, y) and not np.allclose(x, z)


def test_run_sim_reproducible_and_worker_independent():
    ch = ChannelModel.bsc(0.02)
    r1 = run_sim(SYM, ch, _cfg())
    r2 = run_sim(SYM, ch, _cfg())
    r3 = run_sim(SYM, ch, _cfg(workers=3))
    assert (r1.bits, r1.errors, r1.block_errors, r1.stalls) == \
           (r2.bits, r2.errors, r2.block_errors, r2.stalls)
    assert (r1.bits, r1.errors, r1.block_errors, r1.stalls) == \
           (r3.bits, r3.errors, r3.block_errors, r3.stalls)


def test_peeling_and_full_paths_agree():
    # symmetric + mf + all-zero runs the fast engine; forcing the generic
    # path must give identical counts
    ch = ChannelModel.bsc(0.02)
    fast = run_sim(SYM, ch, _cfg())
    slow = run_sim(SYM, ch, _cfg(all_zero=True, batch_trials=16))
    # route the slow path by breaking the peeling precondition indirectly:
    # decode the same noise with the generic engine via asymmetric q is a
    # different code, so instead compare against _run_batch_full directly
    from srsc.sim import _run_batch_full, _run_batch_peel

    a = _run_batch_peel(SYM, ch.p, _cfg(), 0, 8)
    b = _run_batch_full(SYM, ch.p, _cfg(), 0, 8)
    assert (a.bits, a.errors, a.block_errors) == (b.bits, b.errors, b.block_errors)
    assert fast.errors == slow.errors


def test_plain_mode_random_data_runs():
    ch = ChannelModel.bsc(0.01)
    cfg = SimConfig(seed=2, decoder=DecoderConfig(window=7, mode="plain"),
                    min_errors=1, max_bits=10**5, chain_len=8, batch_trials=2)
    res = run_sim(ASYM, ch, cfg)
    assert res.bits > 0
    assert 0 <= res.ber < 0.5


def test_stop_rule_bit_budget():
    ch = ChannelModel.bsc(0.002)
    cfg = _cfg(min_errors=10**9, max_bits=2 * 10**5)
    res = run_sim(SYM, ch, cfg)
    assert res.bits >= 2 * 10**5
    assert not res.complete


def test_chain_shorter_than_window_rejected():
    with pytest.raises(ValueError):
        run_sim(SYM, ChannelModel.bsc(0.01), _cfg(chain_len=3))


def test_result_row_schema():
    ch = ChannelModel.bsc(0.02)
    cfg = _cfg()
    res = run_sim(SYM, ch, cfg)
    row = result_row(SYM, ch, cfg, res)
    assert list(row) == CSV_HEADER.split(",")


def test_sweep_rows():
    cfg = _cfg(min_errors=5, max_bits=5 * 10**5)
    rows = sweep(SYM, [ChannelModel.bsc(0.015), ChannelModel.bsc(0.02)], cfg)
    assert len(rows) == 2
    assert rows[0]["p"] == 0.015
