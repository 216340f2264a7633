"""Monte Carlo BER/FER measurement over BSC and hard-decision AWGN.

Noise is generated with a counter-based RNG (Philox) keyed by
(seed, trial, block), so every bit flip is a pure function of the
configuration and results do not depend on scheduling or worker count.

Miscorrection-free runs default to the all-zero-codeword shortcut (valid by
linearity and channel symmetry), which enables a fast error-peeling engine:
a genie-aided row decode succeeds exactly when the row constraint sees
between 1 and t errors, so decoding reduces to iteratively clearing such
constraints.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit
from numpy.random import Generator, Philox

from .blocks import source_maps
from .decoder import MISCORRECTION_FREE, DecoderConfig, decode_stream
from .de import p_from_ebn0_db
from .encoder import build_codes, encode_chain, random_info
from .params import SrscParams, validate

BSC = "bsc"
AWGN_HARD = "awgn-hard"


@dataclass(frozen=True)
class ChannelModel:
    kind: str
    p: float
    param: float  # the user-facing knob: p for BSC, Eb/N0 dB for AWGN

    @classmethod
    def bsc(cls, p: float) -> "ChannelModel":
        if not 0 < p < 0.5:
            raise ValueError("p must be in (0, 1/2)")
        return cls(BSC, p, p)

    @classmethod
    def awgn_hard(cls, ebn0_db: float, R: float) -> "ChannelModel":
        p = p_from_ebn0_db(ebn0_db, R)
        if not 0 < p < 0.5:
            raise ValueError("Eb/N0 outside the usable range")
        return cls(AWGN_HARD, p, ebn0_db)


@dataclass(frozen=True)
class SimConfig:
    seed: int
    decoder: DecoderConfig
    min_errors: int = 100
    max_bits: int = 10**9
    chain_len: int = 20
    batch_trials: int = 16
    workers: int = 1
    all_zero: bool | None = None  # None -> True exactly in mf mode

    def use_all_zero(self) -> bool:
        if self.all_zero is None:
            return self.decoder.mode == MISCORRECTION_FREE
        return self.all_zero


@dataclass
class SimResult:
    bits: int = 0
    errors: int = 0
    blocks: int = 0
    block_errors: int = 0
    stalls: int = 0
    seconds: float = 0.0
    complete: bool = True

    @property
    def ber(self) -> float:
        return self.errors / self.bits if self.bits else 0.0

    @property
    def fer(self) -> float:
        return self.block_errors / self.blocks if self.blocks else 0.0


def noise_rng(seed: int, trial: int, block_index: int) -> Generator:
    return Generator(Philox(key=seed, counter=[0, 0, trial, block_index]))


def apply_channel(model: ChannelModel, block: np.ndarray, seed: int,
                  trial: int, block_index: int) -> np.ndarray:
    """Flip each bit independently with the model's crossover probability."""
    rng = noise_rng(seed, trial, block_index)
    flips = (rng.random(block.shape) < model.p).astype(np.uint8)
    return np.bitwise_xor(np.asarray(block, dtype=np.uint8), flips)


@njit(cache=True)
def _peel_chain(E, lag, sr, sc, t_even, t_odd, W, max_iters, w, L_meas):
    """Sliding-window genie peeling on the error array of one chain.

    E[(w-1) + i - 1] holds the error bits of chain block i (1-based); the
    leading w-1 slabs are the known-zero virtual blocks.  A constraint row
    is cleared when it holds 1..t errors, none of them in an emitted
    (pre-window) block.  Errors are counted over blocks 1..L_meas only; the
    chain should extend past that so measured blocks are not hit by the
    unterminated tail (the last blocks have no successor constraints).
    Returns (bit_errors, block_errors, stalls).
    """
    nb = E.shape[0]
    rows = E.shape[1]
    cols = E.shape[2]
    cw = lag.shape[1]
    L = nb - (w - 1)
    stalls = 0
    for s in range(1, L - W + 2):
        hi = min(s + W - 1, L)
        frozen = s + w - 2  # E slabs below this hold emitted/virtual bits
        changed = False
        for it in range(max_iters):
            changed = False
            for i in range(s, hi + 1):
                eb = i + w - 2
                t = t_odd if i % 2 == 1 else t_even
                for r in range(rows):
                    cnt = 0
                    blocked = False
                    for c in range(cw):
                        if E[eb - lag[r, c], sr[r, c], sc[r, c]]:
                            cnt += 1
                            if eb - lag[r, c] < frozen:
                                blocked = True
                    for c in range(cols):
                        cnt += E[eb, r, c]
                    if cnt == 0 or cnt > t or blocked:
                        continue
                    for c in range(cw):
                        E[eb - lag[r, c], sr[r, c], sc[r, c]] = 0
                    for c in range(cols):
                        E[eb, r, c] = 0
                    changed = True
            if not changed:
                break
        if s <= L_meas:
            # stall = the block leaving the window still carries errors
            resid = 0
            eb = s + w - 2
            for r in range(rows):
                for c in range(cols):
                    resid += E[eb, r, c]
            if resid > 0:
                stalls += 1
    bit_errors = 0
    block_errors = 0
    for i in range(1, L_meas + 1):
        eb = i + w - 2
        cntb = 0
        for r in range(rows):
            for c in range(cols):
                cntb += E[eb, r, c]
        bit_errors += cntb
        if cntb > 0:
            block_errors += 1
    return bit_errors, block_errors, stalls


def _peeling_supported(params: SrscParams, cfg: SimConfig) -> bool:
    return (cfg.use_all_zero()
            and cfg.decoder.mode == MISCORRECTION_FREE
            and params.m1 == params.m2
            and params.q1 == params.q2)


def _run_batch_peel(params: SrscParams, p: float, cfg: SimConfig,
                    trial_lo: int, ntrials: int):
    w = params.w
    L_meas = cfg.chain_len
    L = L_meas + cfg.decoder.window  # tail pad: keep end effects out of the count
    rows, cols = params.block_shape(1)
    lag, sr, sc = source_maps(params, 3)  # parity-independent when symmetric
    res = SimResult()
    for trial in range(trial_lo, trial_lo + ntrials):
        E = np.zeros((L + w - 1, rows, cols), dtype=np.uint8)
        for i in range(1, L + 1):
            rng = noise_rng(cfg.seed, trial, i)
            E[i + w - 2] = rng.random((rows, cols)) < p
        be, blke, st = _peel_chain(E, lag, sr, sc, params.t1, params.t2,
                                   cfg.decoder.window, cfg.decoder.max_iters, w,
                                   L_meas)
        res.bits += L_meas * rows * cols
        res.errors += int(be)
        res.blocks += L_meas
        res.block_errors += int(blke)
        res.stalls += int(st)
    return res


def _run_batch_full(params: SrscParams, p: float, cfg: SimConfig,
                    trial_lo: int, ntrials: int):
    codes = build_codes(params)
    L_meas = cfg.chain_len
    L = L_meas + cfg.decoder.window  # tail pad, as in the peeling path
    res = SimResult()
    for trial in range(trial_lo, trial_lo + ntrials):
        if cfg.use_all_zero():
            truth = [np.zeros(params.block_shape(i + 1), dtype=np.uint8)
                     for i in range(L)]
        else:
            data_rng = Generator(Philox(key=cfg.seed ^ 0x5EED, counter=[0, 0, trial, 0]))
            truth = encode_chain(params, L, random_info(data_rng), codes)
        ys = []
        for i in range(1, L + 1):
            rng = noise_rng(cfg.seed, trial, i)
            flips = (rng.random(truth[i - 1].shape) < p).astype(np.uint8)
            ys.append(truth[i - 1] ^ flips)
        rep = decode_stream(params, codes, cfg.decoder, ys, truth_blocks=truth)
        res.bits += sum(truth[i].size for i in range(L_meas))
        res.errors += sum(rep.residual_errors[:L_meas])
        res.blocks += L_meas
        res.block_errors += sum(1 for e in rep.residual_errors[:L_meas] if e)
        res.stalls += sum(1 for s in rep.stalled if s)
    return res


def run_sim(params: SrscParams, channel: ChannelModel, cfg: SimConfig) -> SimResult:
    """Simulate chains until the stop rule fires: at least min_errors bit
    errors, or max_bits transmitted.  Trials are consumed in fixed-size
    batches in index order, so the result is independent of worker count."""
    bad = validate(params)
    if bad:
        raise ValueError("invalid parameters: " + "; ".join(bad))
    if cfg.chain_len < cfg.decoder.window:
        raise ValueError("chain_len must be >= decoder window")
    runner = _run_batch_peel if _peeling_supported(params, cfg) else _run_batch_full
    t0 = time.perf_counter()
    total = SimResult()

    def absorb(part: SimResult):
        total.bits += part.bits
        total.errors += part.errors
        total.blocks += part.blocks
        total.block_errors += part.block_errors
        total.stalls += part.stalls

    def done() -> bool:
        return total.errors >= cfg.min_errors or total.bits >= cfg.max_bits

    batch = 0
    if cfg.workers <= 1:
        while not done():
            absorb(runner(params, channel.p, cfg, batch * cfg.batch_trials,
                          cfg.batch_trials))
            batch += 1
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            pending = []
            next_batch = 0
            while True:
                while len(pending) < cfg.workers:
                    pending.append(pool.submit(
                        runner, params, channel.p, cfg,
                        next_batch * cfg.batch_trials, cfg.batch_trials))
                    next_batch += 1
                absorb(pending.pop(0).result())  # strict batch order
                if done():
                    break
    total.seconds = time.perf_counter() - t0
    total.complete = total.errors >= cfg.min_errors
    return total


def sweep(params: SrscParams, channels, cfg: SimConfig):
    """One SimResult per channel point, as CSV-ready row dicts."""
    rows = []
    for ch in channels:
        res = run_sim(params, ch, cfg)
        rows.append(result_row(params, ch, cfg, res))
    return rows


CSV_HEADER = ("label,m1,m2,q1,q2,w,t1,t2,nu1,nu2,W,iters,mode,channel,"
              "param,p,ber,fer,bits,errors,stalls,seconds")


def result_row(params: SrscParams, channel: ChannelModel, cfg: SimConfig,
               res: SimResult, label: str = "srsc") -> dict:
    return {
        "label": label,
        "m1": params.m1, "m2": params.m2, "q1": params.q1, "q2": params.q2,
        "w": params.w, "t1": params.t1, "t2": params.t2,
        "nu1": params.nu1, "nu2": params.nu2,
        "W": cfg.decoder.window, "iters": cfg.decoder.max_iters,
        "mode": cfg.decoder.mode, "channel": channel.kind,
        "param": channel.param, "p": channel.p,
        "ber": res.ber, "fer": res.fer, "bits": res.bits,
        "errors": res.errors, "stalls": res.stalls,
        "seconds": round(res.seconds, 3),
    }
