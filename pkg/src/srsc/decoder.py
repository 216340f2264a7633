"""Sliding-window iterative bounded-distance decoding of received chains.

Within a window, sweeps run oldest block to newest; every row constraint
with a nonzero syndrome is decoded and corrections are written back to the
shared received blocks so both constraints of each bit see them.  Blocks
older than the window are frozen: a correction that would flip a frozen (or
known-zero virtual) bit is rejected and the row treated as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bch import bdd_decode, bdd_decode_genie
from .blocks import consumer_maps, source_maps
from .params import SrscParams

PLAIN = "plain"
MISCORRECTION_FREE = "mf"


@dataclass(frozen=True)
class DecoderConfig:
    window: int
    max_iters: int = 10
    mode: str = PLAIN

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.mode not in (PLAIN, MISCORRECTION_FREE):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class DecodeReport:
    blocks: list
    iterations: list
    fixed_point: list
    stalled: list
    residual_errors: list | None


class ChainDecoder:
    """Reusable decoding engine for one parameter set."""

    def __init__(self, params: SrscParams, codes):
        if params.w >= 3 and (params.m1 != params.m2 or params.q1 != params.q2):
            raise ValueError("w > 2 requires symmetric block parameters")
        self.p = params
        self.codes = codes
        # geometry depends on block-index parity only
        self.smaps = {0: source_maps(params, 2), 1: source_maps(params, 3)}
        self.cmaps = {0: consumer_maps(params, 2), 1: consumer_maps(params, 3)}

    def _code(self, i: int):
        return self.codes[1] if i % 2 else self.codes[0]

    def _gather(self, blocks: dict, i: int, r: int) -> np.ndarray:
        lag, sr, sc = self.smaps[i % 2]
        out = np.zeros(lag.shape[1], dtype=np.uint8)
        for l in np.unique(lag[r]):
            b = blocks.get(i - int(l))
            if b is None:
                continue
            mask = lag[r] == l
            out[mask] = b[sr[r, mask], sc[r, mask]]
        return out

    def _word(self, blocks: dict, i: int, r: int) -> np.ndarray:
        return np.concatenate([self._gather(blocks, i, r), blocks[i][r]])

    def iterate(self, blocks: dict, lo: int, hi: int, cfg: DecoderConfig,
                truth: dict | None = None):
        """Run BDD sweeps over blocks lo..hi in place.  Blocks below lo are
        frozen context.  Returns (sweeps_used, reached_fixed_point)."""
        if cfg.mode == MISCORRECTION_FREE and truth is None:
            raise ValueError("miscorrection-free mode requires the transmitted blocks")
        p = self.p
        dirty = {i: np.ones(p.rows(i), dtype=bool) for i in range(lo, hi + 1)}
        for sweep in range(1, cfg.max_iters + 1):
            changed = False
            for i in range(lo, hi + 1):
                todo = np.nonzero(dirty[i])[0]
                if todo.size == 0:
                    continue
                dirty[i][:] = False
                lag, sr, sc = self.smaps[i % 2]
                cw = lag.shape[1]
                code = self._code(i)
                for r in todo:
                    word = self._word(blocks, i, r)
                    if cfg.mode == MISCORRECTION_FREE:
                        res = bdd_decode_genie(code, word, self._word(truth, i, r))
                    else:
                        res = bdd_decode(code, word)
                    if not res.corrected or res.errors_corrected == 0:
                        continue
                    flips = np.nonzero(res.word != word)[0]
                    targets = []
                    ok = True
                    for j in flips:
                        if j < cw:
                            b = i - int(lag[r, j])
                            rr, cc = int(sr[r, j]), int(sc[r, j])
                        else:
                            b, rr, cc = i, int(r), int(j - cw)
                        if b < lo:  # frozen or virtual known-zero block
                            ok = False
                            break
                        targets.append((b, rr, cc))
                    if not ok:
                        continue
                    for b, rr, cc in targets:
                        blocks[b][rr, cc] ^= 1
                        # both constraints of this bit need a revisit
                        if lo <= b <= hi:
                            dirty[b][rr] = True
                        clag, crow = self.cmaps[b % 2]
                        b2 = b + int(clag[rr, cc])
                        if lo <= b2 <= hi:
                            dirty[b2][int(crow[rr, cc])] = True
                    changed = True
            if not changed:
                return sweep, True
        return cfg.max_iters, False


def decode_window(params: SrscParams, codes, cfg: DecoderConfig, y_blocks,
                  first_index: int = 1, context: dict | None = None,
                  truth_blocks=None) -> DecodeReport:
    """Decode one window of received blocks (y_blocks[0] has chain index
    first_index).  context maps older chain indices to frozen emitted
    blocks; indices below 1 are implicit zeros."""
    eng = ChainDecoder(params, codes)
    lo = first_index
    hi = first_index + len(y_blocks) - 1
    blocks = {} if context is None else dict(context)
    for k, y in enumerate(y_blocks):
        blocks[lo + k] = np.array(y, dtype=np.uint8, copy=True)
    truth = None
    if truth_blocks is not None:
        truth = dict(context) if context is not None else {}
        for k, b in enumerate(truth_blocks):
            truth[lo + k] = np.asarray(b, dtype=np.uint8)
    sweeps, fixed = eng.iterate(blocks, lo, hi, cfg, truth)
    out = [blocks[i] for i in range(lo, hi + 1)]
    residual = None
    stall = [False]
    if truth_blocks is not None:
        residual = [int(np.sum(out[k] != truth[lo + k])) for k in range(len(out))]
        stall = [fixed and sum(residual) > 0]
    return DecodeReport(out, [sweeps], [fixed], stall, residual)


def decode_stream(params: SrscParams, codes, cfg: DecoderConfig, y_blocks,
                  truth_blocks=None) -> DecodeReport:
    """Sliding-window decoding of a full chain (y_blocks[k] = block k+1).
    The window advances one block at a time; the oldest block becomes final
    when the window moves past it."""
    L = len(y_blocks)
    W = cfg.window
    if L < W:
        raise ValueError(f"chain length {L} < window {W}")
    eng = ChainDecoder(params, codes)
    blocks = {k + 1: np.array(y, dtype=np.uint8, copy=True)
              for k, y in enumerate(y_blocks)}
    truth = None
    if truth_blocks is not None:
        truth = {k + 1: np.asarray(b, dtype=np.uint8)
                 for k, b in enumerate(truth_blocks)}
    iters, fixed_flags, stalls = [], [], []
    for s in range(1, L - W + 2):
        hi = s + W - 1
        sweeps, fixed = eng.iterate(blocks, s, hi, cfg, truth)
        iters.append(sweeps)
        fixed_flags.append(fixed)
        if truth is not None:
            # stall = the block leaving the window still carries errors
            stalls.append(fixed and bool(np.any(blocks[s] != truth[s])))
        else:
            stalls.append(False)
    out = [blocks[i] for i in range(1, L + 1)]
    residual = None
    if truth is not None:
        residual = [int(np.sum(out[k] != truth[k + 1])) for k in range(L)]
    return DecodeReport(out, iters, fixed_flags, stalls, residual)
