"""Recursive chain encoding: each new block row-encodes the rearranged
preceding blocks together with fresh information bits."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bch import BchCode, build_bch, encode_rows
from .blocks import coupled_block
from .params import SrscParams, validate


def build_codes(params: SrscParams) -> tuple[BchCode, BchCode]:
    """Construct the two component codes implied by the parameter set."""
    c1 = build_bch(params.nu1, params.t1, params.n1)
    c2 = build_bch(params.nu2, params.t2, params.n2)
    return c1, c2


@dataclass
class ChainState:
    """Mutable encoder state: the last w-1 code blocks and the next index."""

    params: SrscParams
    codes: tuple[BchCode, BchCode]
    i: int = 1
    history: list = field(default_factory=list)  # [B_{i-w+1}, ..., B_{i-1}]

    def __post_init__(self):
        if not self.history:
            self.history = [None] * (self.params.w - 1)


def new_chain(params: SrscParams, codes: tuple[BchCode, BchCode] | None = None) -> ChainState:
    bad = validate(params)
    if bad:
        raise ValueError("invalid parameters: " + "; ".join(bad))
    if codes is None:
        codes = build_codes(params)
    return ChainState(params=params, codes=codes)


def encode_next(state: ChainState, info: np.ndarray) -> np.ndarray:
    """Encode block i from the chain state and an information matrix of
    shape rows(i) x fresh_width(i); returns the transmitted block [K_i, P_i]
    and advances the state."""
    p = state.params
    i = state.i
    code = state.codes[1] if i % 2 else state.codes[0]
    rows_i, cols_i = p.block_shape(i)
    info = np.asarray(info, dtype=np.uint8)
    want = (rows_i, p.fresh_width(i))
    if info.shape != want:
        raise ValueError(f"info shape {info.shape} != {want} for block {i}")
    prev = [state.history[-l] for l in range(1, p.w)]  # prev[l-1] = B_{i-l}
    coupled = coupled_block(p, i, prev)
    msgs = np.hstack([coupled, info])
    cw = encode_rows(code, msgs)
    block = np.ascontiguousarray(cw[:, -cols_i:])
    state.history = state.history[1:] + [block]
    state.i += 1
    return block


def encode_chain(params: SrscParams, L: int, info_source, codes=None) -> list[np.ndarray]:
    """Encode L blocks from the all-zero initial state.

    info_source(i, rows, width) must return the information matrix for block
    i; pass zero_info or random_info(rng) for the common cases.
    """
    state = new_chain(params, codes)
    out = []
    for i in range(1, L + 1):
        info = info_source(i, params.rows(i), params.fresh_width(i))
        out.append(encode_next(state, info))
    return out


def zero_info(i, rows, width):
    return np.zeros((rows, width), dtype=np.uint8)


def random_info(rng: np.random.Generator):
    def src(i, rows, width):
        return rng.integers(0, 2, size=(rows, width), dtype=np.uint8)

    return src
