"""Bit-block containers, the sub-block rearrangement permutation, coupling
geometry (index maps between a block's bits and the component-code
constraints that protect them), and block serialization."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .params import SrscParams

MAGIC = b"SRSCBLK1"


@dataclass
class BitBlock:
    """Dense binary matrix (uint8 entries in {0,1})."""

    data: np.ndarray

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=np.uint8)
        if self.data.ndim != 2 or min(self.data.shape) < 1:
            raise ValueError("BitBlock requires a nonempty 2-D matrix")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def to_bytes(self) -> bytes:
        """16-byte header (magic, rows, cols) + row-major packed bits,
        little-endian within bytes."""
        head = MAGIC + struct.pack("<II", self.rows, self.cols)
        payload = np.packbits(self.data.reshape(-1), bitorder="little").tobytes()
        return head + payload

    @classmethod
    def from_bytes(cls, raw: bytes) -> "BitBlock":
        if len(raw) < 16 or raw[:8] != MAGIC:
            raise ValueError("bad block header")
        rows, cols = struct.unpack("<II", raw[8:16])
        nbits = rows * cols
        nbytes = (nbits + 7) // 8
        if len(raw) < 16 + nbytes:
            raise ValueError("truncated block payload")
        bits = np.unpackbits(
            np.frombuffer(raw[16 : 16 + nbytes], dtype=np.uint8),
            count=nbits,
            bitorder="little",
        )
        return cls(bits.reshape(rows, cols))


def rearrange(block: np.ndarray, q: int) -> np.ndarray:
    """Split a block into q horizontal sub-blocks, transpose each, and
    concatenate the transposes horizontally.

    An R x C input (q | C) maps to a (C/q) x (R*q) output; entry (r, c) of
    the input lands at (c mod C/q, (c // (C/q))*R + r).
    """
    block = np.asarray(block)
    rows, cols = block.shape
    if cols % q:
        raise ValueError(f"q={q} does not divide cols={cols}")
    cq = cols // q
    return np.hstack([block[:, s * cq : (s + 1) * cq].T for s in range(q)])


def rearrange_inverse(tblock: np.ndarray, q: int) -> np.ndarray:
    """Inverse of rearrange: recovers the R x C original from its
    (C/q) x (R*q) image."""
    tblock = np.asarray(tblock)
    cq, rq = tblock.shape
    if rq % q:
        raise ValueError(f"q={q} does not divide transformed width={rq}")
    rows = rq // q
    return np.hstack([tblock[:, s * rows : (s + 1) * rows].T for s in range(q)])


def coupled_block(params: SrscParams, i: int, prev: list) -> np.ndarray:
    """Assemble the coupling part of the message matrix for block i.

    prev[l-1] is block i-l (None for a virtual all-zero block).  Returns a
    rows(i) x (n(i) - m(i)) matrix: the rearranged preceding block for w=2,
    or the concatenation of one vertical slice per preceding block for w>2.
    """
    w = params.w
    if len(prev) != w - 1:
        raise ValueError(f"need {w - 1} preceding blocks, got {len(prev)}")
    rows_i = params.rows(i)
    if w == 2:
        b = prev[0]
        if b is None:
            return np.zeros((rows_i, params.n(i) - params.m(i)), dtype=np.uint8)
        return rearrange(b, params.q(i - 1))
    m, q = params.m1, params.q1
    sw = m // (w - 1)
    parts = []
    for l in range(1, w):
        b = prev[l - 1]
        if b is None:
            parts.append(np.zeros((m // q, sw), dtype=np.uint8))
        else:
            parts.append(rearrange(b, q)[:, (l - 1) * sw : l * sw])
    return np.hstack(parts)


def source_maps(params: SrscParams, i: int):
    """Index maps from the coupling part of constraint matrix D_i back to
    bits of preceding blocks.

    Returns (lag, src_row, src_col), each shaped rows(i) x (n(i) - m(i)):
    coupled entry (r, c) of D_i is bit (src_row[r,c], src_col[r,c]) of block
    i - lag[r,c].
    """
    rows_i = params.rows(i)
    cw = params.n(i) - params.m(i)
    lag = np.empty((rows_i, cw), dtype=np.int64)
    src_row = np.empty((rows_i, cw), dtype=np.int64)
    src_col = np.empty((rows_i, cw), dtype=np.int64)
    r = np.arange(rows_i)[:, None]
    c = np.arange(cw)[None, :]
    if params.w == 2:
        # coupled part = rearrange(block i-1, q(i-1)); invert that map
        rp = params.rows(i - 1)
        cq = params.cols(i - 1) // params.q(i - 1)
        lag[:] = 1
        src_row[:] = np.broadcast_to(c % rp, (rows_i, cw))
        src_col[:] = (c // rp) * cq + r
        return lag, src_row, src_col
    m, q, w = params.m1, params.q1, params.w
    rp = m // q
    sw = m // (w - 1)
    lag[:] = np.broadcast_to(1 + c // sw, (rows_i, cw))
    src_row[:] = np.broadcast_to(c % rp, (rows_i, cw))
    src_col[:] = (c // rp) * rp + r
    return lag, src_row, src_col


def consumer_maps(params: SrscParams, b: int):
    """For each bit (r, c) of block b, the later constraint that also
    protects it: constraint row dst_row[r,c] of block b + lag[r,c].

    Every bit is protected by exactly two component constraints: row r of
    block b itself, and the one returned here.
    """
    rows_b, cols_b = params.block_shape(b)
    cq = cols_b // params.q(b)
    r = np.arange(rows_b)[:, None]
    c = np.arange(cols_b)[None, :]
    dst_row = np.broadcast_to(c % cq, (rows_b, cols_b)).copy()
    if params.w == 2:
        lag = np.ones((rows_b, cols_b), dtype=np.int64)
        return lag, dst_row
    # position inside the transformed block, then its coupling slice
    tcol = (c // cq) * rows_b + r
    sw = params.m1 // (params.w - 1)
    lag = 1 + tcol // sw
    return lag, dst_row
