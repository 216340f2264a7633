"""Shortened binary primitive BCH codes: systematic encoding and bounded
distance decoding (syndromes, Berlekamp-Massey, Chien search).

Bit conventions: a length-n word w is stored as a uint8 vector with w[0] the
highest-degree coefficient.  A shortened code operates internally on the full
length N = 2^nu - 1 with e leading (known-zero) positions; the public API only
sees length-n words.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .gf import FieldTables, build_field

CORRECTED = "corrected"
FAILURE = "failure"


@dataclass(frozen=True)
class DecodeOutcome:
    kind: str  # CORRECTED or FAILURE
    word: np.ndarray
    errors_corrected: int

    @property
    def corrected(self) -> bool:
        return self.kind == CORRECTED


def _minimal_poly(ft: FieldTables, exp: int) -> list[int]:
    """Minimal polynomial of alpha^exp over GF(2), as a GF(2) coefficient
    list [c_deg, ..., c_0]."""
    order = ft.order
    # conjugacy class of exponents
    conj = set()
    e = exp % order
    while e not in conj:
        conj.add(e)
        e = (2 * e) % order
    # product of (x - alpha^e') with coefficients in GF(2^nu)
    poly = [1]  # highest degree first
    for e in sorted(conj):
        root = int(ft.antilog[e])
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] ^= c  # times x
            nxt[i + 1] ^= ft.mul(c, root)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise AssertionError("minimal polynomial has non-binary coefficient")
    return poly


def _poly_mul_gf2(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] ^= cb
    return out


@dataclass(frozen=True)
class BchCode:
    """One shortened binary primitive BCH code.

    n = 2^nu - 1 - e, k = n - nu*t.  Construction rejects (nu, t, n) for
    which the generator degree differs from nu*t, since the rate and
    structure bookkeeping of the chain code depends on n - k = nu*t.
    """

    nu: int
    t: int
    e: int
    n: int
    k: int
    generator_poly: np.ndarray = field(repr=False)  # uint8, highest degree first
    field_tables: FieldTables = field(repr=False)

    @property
    def full_length(self) -> int:
        return (1 << self.nu) - 1


def build_bch(nu: int, t: int, n: int) -> BchCode:
    """Construct a shortened BCH code of length n with design correction
    capability t over GF(2^nu)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    ft = build_field(nu)
    full = ft.order
    if n > full:
        raise ValueError(f"n={n} exceeds full length {full} for nu={nu}")
    e = full - n
    # generator = LCM of minimal polynomials of alpha, alpha^3, ..., alpha^(2t-1)
    seen: set[frozenset] = set()
    gen = [1]
    for i in range(1, 2 * t, 2):
        conj = set()
        x = i % ft.order
        while x not in conj:
            conj.add(x)
            x = (2 * x) % ft.order
        key = frozenset(conj)
        if key in seen:
            continue
        seen.add(key)
        gen = _poly_mul_gf2(gen, _minimal_poly(ft, i))
    deg = len(gen) - 1
    if deg != nu * t:
        raise ValueError(
            f"generator degree {deg} != nu*t = {nu * t} for (nu={nu}, t={t}); "
            "this parameterization is rejected"
        )
    k = n - deg
    if k < 1:
        raise ValueError(f"message length k={k} < 1 for (nu={nu}, t={t}, n={n})")
    return BchCode(
        nu=nu,
        t=t,
        e=e,
        n=n,
        k=k,
        generator_poly=np.array(gen, dtype=np.uint8),
        field_tables=ft,
    )


@njit(cache=True)
def _lfsr_parity(msg, gen, parity):
    """parity <- remainder of x^(n-k) * m(x) mod g(x), both bit vectors with
    the highest-degree coefficient first."""
    r = len(gen) - 1
    reg = np.zeros(r, dtype=np.uint8)
    for j in range(len(msg)):
        fb = reg[0] ^ msg[j]
        for i in range(r - 1):
            reg[i] = reg[i + 1] ^ (fb & gen[i + 1])
        reg[r - 1] = fb & gen[r]
    for i in range(r):
        parity[i] = reg[i]


def encode_systematic(code: BchCode, msg: np.ndarray) -> np.ndarray:
    """Systematic encoding: returns [msg, parity] of length n."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (code.k,):
        raise ValueError(f"message length {msg.shape} != k={code.k}")
    out = np.empty(code.n, dtype=np.uint8)
    out[: code.k] = msg
    _lfsr_parity(msg, code.generator_poly, out[code.k :])
    return out


def encode_rows(code: BchCode, msgs: np.ndarray) -> np.ndarray:
    """Row-wise systematic encoding of a (rows, k) message matrix."""
    msgs = np.asarray(msgs, dtype=np.uint8)
    if msgs.ndim != 2 or msgs.shape[1] != code.k:
        raise ValueError(f"expected (rows, {code.k}) message matrix")
    out = np.empty((msgs.shape[0], code.n), dtype=np.uint8)
    out[:, : code.k] = msgs
    for r in range(msgs.shape[0]):
        _lfsr_parity(msgs[r], code.generator_poly, out[r, code.k :])
    return out


@njit(cache=True)
def _bdd_kernel(word, n, full, e, t, logt, antilogt):
    """In-place bounded distance decode of a shortened word.

    Bit j of `word` is the coefficient of x^(full-1-e-j); error locations
    (powers of alpha) in [n, full) fall in the shortened prefix and
    invalidate the locator.

    Returns the number of corrected errors, or -1 on decoding failure
    (word left unchanged).
    """
    order = full
    # syndromes S_1..S_2t
    synd = np.zeros(2 * t, dtype=np.int64)
    for j in range(n):
        if word[j]:
            pos = n - 1 - j  # exponent of the error location
            lp = logt[antilogt[pos % order]]  # == pos mod order
            for i in range(2 * t):
                s = synd[i]
                # add alpha^(pos*(i+1))
                a = antilogt[(lp * (i + 1)) % order]
                synd[i] = s ^ a
    allzero = True
    for i in range(2 * t):
        if synd[i] != 0:
            allzero = False
            break
    if allzero:
        return 0

    # Berlekamp-Massey over GF(2^nu)
    sigma = np.zeros(2 * t + 1, dtype=np.int64)
    prev = np.zeros(2 * t + 1, dtype=np.int64)
    tmp = np.zeros(2 * t + 1, dtype=np.int64)
    sigma[0] = 1
    prev[0] = 1
    L = 0
    mshift = 1
    b = 1
    for r in range(2 * t):
        # discrepancy
        d = synd[r]
        for i in range(1, L + 1):
            if sigma[i] != 0 and synd[r - i] != 0:
                d ^= antilogt[(logt[sigma[i]] + logt[synd[r - i]]) % order]
        if d == 0:
            mshift += 1
        else:
            coef_log = (logt[d] - logt[b]) % order
            if 2 * L <= r:
                for i in range(2 * t + 1):
                    tmp[i] = sigma[i]
                for i in range(2 * t + 1 - mshift):
                    if prev[i] != 0:
                        sigma[i + mshift] ^= antilogt[(coef_log + logt[prev[i]]) % order]
                L = r + 1 - L
                for i in range(2 * t + 1):
                    prev[i] = tmp[i]
                b = d
                mshift = 1
            else:
                for i in range(2 * t + 1 - mshift):
                    if prev[i] != 0:
                        sigma[i + mshift] ^= antilogt[(coef_log + logt[prev[i]]) % order]
                mshift += 1
    if L > t:
        return -1
    # degree check: sigma[L] must be nonzero
    deg = 0
    for i in range(2 * t + 1):
        if sigma[i] != 0:
            deg = i
    if deg != L:
        return -1

    # Chien search over the full field; roots alpha^(-pos) locate errors at
    # exponent pos.  Roots mapping into the shortened prefix are invalid.
    nroots = 0
    locs = np.empty(t, dtype=np.int64)
    for pos in range(order):
        # evaluate sigma at alpha^(-pos)
        acc = sigma[0]
        for i in range(1, L + 1):
            if sigma[i] != 0:
                acc ^= antilogt[(logt[sigma[i]] + (order - pos) * i) % order]
        if acc == 0:
            if pos >= n:
                return -1  # error in shortened position
            if nroots >= L:
                return -1
            locs[nroots] = pos
            nroots += 1
    if nroots != L:
        return -1
    for i in range(nroots):
        j = n - 1 - locs[i]
        word[j] ^= 1
    return L


def bdd_decode(code: BchCode, word: np.ndarray) -> DecodeOutcome:
    """Bounded distance decoding.  Corrects up to t errors; declares failure
    when no valid degree-<=t error locator with a full root set exists.
    Miscorrection beyond distance t is physical behavior and is permitted."""
    word = np.asarray(word, dtype=np.uint8)
    if word.shape != (code.n,):
        raise ValueError(f"word length {word.shape} != n={code.n}")
    out = word.copy()
    nerr = _bdd_kernel(
        out,
        code.n,
        code.full_length,
        code.e,
        code.t,
        code.field_tables.log,
        code.field_tables.antilog,
    )
    if nerr < 0:
        return DecodeOutcome(FAILURE, word.copy(), 0)
    return DecodeOutcome(CORRECTED, out, int(nerr))


def bdd_decode_genie(code: BchCode, word: np.ndarray, truth: np.ndarray) -> DecodeOutcome:
    """Miscorrection-free BDD: returns the plain BDD result only when it
    equals the transmitted codeword, otherwise a failure with the word
    unchanged."""
    truth = np.asarray(truth, dtype=np.uint8)
    if truth.shape != (code.n,):
        raise ValueError(f"truth length {truth.shape} != n={code.n}")
    res = bdd_decode(code, word)
    if res.corrected and not np.array_equal(res.word, truth):
        return DecodeOutcome(FAILURE, np.asarray(word, dtype=np.uint8).copy(), 0)
    return res


def syndromes_zero(code: BchCode, word: np.ndarray) -> bool:
    """True iff all 2t syndromes of the word vanish (word is a codeword)."""
    word = np.asarray(word, dtype=np.uint8)
    ft = code.field_tables
    order = ft.order
    for i in range(1, 2 * code.t + 1):
        s = 0
        for j in np.nonzero(word)[0]:
            pos = code.n - 1 - int(j)
            s ^= int(ft.antilog[(pos * i) % order])
        if s != 0:
            return False
    return True
