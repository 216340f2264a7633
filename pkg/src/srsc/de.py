"""Density evolution for the coupled chain: Poisson-tail recursion,
threshold searches (effective channel quality, BSC crossover, Eb/N0), the
windowed variant, and the block-size feasibility search for designing a
chain that beats a given staircase benchmark."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

import numpy as np
from numba import njit

from .params import SrscParams, rate

_NORM = NormalDist()


@dataclass(frozen=True)
class DeConfig:
    L: int = 1000
    max_iters: int = 2_000_000
    eps_num: float = 1e-10
    stall_tol: float = 1e-13
    margin: int = 0  # 0 -> auto: max(16, 6*w)
    window_eps: float = 1e-6

    def wave_margin(self, w: int) -> int:
        return self.margin if self.margin > 0 else max(16, 6 * w)


@dataclass(frozen=True)
class ThresholdResult:
    M_bar: float
    p_bar: float
    ebn0_db: float
    tol: float


@njit(cache=True)
def _ptail(lam, t, start):
    """1 - sum_{i=start}^{t-1} lam^i e^-lam / i! (complementary Poisson
    CDF when start=0)."""
    if lam <= 0.0:
        return 0.0 if start == 0 else 1.0
    term = math.exp(-lam)
    s = term if start == 0 else 0.0
    for i in range(1, t):
        term *= lam / i
        s += term
    out = 1.0 - s
    if out < 0.0:
        out = 0.0
    return out


def poisson_tail(lam: float, t: int, start: int = 0) -> float:
    """Probability that a Poisson(lam) count reaches t or more, counting
    the series from index `start`.

    The recursion uses start=0 (the standard complementary CDF): with
    start=1 the update of a fully erroneous chain would be stuck at 1 and
    no positive threshold would exist, contradicting the reference
    threshold table this module reproduces.
    """
    if lam < 0:
        raise ValueError("lam must be >= 0")
    if t < 1:
        raise ValueError("t must be >= 1")
    return _ptail(lam, t, start)


@njit(cache=True)
def _de_kernel(M1, M2, t1, t2, w, L, lmax, eps, stall_tol, margin, x):
    """Gauss-Seidel chain recursion in place.

    x has length L + 2w with w boundary zeros on each side.  Sweeps ascend,
    so position i sees current-iteration left neighbors and
    previous-iteration right neighbors.  Returns 1 when decoding converges
    (all x <= eps, or the collapse wave has advanced `margin` positions,
    which implies eventual convergence), 0 otherwise.

    After the interior ("bulk") of the chain has settled to its fixed point,
    sweeps are restricted to a window around the boundary collapse wave:
    positions left of it are already below eps and only shrink, positions
    right of it sit at the settled bulk value until the wave arrives.  This
    does not change any fixed point, it only skips no-op updates.
    """
    denom = 2.0 * (w - 1)
    act = margin + 4 * w + 32  # active-window reach beyond the wave edge
    lo = 0
    hi = L
    edge = 0
    for ell in range(lmax):
        maxdelta = 0.0
        for idx in range(lo, hi):
            i = w + idx
            if (idx + 1) % 2 == 1:
                M = M2
                t = t2
            else:
                M = M1
                t = t1
            s = 0.0
            for j in range(1, w):
                s += x[i - j] + x[i + j]
            lam = M * s / denom
            nx = _ptail(lam, t, 0)
            d = x[i] - nx
            if d > maxdelta:
                maxdelta = d
            x[i] = nx
        # the profile is pointwise non-increasing across sweeps (monotone
        # update map started from all-ones), so the edge only moves right
        while edge < L and x[w + edge] <= eps:
            edge += 1
        if edge == L or edge >= margin:
            return 1
        if maxdelta < stall_tol:
            return 0
        if ell >= 200 and hi == L:
            # bulk settled (its per-sweep change decays geometrically in the
            # full sweeps); start tracking the wave
            hi = min(L, edge + act)
        if hi < L:
            lo = max(0, edge - 2 * w)
            hi = min(L, edge + act)
    return 0


@njit(cache=True)
def _de_window_kernel(M1, M2, t1, t2, w, L, W, lmax, stall_tol, x):
    """Windowed variant: iterate the recursion inside each window position
    to a fixed point, then slide by one; values outside the window keep
    their previous-iteration values."""
    denom = 2.0 * (w - 1)
    for i0 in range(L - W + 1):
        for ell in range(lmax):
            maxdelta = 0.0
            for idx in range(i0, i0 + W):
                i = w + idx
                if (idx + 1) % 2 == 1:
                    M = M2
                    t = t2
                else:
                    M = M1
                    t = t1
                s = 0.0
                for j in range(1, w):
                    s += x[i - j] + x[i + j]
                lam = M * s / denom
                nx = _ptail(lam, t, 0)
                d = x[i] - nx
                if d > maxdelta:
                    maxdelta = d
                x[i] = nx
            if maxdelta < stall_tol:
                break


def _init_chain(L: int, w: int) -> np.ndarray:
    x = np.zeros(L + 2 * w)
    x[w : w + L] = 1.0
    return x


def de_run(M1: float, M2: float, t1: int, t2: int, w: int,
           config: DeConfig | None = None):
    """Run the chain recursion; returns (converged, final x over [1, L])."""
    if w < 2:
        raise ValueError("w must be >= 2")
    if w > 2 and M1 != M2:
        raise ValueError("w > 2 requires M1 = M2")
    cfg = config or DeConfig()
    x = _init_chain(cfg.L, w)
    ok = _de_kernel(M1, M2, t1, t2, w, cfg.L, cfg.max_iters, cfg.eps_num,
                    cfg.stall_tol, cfg.wave_margin(w), x)
    return bool(ok), x[w : w + cfg.L].copy()


def de_run_windowed(M: float, t1: int, t2: int, w: int, W: int,
                    config: DeConfig | None = None):
    """Windowed recursion over all window positions; success means every
    position ends below the windowed-mode target."""
    cfg = config or DeConfig()
    if not (w < W < cfg.L):
        raise ValueError(f"need w < W < L (w={w}, W={W}, L={cfg.L})")
    x = _init_chain(cfg.L, w)
    _de_window_kernel(M, M, t1, t2, w, cfg.L, W, min(cfg.max_iters, 20000),
                      cfg.stall_tol, x)
    xs = x[w : w + cfg.L].copy()
    return bool(np.max(xs) <= cfg.window_eps), xs


def threshold_M(t1: int, t2: int, w: int, config: DeConfig | None = None,
                tol: float = 5e-5) -> float:
    """Largest effective channel quality M for which the recursion still
    converges, by bisection on [0, t1 + t2]."""
    cfg = config or DeConfig()
    lo, hi = 0.0, float(t1 + t2)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ok, _ = de_run(mid, mid, t1, t2, w, cfg)
        if ok:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def qfunc_inv(p: float) -> float:
    """Inverse Gaussian tail: x with Q(x) = p."""
    if not 0 < p < 0.5:
        raise ValueError("p must be in (0, 1/2)")
    return _NORM.inv_cdf(1.0 - p)


def qfunc(x: float) -> float:
    return 1.0 - _NORM.cdf(x)


def ebn0_db_from_p(p: float, R: float) -> float:
    """Eb/N0 (dB) of the hard-decision BPSK AWGN channel whose crossover
    probability is p at rate R: p = Q(sqrt(2 R Eb/N0))."""
    return 10.0 * math.log10(qfunc_inv(p) ** 2 / (2.0 * R))


def p_from_ebn0_db(ebn0_db: float, R: float) -> float:
    return qfunc(math.sqrt(2.0 * R * 10.0 ** (ebn0_db / 10.0)))


def threshold_p(params: SrscParams, config: DeConfig | None = None,
                tol: float = 5e-5) -> ThresholdResult:
    """BSC threshold of a parameterized chain, plus the equivalent Eb/N0.

    With equal component lengths the threshold is M_bar / n; otherwise the
    crossover probability is bisected directly with per-parity M = p * n.
    """
    cfg = config or DeConfig()
    R = float(rate(params))
    if params.n1 == params.n2:
        mbar = threshold_M(params.t1, params.t2, params.w, cfg, tol)
        pbar = mbar / params.n1
        return ThresholdResult(mbar, pbar, ebn0_db_from_p(pbar, R), tol)
    lo, hi = 0.0, 0.5
    ptol = tol / params.n1
    while hi - lo > ptol:
        mid = 0.5 * (lo + hi)
        ok, _ = de_run(mid * params.n1, mid * params.n2,
                       params.t1, params.t2, params.w, cfg)
        if ok:
            lo = mid
        else:
            hi = mid
    pbar = 0.5 * (lo + hi)
    return ThresholdResult(pbar * params.n1, pbar, ebn0_db_from_p(pbar, R), tol)


@dataclass(frozen=True)
class DesignQuery:
    """Benchmark staircase code (m_ref, nu_ref, t_ref) vs candidate chain
    (nu, t, q, w); delta relaxes the rate requirement to R >= R_ref - delta."""

    m_ref: int
    nu_ref: int
    t_ref: int
    nu: int
    t: int
    q: int
    w: int
    delta: float = 0.0
    M_ref: float | None = None
    M_cand: float | None = None


@dataclass(frozen=True)
class DesignResult:
    feasible: bool
    beta: int
    a: int
    b: float
    m_lo: int
    m_recommended: int | None
    M_ref: float
    M_cand: float


def theorem1_search(query: DesignQuery, config: DeConfig | None = None,
                    tol: float = 5e-5) -> DesignResult:
    """Feasible block sizes m (multiples of beta = LCM(w-1, q) in
    [beta*a, b)) for which the candidate chain simultaneously achieves the
    benchmark's rate (minus delta), a strictly larger BSC threshold, and no
    larger block size; the smallest feasible m maximizes the threshold."""
    if query.t <= query.t_ref:
        raise ValueError("candidate must have t > t_ref")
    if query.nu < query.nu_ref:
        raise ValueError("candidate must have nu >= nu_ref")
    if query.delta < 0:
        raise ValueError("delta must be >= 0")
    cfg = config or DeConfig()
    m_ref = query.M_ref
    if m_ref is None:
        m_ref = threshold_M(query.t_ref, query.t_ref, 2, cfg, tol)
    m_cand = query.M_cand
    if m_cand is None:
        m_cand = threshold_M(query.t, query.t, query.w, cfg, tol)
    beta = math.lcm(query.w - 1, query.q)
    a = math.ceil(
        Fraction(query.t * query.nu * query.m_ref)
        / ((query.t_ref * query.nu_ref + Fraction(query.delta) * query.m_ref) * beta)
    )
    b = min(
        math.sqrt(query.q) * query.m_ref,
        (m_cand / m_ref) * query.m_ref,
        ((1 << query.nu) - 1) / 2,
    )
    feasible = beta * a < b
    return DesignResult(
        feasible=feasible,
        beta=beta,
        a=a,
        b=b,
        m_lo=beta * a,
        m_recommended=beta * a if feasible else None,
        M_ref=m_ref,
        M_cand=m_cand,
    )
