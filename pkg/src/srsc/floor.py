"""Error-floor combinatorics: minimum stall-pattern sizes, multiplicities by
weighted enumeration of error-number assignment matrices, tightness of the
wide-coupling lower bound, the union-bound BER floor, and an exhaustive
stall-pattern oracle for tiny instances.

All counting uses exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .blocks import consumer_maps
from .params import SrscParams

TIGHT = "tight-lower-bound"
STRICTLY_LARGER = "strictly-larger"
UNKNOWN = "unknown"


def s_min_w2(t1: int, t2: int, q1: int, q2: int) -> int:
    """Exact weight of the minimum stall pattern for coupling width 2: the
    smaller of the two block parities' requirements."""
    if min(t1, t2, q1, q2) < 1:
        raise ValueError("t1, t2, q1, q2 must all be >= 1")
    odd = max(
        math.ceil((t2 + 1) / q1) * (t1 + 1),
        math.ceil((t1 + 1) / q1) * (t2 + 1),
    )
    even = max(
        math.ceil((t1 + 1) / q2) * (t2 + 1),
        math.ceil((t2 + 1) / q2) * (t1 + 1),
    )
    return min(odd, even)


def s_min_lb_wide(t1: int, t2: int) -> int:
    """Lower bound on the minimum stall-pattern weight for w >= q+1."""
    mn = min(t1, t2)
    return (mn + 1) * (mn + 2) // 2


def tightness(t1: int, t2: int, q: int, w: int) -> str:
    """Whether the wide-coupling lower bound is achieved (w >= q+1 regime):
    it is, exactly when w >= (1{t1 != t2}+1)(min+1)+1 and q >= min+1."""
    if w < q + 1:
        raise ValueError(f"w={w} < q+1={q + 1}: outside the analyzed regime")
    mn = min(t1, t2)
    ind = 1 if t1 != t2 else 0
    if w >= (ind + 1) * (mn + 1) + 1 and q >= mn + 1:
        return TIGHT
    return STRICTLY_LARGER


def enumerate_assignments(t1: int, t2: int, q1: int, q2: int,
                          s_min: int, j: int) -> int:
    """Weighted count of integer assignment matrices distributing a minimum
    stall pattern's errors over its sub-arrays, with the first j sub-array
    columns in the transformed block (entry budget q1) and the rest in the
    next block (budget q2).

    Each matrix contributes the product over entries of C(budget, entry);
    entries obey per-column ranges, column sums >= t2+1, row sums >= t1+1,
    and total = s_min.
    """
    rows = math.ceil((t1 + 1) / q1)
    ncols = math.ceil(s_min / (t1 + 1))
    if not 0 <= j <= ncols:
        raise ValueError(f"j={j} outside [0, {ncols}]")
    lo, hi = [], []
    for c in range(ncols):
        qq = q1 if c < j else q2
        lo.append(t1 + 1 - (math.ceil((t1 + 1) / qq) - 1) * qq)
        hi.append(qq)
    total = 0
    colsum = [0] * ncols

    def fill_row(r, rowsums_done_weight, row_entries_acc):
        nonlocal total
        # enumerate one row at a time
        for entries in itertools.product(*[range(lo[c], hi[c] + 1) for c in range(ncols)]):
            if sum(entries) < t1 + 1:
                continue
            weight = 1
            for c, v in enumerate(entries):
                colsum[c] += v
                weight *= math.comb(hi[c], v)
            if r + 1 < rows:
                fill_row(r + 1, rowsums_done_weight * weight, None)
            else:
                if sum(colsum) == s_min and all(
                    colsum[c] >= t2 + 1 for c in range(ncols)
                ):
                    total += rowsums_done_weight * weight
            for c, v in enumerate(entries):
                colsum[c] -= v
        return

    fill_row(0, 1, None)
    return total


def a_min_w2(params: SrscParams) -> int:
    """Multiplicity of minimum stall patterns for coupling width 2."""
    if params.w != 2:
        raise ValueError("a_min_w2 applies to w = 2")
    m1, q1, t1 = params.m1, params.q1, params.t1
    m2, q2, t2 = params.m2, params.q2, params.t2
    if q2 > q1:
        m1, q1, t1, m2, q2, t2 = m2, q2, t2, m1, q1, t1
    s = s_min_w2(t1, t2, q1, q2)
    nrows = math.ceil((t1 + 1) / q1)
    ncols = math.ceil(s / (t1 + 1))
    a_row = math.comb(m1 // q1, nrows)
    total = math.comb(m2 // q2, ncols) * enumerate_assignments(t1, t2, q1, q2, s, ncols)
    if q2 * nrows > t1:  # strict indicator: q2 > t1 / ceil((t1+1)/q1)
        for j in range(1, ncols):
            total += (
                math.comb(m2 // q2, j)
                * math.comb(m2 // q2, ncols - j)
                * enumerate_assignments(t1, t2, q1, q2, s, j)
            )
    return a_row * total


def a_min_wide(t1: int, t2: int, q: int, w: int, m: int) -> int:
    """Multiplicity of minimum stall patterns in the wide-coupling tight
    regime: one error row placed in the starting block determines the rest
    of the pattern up to row/column choices."""
    mn = min(t1, t2)
    ind = 1 if t1 != t2 else 0
    if m % (w - 1) or m % q:
        raise ValueError("m must be divisible by w-1 and q")
    return (
        math.comb((w - 1) // (ind + 1), mn + 1)
        * (m // (w - 1))
        * (m // q) ** (mn + 1)
    )


def a_min_wide_bound(t1: int, t2: int, q: int, w: int, m: int) -> Fraction:
    """Closed-form lower bound on the wide-coupling multiplicity,
    m^(min+2) / ((w-1) q^(min+1)); used as the multiplicity in upper-bound
    floor estimates outside the tight regime."""
    mn = min(t1, t2)
    return Fraction(m ** (mn + 2), (w - 1) * q ** (mn + 1))


@dataclass(frozen=True)
class FloorEstimate:
    s_min: int
    a_min: object  # int, or Fraction for the bound form
    block_bits: int
    exact: bool  # False -> the floor is an upper bound, not an estimate

    def ber(self, p: float) -> float:
        if not 0 <= p < 0.5:
            raise ValueError("p must be in [0, 1/2)")
        return self.s_min * float(self.a_min) * p ** self.s_min / self.block_bits


def floor_estimate(params: SrscParams) -> FloorEstimate:
    """Union-bound error-floor ingredients for a parameter set."""
    if params.w == 2:
        s = s_min_w2(params.t1, params.t2, params.q1, params.q2)
        a = a_min_w2(params)
        return FloorEstimate(
            s, a, params.m1 * params.m2 // min(params.q1, params.q2), True
        )
    if params.m1 != params.m2 or params.q1 != params.q2:
        raise ValueError("w > 2 requires symmetric block parameters")
    t1, t2, q, w, m = params.t1, params.t2, params.q1, params.w, params.m1
    s = s_min_lb_wide(t1, t2)
    flag = tightness(t1, t2, q, w)
    if flag == TIGHT:
        return FloorEstimate(s, a_min_wide(t1, t2, q, w, m), m * m // q, True)
    return FloorEstimate(s, a_min_wide_bound(t1, t2, q, w, m), m * m // q, False)


def ber_floor(params: SrscParams, p: float) -> float:
    return floor_estimate(params).ber(p)


def brute_force_stall_oracle(params: SrscParams, s_max: int,
                             designated_index: int | None = None):
    """Exhaustively find the smallest error pattern that is a fixed point of
    miscorrection-free iterative decoding, anchored at one code block.

    Error bits live in blocks i .. i+w (i the designated block, chosen even
    by default, the parity hosting the minimum pattern when q1 >= q2);
    patterns must touch block i and none before it.  A pattern stalls
    exactly when every component constraint it touches sees more than t
    errors.  Returns (weight, count) of the minimal stall, or (None, 0) if
    none exists with weight <= s_max.
    """
    w = params.w
    i0 = designated_index
    if i0 is None:
        i0 = 2 * w if params.q1 >= params.q2 else 2 * w + 1
    # constraints as (block, row); edges between the two constraints of a bit
    edges: dict[tuple, list] = {}
    for b in range(i0, i0 + w + 1):
        rows_b, cols_b = params.block_shape(b)
        lag, dst = consumer_maps(params, b)
        for r in range(rows_b):
            for c in range(cols_b):
                key = ((b, r), (b + int(lag[r, c]), int(dst[r, c])))
                rec = edges.setdefault(key, [0, b == i0])
                rec[0] += 1
    nodes = sorted({n for key in edges for n in key})
    node_ix = {n: k for k, n in enumerate(nodes)}
    tneed = [params.t(b) + 1 for b, _ in nodes]
    inc: list[list] = [[] for _ in nodes]  # per node: (edge id, other node)
    elist = []
    for key, (mu, desig) in sorted(edges.items()):
        eid = len(elist)
        a, bnode = node_ix[key[0]], node_ix[key[1]]
        elist.append((a, bnode, mu, desig))
        inc[a].append(eid)
        inc[bnode].append(eid)

    tmin = min(params.t1, params.t2) + 1
    max_nodes = (2 * s_max) // tmin
    counts = [0] * (s_max + 1)

    for size in range(2, max_nodes + 1):
        for subset in itertools.combinations(range(len(nodes)), size):
            sset = set(subset)
            sub_edges = []
            seen = set()
            for v in subset:
                for eid in inc[v]:
                    a, bnode, mu, desig = elist[eid]
                    if eid in seen or a not in sset or bnode not in sset:
                        continue
                    seen.add(eid)
                    sub_edges.append((a, bnode, mu, desig))
            # quick feasibility: every node must be able to reach t+1 errors
            cap = {v: 0 for v in subset}
            for a, bnode, mu, _ in sub_edges:
                cap[a] += mu
                cap[bnode] += mu
            if any(cap[v] < tneed[v] for v in subset):
                continue
            deg = {v: 0 for v in subset}

            def dfs(k, tot, weight, has_desig):
                if tot > s_max:
                    return
                if k == len(sub_edges):
                    if has_desig and all(deg[v] >= tneed[v] for v in subset):
                        counts[tot] += weight
                    return
                a, bnode, mu, desig = sub_edges[k]
                # prune: remaining capacity must cover all deficits
                rem_cap = {v: 0 for v in subset}
                for a2, b2, mu2, _ in sub_edges[k:]:
                    rem_cap[a2] += mu2
                    rem_cap[b2] += mu2
                if any(deg[v] + rem_cap[v] < tneed[v] for v in subset):
                    return
                for ke in range(0, mu + 1):
                    deg[a] += ke
                    deg[bnode] += ke
                    dfs(k + 1, tot + ke, weight * math.comb(mu, ke),
                        has_desig or (desig and ke > 0))
                    deg[a] -= ke
                    deg[bnode] -= ke

            dfs(0, 0, 1, False)

    for s in range(1, s_max + 1):
        if counts[s]:
            return s, counts[s]
    return None, 0
