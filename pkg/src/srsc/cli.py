"""Command-line front end.  All results go to stdout as CSV or a single
numeric line; logs go to stderr (verbosity via the SRSC_LOG env var)."""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import de, floor, sim
from .blocks import BitBlock
from .decoder import DecoderConfig, decode_stream
from .encoder import build_codes, encode_chain, random_info, zero_info
from .params import SrscParams, rate, validate

log = logging.getLogger("srsc")


def _add_param_flags(p: argparse.ArgumentParser, need_nu: bool = True):
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--q1", type=int, required=True)
    p.add_argument("--q2", type=int, required=True)
    p.add_argument("--w", type=int, default=2)
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--t2", type=int, required=True)
    if need_nu:
        p.add_argument("--nu1", type=int, required=True)
        p.add_argument("--nu2", type=int, required=True)
    p.add_argument("--L", type=int, default=0)


def _params(args, nu_default: int = 6) -> SrscParams:
    return SrscParams(
        m1=args.m1, m2=args.m2, q1=args.q1, q2=args.q2, w=args.w,
        nu1=getattr(args, "nu1", nu_default), nu2=getattr(args, "nu2", nu_default),
        t1=args.t1, t2=args.t2, L=args.L,
    )


def _read_blocks(path: str) -> list[np.ndarray]:
    out = []
    with open(path, "rb") as fh:
        raw = fh.read()
    pos = 0
    while pos < len(raw):
        blk = BitBlock.from_bytes(raw[pos:])
        out.append(blk.data)
        pos += 16 + (blk.rows * blk.cols + 7) // 8
    return out


def _write_blocks(path: str, blocks) -> None:
    with open(path, "wb") as fh:
        for b in blocks:
            fh.write(BitBlock(b).to_bytes())


def cmd_validate(args) -> int:
    bad = validate(_params(args))
    if bad:
        for v in bad:
            print(v)
        return 1
    print("ok")
    return 0


def cmd_rate(args) -> int:
    p = _params(args)
    bad = validate(p)
    if bad:
        raise ValueError("; ".join(bad))
    print(f"{float(rate(p)):.4f}")
    return 0


def cmd_encode(args) -> int:
    p = _params(args)
    bad = validate(p)
    if bad:
        raise ValueError("; ".join(bad))
    if args.L < 1:
        raise ValueError("need --L >= 1")
    if args.seed is None:
        src = zero_info
    else:
        src = random_info(np.random.default_rng(args.seed))
    blocks = encode_chain(p, args.L, src)
    _write_blocks(args.out, blocks)
    log.info("wrote %d blocks to %s", len(blocks), args.out)
    return 0


def cmd_decode(args) -> int:
    p = _params(args)
    bad = validate(p)
    if bad:
        raise ValueError("; ".join(bad))
    ys = _read_blocks(args.infile)
    cfg = DecoderConfig(window=args.W, max_iters=args.iters)
    rep = decode_stream(p, build_codes(p), cfg, ys)
    _write_blocks(args.out, rep.blocks)
    log.info("decoded %d blocks", len(rep.blocks))
    return 0


def cmd_threshold(args) -> int:
    cfg = de.DeConfig(L=args.chain)
    print("t1,t2,w,M_bar,p_bar,ebn0_db")
    if args.m1 is not None:
        p = SrscParams(m1=args.m1, m2=args.m2, q1=args.q1, q2=args.q2,
                       w=args.w, nu1=args.nu1, nu2=args.nu2,
                       t1=args.t1, t2=args.t2)
        bad = validate(p)
        if bad:
            raise ValueError("; ".join(bad))
        res = de.threshold_p(p, cfg, args.tol)
        print(f"{args.t1},{args.t2},{args.w},{res.M_bar:.4f},"
              f"{res.p_bar:.6e},{res.ebn0_db:.4f}")
    else:
        mbar = de.threshold_M(args.t1, args.t2, args.w, cfg, args.tol)
        print(f"{args.t1},{args.t2},{args.w},{mbar:.4f},,")
    return 0


def cmd_design(args) -> int:
    bench: dict = {}
    cands = []
    with open(args.spec) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "candidate":
                nu, t, q, w = (int(x) for x in val.split(","))
                cands.append((nu, t, q, w))
            else:
                bench[key] = float(val)
    for need in ("m", "nu", "t"):
        if need not in bench:
            raise ValueError(f"benchmark spec missing '{need}='")
    if not cands:
        raise ValueError("benchmark spec has no candidate= lines")
    delta = bench.get("delta", 0.0)
    print("nu,t,q,w,beta,a,b,m_lo,feasible,m_recommended")
    for nu, t, q, w in cands:
        query = de.DesignQuery(
            m_ref=int(bench["m"]), nu_ref=int(bench["nu"]), t_ref=int(bench["t"]),
            nu=nu, t=t, q=q, w=w, delta=delta,
        )
        r = de.theorem1_search(query, tol=args.tol)
        rec = r.m_recommended if r.m_recommended is not None else ""
        print(f"{nu},{t},{q},{w},{r.beta},{r.a},{r.b:.2f},{r.m_lo},"
              f"{int(r.feasible)},{rec}")
    return 0


def cmd_floor(args) -> int:
    p = _params(args)
    bad = validate(p)
    if bad:
        raise ValueError("; ".join(bad))
    est = floor.floor_estimate(p)
    print("s_min,a_min,exact,p,ber")
    for pv in args.p:
        print(f"{est.s_min},{est.a_min},{int(est.exact)},{pv:.6e},"
              f"{est.ber(pv):.6e}")
    return 0


def _channel_points(args, params: SrscParams):
    R = float(rate(params))
    pts = []
    for pv in args.p or []:
        pts.append(sim.ChannelModel.bsc(pv))
    for db in args.ebn0 or []:
        pts.append(sim.ChannelModel.awgn_hard(db, R))
    if not pts:
        raise ValueError("give at least one --p or --ebn0 point")
    return pts


def _sim_config(args) -> sim.SimConfig:
    return sim.SimConfig(
        seed=args.seed,
        decoder=DecoderConfig(window=args.W, max_iters=args.iters, mode=args.mode),
        min_errors=args.min_errors,
        max_bits=args.max_bits,
        chain_len=args.chain_len,
        workers=args.workers,
    )


def cmd_simulate(args) -> int:
    p = _params(args)
    bad = validate(p)
    if bad:
        raise ValueError("; ".join(bad))
    cfg = _sim_config(args)
    print(sim.CSV_HEADER)
    for ch in _channel_points(args, p):
        res = sim.run_sim(p, ch, cfg)
        row = sim.result_row(p, ch, cfg, res, label=args.label)
        print(",".join(str(row[k]) for k in sim.CSV_HEADER.split(",")))
    return 0


def _add_sim_flags(p: argparse.ArgumentParser):
    p.add_argument("--p", type=float, nargs="*", default=None,
                   help="BSC crossover probabilities")
    p.add_argument("--ebn0", type=float, nargs="*", default=None,
                   help="AWGN hard-decision Eb/N0 points (dB)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--W", type=int, default=7)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--mode", choices=["plain", "mf"], default="plain")
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-bits", type=int, default=10**9)
    p.add_argument("--chain-len", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--label", default="srsc")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="srsc",
        description="Sub-block rearranged staircase codes: construction, "
                    "decoding, threshold and error-floor analysis, simulation",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check a parameter set")
    _add_param_flags(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("rate", help="code rate of a parameter set")
    _add_param_flags(p)
    p.set_defaults(fn=cmd_rate)

    p = sub.add_parser("encode", help="encode a chain to a block file")
    _add_param_flags(p)
    p.add_argument("--seed", type=int, default=None,
                   help="random-data seed (omit for all-zero data)")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("decode", help="window-decode a block file")
    _add_param_flags(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--W", type=int, default=7)
    p.add_argument("--iters", type=int, default=10)
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("threshold", help="decoding threshold via density evolution")
    p.add_argument("--t1", type=int, required=True)
    p.add_argument("--t2", type=int, required=True)
    p.add_argument("--w", type=int, default=2)
    p.add_argument("--tol", type=float, default=5e-5)
    p.add_argument("--chain", type=int, default=1000, help="chain length L for DE")
    for flag in ("--m1", "--m2", "--q1", "--q2", "--nu1", "--nu2"):
        p.add_argument(flag, type=int, default=None)
    p.set_defaults(fn=cmd_threshold)

    p = sub.add_parser("design", help="block-size feasibility search vs a benchmark")
    p.add_argument("--spec", required=True,
                   help="key=value file: m=, nu=, t=, [delta=], candidate=nu,t,q,w ...")
    p.add_argument("--tol", type=float, default=5e-5)
    p.set_defaults(fn=cmd_design)

    p = sub.add_parser("floor", help="error-floor estimate")
    _add_param_flags(p)
    p.add_argument("--p", type=float, nargs="+", required=True)
    p.set_defaults(fn=cmd_floor)

    p = sub.add_parser("simulate", help="Monte Carlo BER/FER at given channel points")
    _add_param_flags(p)
    _add_sim_flags(p)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("sweep", help="alias of simulate over a grid of points")
    _add_param_flags(p)
    _add_sim_flags(p)
    p.set_defaults(fn=cmd_simulate)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=os.environ.get("SRSC_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
