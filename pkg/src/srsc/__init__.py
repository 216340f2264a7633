"""Sub-block rearranged staircase codes: construction, encoding, iterative
bounded-distance decoding, density-evolution thresholds, error-floor
combinatorics, and Monte Carlo simulation."""

from .bch import BchCode, DecodeOutcome, bdd_decode, bdd_decode_genie, build_bch, encode_systematic
from .blocks import BitBlock, rearrange, rearrange_inverse
from .de import DeConfig, DesignQuery, ThresholdResult, de_run, poisson_tail, theorem1_search, threshold_M, threshold_p
from .decoder import DecoderConfig, DecodeReport, decode_stream, decode_window
from .encoder import ChainState, build_codes, encode_chain, encode_next, new_chain
from .floor import FloorEstimate, a_min_w2, ber_floor, brute_force_stall_oracle, floor_estimate, s_min_lb_wide, s_min_w2, tightness
from .gf import FieldTables, build_field
from .params import SrscParams, phi, rate, validate
from .sim import ChannelModel, SimConfig, SimResult, apply_channel, run_sim, sweep

__version__ = "0.1.0"
