"""Distortion measures, the greedy block quantizer and the FSDL pipeline."""
from .fsdl import (
    FSDLCodec,
    d_max_of,
    fsdl_decode,
    fsdl_encode,
    fsdl_encode_with_parse,
    fsld_bound,
    fsld_slack,
    coupled_defaults,
)
from .measures import ABSOLUTE, HAMMING, MEASURES, DistortionMeasure, absolute, get_measure, hamming
from .quantizer import (
    CandidateMode,
    Codebook,
    GreedyQuantizer,
    QuantizerConfig,
    ball_coverage,
    candidate_blocks,
    greedy_quantize,
    to_blocks,
)

__all__ = [
    "FSDLCodec", "d_max_of", "fsdl_decode", "fsdl_encode", "fsdl_encode_with_parse",
    "fsld_bound", "fsld_slack", "coupled_defaults",
    "ABSOLUTE", "HAMMING", "MEASURES", "DistortionMeasure", "absolute", "get_measure",
    "hamming",
    "CandidateMode", "Codebook", "GreedyQuantizer", "QuantizerConfig", "ball_coverage",
    "candidate_blocks", "greedy_quantize", "to_blocks",
]
