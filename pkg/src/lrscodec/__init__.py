"""Linearized Reed-Solomon codes in the sum-rank metric, their decoding, and
a multishot network coding simulator."""

from ._backend import BACKENDS, DEFAULT_BACKEND
from .gf import ConfigurationError, FieldTower, FqmElement
from .lrs import CodeSpec, NestedPair, coset_encode, dual, encode, optimal_pair
from .skewpoly import PBasis, SkewPoly
from .sumrank import BlockShape, BlockVector, EnumerationCapExceeded, sum_rank_distance, sum_rank_weight
from .wbdecoder import DecodingFailure, coset_decode, decode, decode_with_erasures, noncoherent_decode

__all__ = [
    "BACKENDS",
    "DEFAULT_BACKEND",
    "BlockShape",
    "BlockVector",
    "CodeSpec",
    "ConfigurationError",
    "DecodingFailure",
    "EnumerationCapExceeded",
    "FieldTower",
    "FqmElement",
    "NestedPair",
    "PBasis",
    "SkewPoly",
    "coset_decode",
    "coset_encode",
    "decode",
    "decode_with_erasures",
    "dual",
    "encode",
    "noncoherent_decode",
    "optimal_pair",
    "sum_rank_distance",
    "sum_rank_weight",
]
