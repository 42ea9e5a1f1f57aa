"""In-place encoders for systematic and nonsystematic polar codes.

``encode_spc`` and ``encode_nspc`` use exactly ``N`` bits of working memory
and ``(N/2) log2 N`` XORs; ``encode_spc_parallel2`` moves two rows per step
where the frozen pattern allows, at the same cost. ``polarcode.oracle``
holds the dense GF(2) reference they are checked against.
"""

from .construction import (ReliabilityProfile, bit_reversed, construct, construct_awgn_ga,
                           construct_bec, select_info_set)
from .core import BitBuffer, CodeConfig, PairCase, classify_pair
from .inplace import LayerMemory, ScheduleError, encode_nspc, encode_spc, schedule_indices
from .instrumentation import OpLedger, assert_complexity, benchmark
from .oracle import (Gf2Matrix, SingularMatrixError, encode_nonsystematic_oracle,
                     encode_systematic_oracle, gf2_invert, kron_power, submatrix)
from .parallel import CaseDViolation, encode_spc_parallel2, propagation_stats

__all__ = [
    "BitBuffer", "CaseDViolation", "CodeConfig", "Gf2Matrix", "LayerMemory", "OpLedger",
    "PairCase", "ReliabilityProfile", "ScheduleError", "SingularMatrixError",
    "assert_complexity", "benchmark", "bit_reversed", "classify_pair", "construct",
    "construct_awgn_ga", "construct_bec", "encode_nonsystematic_oracle", "encode_nspc",
    "encode_spc", "encode_spc_parallel2", "encode_systematic_oracle", "gf2_invert",
    "kron_power", "propagation_stats", "schedule_indices", "select_info_set", "submatrix",
]
