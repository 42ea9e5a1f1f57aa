"""Frozen-set construction for ``G = F^{(x)n}`` without bit reversal.

Both recursions walk a binary tree whose root is the raw channel; the
children of channel ``j`` are ``2j`` (check-node combining, degraded) and
``2j + 1`` (variable-node combining, upgraded). Reading an index from its
most significant bit down gives the transforms applied to the raw channel
in order, which matches ``x = u G`` for the unpermuted Kronecker power.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import CodeConfig
from .parallel import case_d_pairs

log = logging.getLogger(__name__)


class Method(enum.Enum):
    BEC_BHATTACHARYYA = "bec"
    AWGN_GAUSSIAN_APPROX = "ga"


@dataclass(frozen=True)
class ReliabilityProfile:
    """Per-channel reliability; ``metric[i]`` higher means ``u_i`` more reliable.

    For the BEC the metric is ``-ln z`` (monotone in ``1 - z`` but free of
    rounding ties near ``z = 0``); ``z`` itself is kept alongside. For the
    AWGN Gaussian approximation it is the mean LLR.
    """

    N: int
    metric: np.ndarray
    method: Method
    z: np.ndarray | None = None

    def __post_init__(self):
        if self.metric.shape != (self.N,):
            raise ValueError(f"metric must have shape ({self.N},), got {self.metric.shape}")
        if not np.all(np.isfinite(self.metric)):
            raise ValueError("reliability metric must be finite")

    @property
    def reliability(self) -> np.ndarray:
        """``1 - z`` for the BEC, the metric otherwise."""
        return 1.0 - self.z if self.z is not None else self.metric


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")


def construct_bec(n: int, erasure_prob: float) -> ReliabilityProfile:
    """Bhattacharyya recursion ``z -> (2z - z^2, z^2)`` from ``z = erasure_prob``."""
    _check_n(n)
    if not 0.0 < erasure_prob < 1.0:
        raise ValueError(f"erasure probability must be in (0, 1), got {erasure_prob}")
    # Log domain: z**(2**n) underflows long before n = 12 for small erasure_prob.
    lz = np.array([math.log(erasure_prob)])
    for _ in range(n):
        nxt = np.empty(2 * lz.size)
        # ln(2z - z^2) = ln z + ln(1 - (z - 1)); capped at 0 so rounding never
        # makes z > 1, which would swap the order of the two children.
        nxt[0::2] = np.minimum(lz + np.log1p(-np.expm1(lz)), 0.0)
        nxt[1::2] = 2.0 * lz
        lz = nxt
    return ReliabilityProfile(1 << n, -lz, Method.BEC_BHATTACHARYYA, z=np.exp(lz))


# Two-segment approximation of phi(x) = 1 - E[tanh(L/2)], L ~ N(x, 2x)
# (Chung, Richardson, Urbanke 2001):
#   phi(x) = exp(-0.4527 x^0.86 + 0.0218)              0 < x < 10
#   phi(x) = sqrt(pi/x) exp(-x/4) (1 - 10/(7x))        x >= 10
_GA_ALPHA = -0.4527
_GA_GAMMA = 0.86
_GA_BETA = 0.0218
_GA_SPLIT = 10.0
_LOG_PHI_AT_SPLIT = _GA_ALPHA * _GA_SPLIT**_GA_GAMMA + _GA_BETA
_BISECT_STEPS = 80


def _log_phi(x: np.ndarray) -> np.ndarray:
    """ln phi(x), made non-increasing.

    The upper segment starts slightly above where the lower one ends, so it
    is capped at the value reached just below the split.
    """
    x = np.asarray(x, dtype=float)
    low = _GA_ALPHA * np.power(np.maximum(x, 0.0), _GA_GAMMA) + _GA_BETA
    safe = np.maximum(x, _GA_SPLIT)
    high = 0.5 * np.log(np.pi / safe) - safe / 4.0 + np.log1p(-10.0 / (7.0 * safe))
    return np.where(x < _GA_SPLIT, low, np.minimum(high, _LOG_PHI_AT_SPLIT))


def _check_node_mean(m: np.ndarray) -> np.ndarray:
    """``phi^-1(1 - (1 - phi(m))^2)``, limited to ``m``.

    The limit matters only where the approximation gives phi > 1
    (m below about 0.03); there the exact transform never exceeds m either.
    """
    lphi = _log_phi(m)
    target = lphi + np.log(2.0 - np.exp(lphi))
    lo = np.zeros_like(m)
    hi = m.copy()
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        too_small = _log_phi(mid) > target
        lo = np.where(too_small, mid, lo)
        hi = np.where(too_small, hi, mid)
    return hi


def channel_llr_mean(snr_db: float, snr_type: str = "esno", rate: float | None = None) -> float:
    """Mean LLR of BPSK over AWGN: ``4 Es/N0``; with ``ebno``, ``Es/N0 = rate * Eb/N0``."""
    if not math.isfinite(snr_db):
        raise ValueError(f"design SNR must be finite, got {snr_db}")
    snr = 10.0 ** (snr_db / 10.0)
    if snr_type == "esno":
        return 4.0 * snr
    if snr_type == "ebno":
        if rate is None or not 0.0 <= rate <= 1.0:
            raise ValueError(f"ebno design SNR needs a code rate in [0, 1], got {rate!r}")
        return 4.0 * rate * snr
    raise ValueError(f"snr_type must be 'esno' or 'ebno', got {snr_type!r}")


def ga_llr_means(n: int, channel_means) -> np.ndarray:
    """Mean LLR of every synthesized channel, one row per raw-channel mean.

    Accepts a batch so that constructions differing only in the raw
    channel (for example Eb/N0 designs at many rates) share one pass.
    """
    _check_n(n)
    m = np.asarray(channel_means, dtype=float).reshape(-1, 1)
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise ValueError("channel LLR means must be finite and non-negative")
    for _ in range(n):
        nxt = np.empty((m.shape[0], 2 * m.shape[1]))
        nxt[:, 0::2] = _check_node_mean(m)
        nxt[:, 1::2] = 2.0 * m
        m = nxt
    return m


def construct_awgn_ga(n: int, design_snr_db: float, snr_type: str = "esno",
                      rate: float | None = None) -> ReliabilityProfile:
    """Gaussian-approximation density evolution of the mean LLR per channel."""
    means = ga_llr_means(n, [channel_llr_mean(design_snr_db, snr_type, rate)])
    return ReliabilityProfile(1 << n, means[0], Method.AWGN_GAUSSIAN_APPROX)


def bit_reversed(profile: ReliabilityProfile) -> ReliabilityProfile:
    """Profile re-indexed by bit reversal, as if built for ``B_N F^{(x)n}``.

    The result is not the reliability order of the unpermuted transform;
    it is offered because sets published with bit-reversed indexing (for
    example ``A = {1, 3, 5, 6, 7}`` from a BEC(0.5) at N = 8) come out of it.
    """
    n = profile.N.bit_length() - 1
    perm = np.array([int(format(i, f"0{n}b")[::-1], 2) for i in range(profile.N)])
    z = None if profile.z is None else profile.z[perm]
    return ReliabilityProfile(profile.N, profile.metric[perm], profile.method, z=z)


ORDERS = ("natural", "bit-reversed")


def select_info_set(profile: ReliabilityProfile, K: int, frozen_values=None) -> CodeConfig:
    """Put the ``K`` most reliable channels in the info set.

    Ties go to the larger index. A case-d pair in the result (user bit above
    a frozen bit) is logged as a warning; use
    :func:`polarcode.parallel.case_d_pairs` to inspect it.
    """
    N = profile.N
    if not 0 <= K <= N:
        raise ValueError(f"K must be in [0, {N}], got {K}")
    # lexsort: last key is primary. Descending metric, then descending index.
    idx = np.arange(N)
    order = np.lexsort((-idx, -profile.metric))
    info = tuple(sorted(int(i) for i in order[:K]))
    config = CodeConfig(N.bit_length() - 1, info, frozen_values)

    bad = case_d_pairs(config)
    if bad:
        log.warning("constructed info set has %d case-d pair(s), first psi=%d", len(bad), bad[0])
    return config


def construct(n: int, K: int, method: str = "bec", param: float = 0.5,
              snr_type: str = "ebno", order: str = "natural") -> CodeConfig:
    """One-call construction; ``param`` is the erasure probability or design SNR in dB."""
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    if method in ("bec", Method.BEC_BHATTACHARYYA):
        profile = construct_bec(n, param)
    elif method in ("ga", Method.AWGN_GAUSSIAN_APPROX):
        rate = K / (1 << n) if snr_type == "ebno" else None
        profile = construct_awgn_ga(n, param, snr_type, rate)
    else:
        raise ValueError(f"unknown construction method {method!r}")
    if order == "bit-reversed":
        profile = bit_reversed(profile)
    return select_info_set(profile, K)
