"""Analytic sum-rate loss bounds and the feedback-bit partitioner.

The closed-form optimizer covers the Nt = 2 regime only; the general-Nt
bound is exposed through total_bound_general plus integer search.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .numerics import LOG2E, expected_log2_cos2, expected_sin2_min


@dataclass(frozen=True)
class BitSplit:
    """Partition of a per-user feedback budget into (desired, interfering) bits."""
    B_d: int
    B_i: int

    def __post_init__(self):
        if self.B_d < 0 or self.B_i < 0:
            raise DomainError("bit counts must be nonnegative")

    @property
    def total(self):
        return self.B_d + self.B_i


def t_d_bound(B_d, Nt):
    """Upper bound on the mean rate loss from quantizing the desired channel."""
    return -expected_log2_cos2(B_d, Nt)


def t_i_bound(B_i, Nt, rho_i):
    """Upper bound on the mean rate loss from quantizing the interfering channel."""
    if rho_i < 0:
        raise DomainError("rho_i must be nonnegative")
    return math.log2(1.0 + rho_i * Nt * expected_sin2_min(B_i, Nt))


def delta_tilde(B_d, B_tot, rho_i):
    """Per-cell Nt = 2 loss bound at a (real-valued) desired-bit count.

    log2(1 + 2 rho_i / (2^(B_tot - B_d) + 1)) + 2^(-B_d) log2(e).
    """
    if not 0.0 <= B_d <= B_tot:
        raise DomainError("B_d must lie in [0, B_tot], got %r" % B_d)
    if rho_i < 0:
        raise DomainError("rho_i must be nonnegative")
    return (math.log2(1.0 + 2.0 * rho_i / (2.0 ** (B_tot - B_d) + 1.0))
            + 2.0 ** (-B_d) * LOG2E)


def optimal_split(B_tot, rho_i, clamp=None):
    """Closed-form Nt = 2 bit partition: continuous minimizer, then floor/ceil.

    clamp, when given, restricts the continuous candidate to [lo, hi] before
    rounding (e.g. (3, B_tot - 3) to keep both codebooks out of the
    coarse-quantization regime). Ties pick the smaller B_d.
    """
    if B_tot < 0:
        raise DomainError("B_tot must be nonnegative")
    if rho_i == 0.0:
        b_real = float(B_tot)
    else:
        # stationary point of delta_tilde: with u = 2^(B_tot - B_d), setting
        # the gradient to zero gives u^2 + 2(1 + rho)u + (2 rho + 1) =
        # rho 2^(B_tot + 1), whose positive root is below. u <= 1 means the
        # bound is still decreasing at B_d = B_tot, so spend everything there.
        u = math.sqrt(rho_i * 2.0 ** (B_tot + 1) + rho_i * rho_i) - (1.0 + rho_i)
        if u <= 1.0:
            b_real = float(B_tot)
        else:
            b_real = B_tot - math.log2(u)
    lo, hi = 0.0, float(B_tot)
    if clamp is not None:
        lo = max(lo, float(clamp[0]))
        hi = min(hi, float(clamp[1]))
        if lo > hi:
            raise DomainError("empty clamp range %r for B_tot=%d" % (clamp, B_tot))
    b_real = min(max(b_real, lo), hi)
    cands = sorted({int(c) for c in (math.floor(b_real), math.ceil(b_real))
                    if lo - 1e-12 <= c <= hi + 1e-12})
    best = min(cands, key=lambda b: (delta_tilde(b, B_tot, rho_i), b))
    return BitSplit(B_d=best, B_i=B_tot - best)


def brute_force_split(B_tot, rho_i):
    """Exhaustive integer minimizer of delta_tilde; oracle for optimal_split."""
    if B_tot > 20:
        raise DomainError("brute force capped at B_tot <= 20")
    best = min(range(B_tot + 1), key=lambda b: (delta_tilde(b, B_tot, rho_i), b))
    return BitSplit(B_d=best, B_i=B_tot - best)


def total_bound_general(splits, params, Nt):
    """Sum over cells of the two per-channel bounds (general-Nt form)."""
    if len(splits) != len(params):
        raise ShapeError("got %d splits for %d cells" % (len(splits), len(params)))
    return float(sum(t_d_bound(s.B_d, Nt) + t_i_bound(s.B_i, Nt, p.rho_i)
                     for s, p in zip(splits, params)))


def delta_tilde_grad(B_d, B_tot, rho_i):
    """d delta_tilde / d B_d; used by the numeric convexity checks."""
    u = 2.0 ** (B_tot - B_d)
    return 2.0 * rho_i * u / ((u + 2.0 * rho_i + 1.0) * (1.0 + u)) - 2.0 ** (-B_d)
