"""Full-CSI transmit strategies (GEBF, EBF, ZF) and exact rate evaluation.

Index bookkeeping, fixed here once: base k's beam must protect user k-1
(base k reaches it through g_{k}, stored as channels.g[k-1]), while user k's
SINR mixes its own beam f_k with the neighbor's beam f_{k+1}.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import channel as ch
from .errors import DegenerateChannel, RankDeficient, ShapeError
from .numerics import phase_normalize, rank1_gen_eigvec

GEBF = "gebf"
EBF = "ebf"
ZF = "zf"

# sin of the h/g angle below which the pseudo-inverse column is noise
_ZF_SIN_MIN = 1e-6


@dataclass
class RateReport:
    """Per-user SINRs plus exact and high-SINR-approximated rates."""
    sinr: np.ndarray
    rate_exact: np.ndarray
    rate_highsinr: np.ndarray

    @property
    def sum_exact(self):
        return float(np.sum(self.rate_exact))

    @property
    def sum_highsinr(self):
        return float(np.sum(self.rate_highsinr))


def ebf(h):
    """Matched (eigen-)beam f = conj(h)/||h||; ignores caused interference."""
    h = np.asarray(h, dtype=np.complex128)
    n = np.linalg.norm(h)
    if n == 0.0:
        raise DegenerateChannel("cannot beamform on a zero channel")
    return phase_normalize(np.conj(h) / n)


def zf(h, g):
    """Zero-forcing beam: g^T f = 0 with maximal |h^T f|.

    First column of pinv([h^T; g^T]), normalized. Raises RankDeficient when
    h and g are (near-)parallel and the null constraint leaves no gain.
    """
    h = np.asarray(h, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    hn, gn = np.linalg.norm(h), np.linalg.norm(g)
    if hn == 0.0 or gn == 0.0:
        raise DegenerateChannel("cannot zero-force with a zero channel")
    c = abs(np.vdot(g, h)) / (hn * gn)
    sin2 = max(1.0 - c * c, 0.0)
    if math.sqrt(sin2) < _ZF_SIN_MIN:
        raise RankDeficient("h and g are (near-)parallel; zero-forcing infeasible")
    w = np.linalg.pinv(np.vstack([h, g]))[:, 0]
    return phase_normalize(w / np.linalg.norm(w))


def gebf(h_own, g_caused, rho_i_prev):
    """SLNR-optimal beam for base k: h_own = h_k, g_caused = g_k (to user k-1)."""
    f, _lam = rank1_gen_eigvec(np.conj(np.asarray(h_own)),
                               np.conj(np.asarray(g_caused)), rho_i_prev)
    return f


def rayleigh_quotient(f, h_own, g_caused, rho_i_prev):
    """f* R_h f / f* R_g f for the effective (conjugated) pencil."""
    f = np.asarray(f, dtype=np.complex128)
    num = abs(np.dot(np.asarray(h_own), f)) ** 2
    den = rho_i_prev * abs(np.dot(np.asarray(g_caused), f)) ** 2 + np.vdot(f, f).real
    return num / den


def plan_full_csi(strategy, channels, params, topology):
    """Per-base beams under a strategy, with edge handling for finite arrays.

    Base k (0-based) nulls/shapes toward user k-1 through g[k-1]; in the
    finite array base 0 has no victim and falls back to EBF.
    """
    ch.check_lengths(channels, params, topology)
    K = topology.K
    beams = []
    for k in range(K):
        if strategy == EBF:
            beams.append(ebf(channels.h[k]))
            continue
        prev = (k - 1) % K
        g_caused = channels.g[prev] if (topology.kind == ch.CIRCULAR or k > 0) else None
        if g_caused is None:
            beams.append(ebf(channels.h[k]))
        elif strategy == GEBF:
            beams.append(gebf(channels.h[k], g_caused, params[prev].rho_i))
        elif strategy == ZF:
            beams.append(zf(channels.h[k], g_caused))
        else:
            raise ShapeError("unknown strategy %r" % strategy)
    return beams


def sinr(channels, beams, params, topology):
    """Exact SINR_k = |h_k^T f_k|^2 / (alpha_k |g_{k+1}^T f_{k+1}|^2 + 1/rho_k)."""
    ch.check_lengths(channels, params, topology)
    if len(beams) != topology.K:
        raise ShapeError("expected %d beams, got %d" % (topology.K, len(beams)))
    K = topology.K
    vals = np.empty(K)
    for k in range(K):
        sig = abs(np.dot(channels.h[k], beams[k])) ** 2
        if channels.g[k] is None:  # finite-array edge user
            interf = 0.0
        else:
            interf = params[k].alpha * abs(np.dot(channels.g[k], beams[(k + 1) % K])) ** 2
        vals[k] = sig / (interf + 1.0 / params[k].rho_d)
    return RateReport(sinr=vals,
                      rate_exact=np.log2(1.0 + vals),
                      rate_highsinr=np.log2(vals))
