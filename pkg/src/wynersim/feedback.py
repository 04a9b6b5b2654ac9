"""RVQ codebooks, channel-direction quantization, and the CSI exchange model.

User k quantizes its desired channel h_k and the interfering channel g_{k+1}
with two fresh per-trial codebooks, and feeds both records to base k. Base k
then forwards the interfering record to base k+1 over the backhaul, so that
every base ends up holding the quantized version of the channel through which
*it* interferes. Channel norms cross the feedback link unquantized.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import channel as ch
from .errors import BudgetTooLarge, DomainError, ShapeError
from .numerics import rank1_gen_eigvec

_MAX_BITS = 20

# role tags for codebook sub-seeding
SEED_DESIRED = 10
SEED_INTERF = 11


@dataclass(frozen=True)
class Codebook:
    """2^B independent isotropic unit vectors."""
    B: int
    vectors: np.ndarray  # (2^B, Nt)


@dataclass
class QuantizedCsi:
    """One user's feedback record: quantized directions plus exact gains."""
    h_hat: np.ndarray
    g_hat: Optional[np.ndarray]
    h_norm: float
    g_norm: float
    rho_d: float
    alpha: float


@dataclass
class BaseStationView:
    """What one base station knows after the backhaul exchange."""
    own_desired: Tuple[np.ndarray, float]
    caused_interference: Optional[Tuple[np.ndarray, float]]
    rho_i_prev: float


def draw_codebook(B, Nt, rng_seed):
    """RVQ codebook: 2^B normalized i.i.d. complex Gaussian vectors."""
    if B < 0:
        raise DomainError("codebook bits must be nonnegative")
    if B > _MAX_BITS:
        raise BudgetTooLarge("refusing a 2^%d-entry codebook" % B)
    rng = ch.stream(rng_seed, 0xC0DE)
    n = 1 << B
    v = rng.standard_normal((n, Nt)) + 1j * rng.standard_normal((n, Nt))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return Codebook(B=B, vectors=v)


def quantize(direction, cb):
    """Pick the codeword maximizing |direction* w|^2; lowest index on ties."""
    d = np.asarray(direction, dtype=np.complex128)
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise DomainError("quantize expects a unit-norm direction")
    idx = int(np.argmax(np.abs(cb.vectors @ np.conj(d)) ** 2))
    return idx, cb.vectors[idx]


def user_feedback(h, g_next, split, seed_d, seed_i, rho_d=1.0, alpha=0.0):
    """Quantize one user's desired/interfering directions with fresh codebooks.

    g_next is the channel from the neighboring base to this user; None for
    the edge user of a finite array (nothing to report).
    """
    h = np.asarray(h, dtype=np.complex128)
    h_norm = float(np.linalg.norm(h))
    Nt = h.shape[0]
    _, h_hat = quantize(h / h_norm, draw_codebook(split.B_d, Nt, seed_d))
    if g_next is None:
        return QuantizedCsi(h_hat=h_hat, g_hat=None, h_norm=h_norm, g_norm=0.0,
                            rho_d=rho_d, alpha=alpha)
    g = np.asarray(g_next, dtype=np.complex128)
    g_norm = float(np.linalg.norm(g))
    _, g_hat = quantize(g / g_norm, draw_codebook(split.B_i, Nt, seed_i))
    return QuantizedCsi(h_hat=h_hat, g_hat=g_hat, h_norm=h_norm, g_norm=g_norm,
                        rho_d=rho_d, alpha=alpha)


def exchange(all_feedback, topology):
    """Backhaul forwarding: base k receives user k-1's interfering record."""
    if len(all_feedback) != topology.K:
        raise ShapeError("expected %d feedback records, got %d"
                         % (topology.K, len(all_feedback)))
    K = topology.K
    views = []
    for k in range(K):
        fb = all_feedback[k]
        prev = all_feedback[(k - 1) % K]
        if topology.kind == ch.FINITE and k == 0:
            caused, rho_prev = None, 0.0
        else:
            caused = (prev.g_hat, prev.g_norm)
            rho_prev = prev.alpha * prev.rho_d
        views.append(BaseStationView(own_desired=(fb.h_hat, fb.h_norm),
                                     caused_interference=caused,
                                     rho_i_prev=rho_prev))
    return views


def gebf_limited(view):
    """Generalized-eigenvector beam from quantized CSI (exact norms)."""
    h_hat, h_norm = view.own_desired
    h_eff = h_norm * np.conj(h_hat)
    if view.caused_interference is None or view.caused_interference[0] is None:
        f, _ = rank1_gen_eigvec(h_eff, np.zeros_like(h_eff), 0.0)
        return f
    g_hat, g_norm = view.caused_interference
    f, _ = rank1_gen_eigvec(h_eff, g_norm * np.conj(g_hat), view.rho_i_prev)
    return f
