"""Wyner-model topology and i.i.d. Rayleigh channel generation.

Every random draw is keyed by an explicit (seed, cell, role) tuple through
numpy's SeedSequence, so trials are reproducible independently of iteration
order and of serial/parallel scheduling.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError

CIRCULAR = "circular"
FINITE = "finite"

_ROLE_DESIRED = 0
_ROLE_INTERF = 1


@dataclass(frozen=True)
class Topology:
    """Cell arrangement: circular wrap-around or finite linear array."""
    kind: str
    K: int

    def __post_init__(self):
        if self.kind not in (CIRCULAR, FINITE):
            raise DomainError("topology kind must be 'circular' or 'finite'")
        if self.K < 2:
            raise DomainError("need at least 2 cells, got %d" % self.K)


@dataclass(frozen=True)
class CellParams:
    """Per-cell desired SNR (linear), interference ratio and feedback budget."""
    rho_d: float
    alpha: float
    B_tot: int = 0

    def __post_init__(self):
        if self.rho_d <= 0:
            raise DomainError("rho_d must be positive")
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError("alpha must lie in [0, 1], got %r" % self.alpha)
        if self.B_tot < 0:
            raise DomainError("B_tot must be nonnegative")

    @property
    def rho_i(self):
        """Received SNR of the interfering signal, alpha * rho_d."""
        return self.alpha * self.rho_d


@dataclass
class ChannelSet:
    """Per-user channels. h[k]: base k -> user k. g[k]: base k+1 -> user k.

    g[K-1] is None for the finite array (the last user has no interferer).
    """
    h: list
    g: list

    @property
    def K(self):
        return len(self.h)


def stream(seed, *key):
    """Deterministic per-(seed, key...) random generator.

    seed may be an int or a tuple of ints (e.g. (master_seed, trial, cell));
    every component is folded into the SeedSequence entropy, so serial and
    parallel runs see identical streams.
    """
    parts = (tuple(seed) if isinstance(seed, tuple) else (seed,)) + tuple(key)
    entropy = tuple(int(p) & 0xFFFFFFFFFFFFFFFF for p in parts)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _rayleigh(rng, Nt):
    # CN(0,1) per entry: independent real/imag parts N(0, 1/2)
    return np.sqrt(0.5) * (rng.standard_normal(Nt) + 1j * rng.standard_normal(Nt))


def generate(topology, Nt, rng_seed):
    """Draw one i.i.d. Rayleigh ChannelSet for the given topology."""
    if Nt < 2:
        raise DomainError("Nt must be >= 2")
    K = topology.K
    h = [_rayleigh(stream(rng_seed, k, _ROLE_DESIRED), Nt) for k in range(K)]
    g = [_rayleigh(stream(rng_seed, k, _ROLE_INTERF), Nt) for k in range(K)]
    if topology.kind == FINITE:
        g[K - 1] = None
    return ChannelSet(h=h, g=g)


@dataclass(frozen=True)
class UniformAlpha:
    alpha: float


@dataclass(frozen=True)
class RandomDbAlpha:
    lo_db: float
    hi_db: float


def alpha_profile(kind, K, rng_seed=0):
    """Per-cell interference ratios: a constant, or 10^(U[lo,hi] dB / 10)."""
    if isinstance(kind, UniformAlpha):
        if not 0.0 <= kind.alpha <= 1.0:
            raise DomainError("alpha must lie in [0, 1]")
        return [kind.alpha] * K
    if isinstance(kind, RandomDbAlpha):
        if kind.hi_db > 0:
            raise DomainError("hi_db must be <= 0 so that alpha <= 1")
        if kind.lo_db > kind.hi_db:
            raise DomainError("lo_db must be <= hi_db")
        rng = stream(rng_seed, 0xA1FA)
        db = rng.uniform(kind.lo_db, kind.hi_db, size=K)
        return list(10.0 ** (db / 10.0))
    raise DomainError("unknown alpha profile kind: %r" % (kind,))


def check_lengths(channels, params, topology):
    """Shared shape validation for consumers of (ChannelSet, params)."""
    if channels.K != topology.K or len(params) != topology.K:
        raise ShapeError("channels/params/topology disagree on K: %d/%d/%d"
                         % (channels.K, len(params), topology.K))
