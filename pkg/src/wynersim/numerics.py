"""Small dense complex linear algebra and special-function kernels.

Conjugation convention: every routine here works with *effective* vectors,
i.e. callers pass h_eff = conj(h) so that f* (h_eff h_eff*) f == |h^T f|^2.
The beamforming layer owns that conversion; nothing in this module conjugates
its inputs.

Phase convention: unit vectors are normalized so that their first
non-negligible entry is real and positive, which makes beams comparable as
points on the Grassmann manifold (equality tests, regression goldens).
"""

import math
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import DegenerateChannel, DomainError

LOG2E = math.log2(math.e)

# Above this codebook exponent the exact alternating sum is replaced by
# quadrature: 2^B rational terms get slow, and the floating-point version of
# the sum is catastrophically cancelled long before that.
RATIONAL_BACKEND_MAX_B = 10


def phase_normalize(v, tol=1e-9):
    """Rotate v by a unit scalar so its first non-negligible entry is real > 0."""
    v = np.asarray(v, dtype=np.complex128)
    scale = np.linalg.norm(v)
    if scale == 0.0:
        return v
    idx = np.flatnonzero(np.abs(v) > tol * scale)
    if idx.size == 0:
        return v
    pivot = v[idx[0]]
    return v * (pivot.conjugate() / abs(pivot))


def rank1_gen_eigvec(h_eff, g_eff, rho_i):
    """Principal generalized eigenvector of (h h*) f = lambda (rho g g* + I) f.

    Closed form via the rank-one (Sherman-Morrison) inverse of
    R_g = rho_i g g* + I:  f ~ R_g^{-1} h,  lambda = h* R_g^{-1} h.
    Returns (f, lambda) with f unit-norm and phase-normalized.
    """
    h = np.asarray(h_eff, dtype=np.complex128)
    g = np.asarray(g_eff, dtype=np.complex128)
    if rho_i < 0:
        raise DomainError("rho_i must be nonnegative, got %r" % rho_i)
    hn2 = np.vdot(h, h).real
    if not np.isfinite(hn2) or hn2 <= 0.0:
        raise DegenerateChannel("zero-norm desired channel")

    gn2 = np.vdot(g, g).real
    gh = np.vdot(g, h)  # g* h
    denom = 1.0 + rho_i * gn2
    d = h - (rho_i * gh / denom) * g  # R_g^{-1} h
    lam = hn2 - rho_i * abs(gh) ** 2 / denom
    f = phase_normalize(d / np.linalg.norm(d))
    return f, lam


def beta_fn(a, b):
    """Euler Beta function B(a, b) via log-gamma."""
    if a <= 0 or b <= 0:
        raise DomainError("beta_fn requires positive arguments, got (%r, %r)" % (a, b))
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def log2cos2_sum_exact(B, Nt):
    """Exact rational value of E{log2 cos^2} / log2(e) for a 2^B RVQ codebook.

    Alternating binomial sum of truncated harmonic numbers:
        sum_{i=0}^{2^B} C(2^B, i) (-1)^i H_{i (Nt-1)}.
    """
    _check_bn(B, Nt)
    n = 1 << B
    m = Nt - 1
    harm = [Fraction(0)]
    for ell in range(1, n * m + 1):
        harm.append(harm[-1] + Fraction(1, ell))
    total = Fraction(0)
    for i in range(n + 1):
        term = math.comb(n, i) * harm[i * m]
        total += -term if i & 1 else term
    return total


def _quantization_log2cos2_quad(B, Nt):
    # E{log2(1 - Z)} with Z the min of 2^B i.i.d. variables of CDF z^(Nt-1).
    # Substituting u = z^(Nt-1) and then y = 1 - (1-u)^N flattens the
    # integrand to log2(1 - (1 - (1-y)^(1/N))^(1/(Nt-1))) on [0, 1].
    n = float(1 << B)
    m = Nt - 1

    def integrand(y):
        u = -np.expm1(np.log1p(-y) / n)
        return np.log1p(-(u ** (1.0 / m))) / math.log(2.0)

    val, _err = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12,
                               limit=400, points=[0.0, 1.0])
    return val


def expected_log2_cos2(B, Nt):
    """E{log2 cos^2(angle(direction, quantization))} for RVQ with 2^B codewords.

    Exact rational backend up to B = 10, adaptive quadrature beyond.
    """
    _check_bn(B, Nt)
    if B <= RATIONAL_BACKEND_MAX_B:
        return LOG2E * float(log2cos2_sum_exact(B, Nt))
    return _quantization_log2cos2_quad(B, Nt)


def expected_sin2_min(B, Nt):
    """E{1 - cos^2} of the selected codeword: 2^B * Beta(2^B, Nt/(Nt-1))."""
    _check_bn(B, Nt)
    n = float(1 << B)
    b = Nt / (Nt - 1.0)
    # n * Beta(n, b) in log space; n Beta(n, b) <= 1 so no overflow concerns.
    return math.exp(B * math.log(2.0)
                    + math.lgamma(n) + math.lgamma(b) - math.lgamma(n + b))


def _check_bn(B, Nt):
    if B < 0 or int(B) != B:
        raise DomainError("codebook bits must be a nonnegative integer, got %r" % B)
    if Nt < 2 or int(Nt) != Nt:
        raise DomainError("Nt must be an integer >= 2, got %r" % Nt)
