"""Weyl-Titchmarsh m-function of the transformed half-line operator.

Three interchangeable representations are provided, all exposing
``evaluate(lam) -> complex``:

* :class:`ConstantWeylM`  -- closed form for Q(x) = -s e^{-2x},
* :class:`StepWeylM`      -- closed form for the two-region exponential
  profile, built by matching the decaying solution across the interface,
* :class:`InterpolatedWeylM` -- reconstruction from the boundary data
  m(-(l+1/2)^2) supplied by fixed-energy phase shifts.

Branch convention: sqrt(lam) is taken with Im sqrt(lam) >= 0 (cut along the
negative real axis approached from above), which makes i*sqrt(lam) the free
m-function and the closed forms real on lam < 0.

The sampled values come from the phase shifts through

    m(-(l+1/2)^2) = -ka [J'_{l+1/2}(ka) - tan(d_l) Y'_{l+1/2}(ka)]
                      / [J_{l+1/2}(ka)  - tan(d_l) Y_{l+1/2}(ka)].

The sample-to-function step uses the Laplace-transform sampling expansion on
the half-integer node set: with G(x) = m(-x^2) + x,

    m(lam) ~ i sqrt(lam) + sum_n c_n(-i sqrt(lam)) sum_{m<=n} a_nm G(m+1/2),
    c_n(x) = (2n+1) (1/2 - x)_n / (1/2 + x)_{n+1},
    a_nm   = (-n)_m (n+1)_m / (m!)^2.

The (1/2+x)_{n+1} denominator (order n+1) makes the partial sums reproduce
every sample exactly and decay like 1/x at infinity; with the order-n
denominator that appears in some sources neither property holds and the
reconstruction degrades beyond repair.  The node weights a_nm grow
combinatorially, so coefficients beyond n ~ 15 amplify double-precision data
noise; callers working at large l_max should expect the non-physical
(Im m <= 0) diagnostic to fire and downstream clamping to engage.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DenominatorError, DomainError, PoleError
from .potentials import ProblemSetup
from .specfun import bessel_j_scaled, cyl_bessel_half_integer

#: |J_nu(sqrt(s))| below this is treated as a spectral coincidence
_DENOM_FLOOR = 1e-300


def sqrt_lambda(lam: complex) -> complex:
    """Principal square root with Im >= 0 (upper-rim continuation on lam < 0)."""
    rt = cmath.sqrt(complex(lam))
    if rt.imag < 0.0:
        rt = -rt
    return rt


def m_from_phase_shift(delta: float, l: int, setup: ProblemSetup) -> float:
    """Boundary m-value at lam = -(l+1/2)^2 from the phase shift delta_l."""
    rho = setup.k * setup.a
    J, Y, Jp, Yp = cyl_bessel_half_integer(l, rho)
    t = math.tan(delta)
    den = J - t * Y
    if abs(den) < 1e-13 * abs(t * Y):
        raise DenominatorError(
            f"J - tan(delta) Y nearly vanishes at l={l}; delta incompatible with ka={rho:g}"
        )
    return -rho * (Jp - t * Yp) / den


@dataclass(frozen=True)
class MSamples:
    """m(-(l+1/2)^2) for l = 0..l_max, plus where the numbers came from."""

    values: tuple[float, ...]
    provenance: str = "from-phase-shifts"

    @property
    def l_max(self) -> int:
        return len(self.values) - 1


def msamples_from_phase_shifts(deltas, setup: ProblemSetup) -> MSamples:
    vals = tuple(m_from_phase_shift(d, l, setup) for l, d in enumerate(deltas))
    return MSamples(values=vals, provenance="from-phase-shifts")


class WeylM:
    """Evaluable m-function representation."""

    def evaluate(self, lam: complex) -> complex:
        raise NotImplementedError

    def samples(self, l_max: int) -> MSamples:
        """Node values m(-(l+1/2)^2), l = 0..l_max."""
        vals = tuple(self.evaluate(-((l + 0.5) ** 2)).real for l in range(l_max + 1))
        return MSamples(values=vals, provenance="from-analytic")


@dataclass(frozen=True)
class ConstantWeylM(WeylM):
    """m(lam) = -sqrt(s) J'_{-i sqrt(lam)}(sqrt(s)) / J_{-i sqrt(lam)}(sqrt(s)).

    s = 0 short-circuits to the free value i sqrt(lam) (the formula is 0/0
    there).  Negative s continues analytically through sqrt(s) = i sqrt(|s|).
    """

    s: float

    def evaluate(self, lam):
        if self.s == 0.0:
            return 1j * sqrt_lambda(lam)
        rs = cmath.sqrt(complex(self.s))
        nu = -1j * sqrt_lambda(lam)
        _, sm, smd = bessel_j_scaled(nu, rs)
        if abs(sm) < _DENOM_FLOOR:
            raise DenominatorError(f"J_nu(sqrt s) vanished at lam={lam} (spectral coincidence)")
        return -rs * smd / sm


@dataclass(frozen=True)
class StepWeylM(WeylM):
    """Closed form for Q(x) = -s2 e^{-2x} (x <= x0), -s1 e^{-2x} (x > x0).

    The L^2 branch in the far region is J_{-i sqrt(lam)}(sqrt(s1) e^{-x}); it
    is matched across the interface onto the near-region basis at the point
    t0 = e^{-x0} (the Bessel arguments there are sqrt(s_i) e^{-x0}).  All
    Wronskians are assembled in (log-scale, mantissa) form, so orders with
    |Im nu| of a hundred or more stay inside double range.  s1 = s2 reduces
    to :class:`ConstantWeylM` by Wronskian degeneracy.
    """

    s1: float
    s2: float
    x0: float

    def __post_init__(self):
        if not self.x0 > 0.0:
            raise DomainError("interface position x0 must be positive")

    def evaluate(self, lam):
        if self.s1 == 0.0 and self.s2 == 0.0:
            return 1j * sqrt_lambda(lam)
        nu = -1j * sqrt_lambda(lam)  # decaying order in the far region
        t0 = math.exp(-self.x0)
        rs1 = cmath.sqrt(complex(self.s1))
        rs2 = cmath.sqrt(complex(self.s2))
        L1m, S1m, S1md = bessel_j_scaled(nu, rs1 * t0)
        L2m0, S2m0, S2md0 = bessel_j_scaled(nu, rs2 * t0)
        L2p0, S2p0, S2pd0 = bessel_j_scaled(-nu, rs2 * t0)
        L2m1, S2m1, S2md1 = bessel_j_scaled(nu, rs2)
        L2p1, S2p1, S2pd1 = bessel_j_scaled(-nu, rs2)
        # scaled interface Wronskians W[far-, near±](t0), d/dt form
        w_mm = (L1m + L2m0, S1m * rs2 * S2md0 - rs1 * S1md * S2m0)
        w_mp = (L1m + L2p0, S1m * rs2 * S2pd0 - rs1 * S1md * S2p0)
        terms_num = [
            (w_mm[0] + L2p1, w_mm[1] * S2pd1),
            (w_mp[0] + L2m1, -w_mp[1] * S2md1),
        ]
        terms_den = [
            (w_mm[0] + L2p1, w_mm[1] * S2p1),
            (w_mp[0] + L2m1, -w_mp[1] * S2m1),
        ]
        Ln, num = _pairs_sum(terms_num)
        Ld, den = _pairs_sum(terms_den)
        if abs(den) < _DENOM_FLOOR:
            raise DenominatorError(f"step m-function denominator vanished at lam={lam}")
        return -rs2 * cmath.exp(Ln - Ld) * num / den


def _pairs_sum(terms):
    """Combine (log-scale, mantissa) products: sum_i exp(L_i) m_i, stably."""
    Lmax = max(t[0].real for t in terms)
    total = sum(cmath.exp(t[0] - Lmax) * t[1] for t in terms)
    return Lmax, total


@dataclass(frozen=True)
class InterpolatedWeylM(WeylM):
    """Sampling reconstruction of m from its half-integer node values."""

    node_values: MSamples
    _beta: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        vals = self.node_values.values
        beta = []
        for n in range(len(vals)):
            terms = []
            for m in range(n + 1):
                a_nm = 1.0
                for j in range(m):
                    a_nm *= (j - n) * (n + 1 + j) / ((j + 1) * (j + 1))
                terms.append(a_nm * (vals[m] + m + 0.5))
            beta.append(math.fsum(terms))
        object.__setattr__(self, "_beta", tuple(beta))

    def evaluate(self, lam):
        x = -1j * sqrt_lambda(lam)
        total = 1j * sqrt_lambda(lam)
        num = complex(1.0)
        den = 0.5 + x  # (1/2 + x)_{n+1} starts at order one
        for n, b in enumerate(self._beta):
            if n > 0:
                num *= 0.5 - x + (n - 1)
                den *= 0.5 + x + n
            if abs(den) < 1e-12:
                raise PoleError(f"interpolation pole: (1/2 - i sqrt(lam)) near -{n}")
            total += (2 * n + 1) * (num / den) * b
        return total

    def im_nonpositive(self, kappa: float) -> bool:
        """Diagnostic: does Im m(kappa^2) fail to be positive?"""
        return self.evaluate(kappa * kappa).imag <= 0.0
