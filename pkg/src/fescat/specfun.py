"""Special functions for the fixed-energy inversion formulas.

Everything here is needed with *complex order* or at complex arguments, which
rules out the routines shipped with scipy.special (real order only for J_nu).
The module provides

* ``gamma_complex``  -- Lanczos approximation with reflection,
* ``pochhammer``     -- rising factorial by direct product,
* ``bessel_j_complex_order`` -- power series for J_nu and its derivative,
* ``bessel_j_scaled``        -- the same in (log-scale, mantissa) form so that
  Wronskian products with |Im nu| of a few hundred never overflow,
* ``cyl_bessel_half_integer`` -- J/Y of order l+1/2 with derivatives, built on
  spherical Bessel recurrences.

Magnitudes of J_{i*kappa} grow like exp(pi*kappa/2); only ratios of such
values enter the m-function formulas, so the scaled form keeps full relative
accuracy where plain values would overflow.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import (
    DomainError,
    GammaPoleError,
    OverflowRangeError,
    SeriesConvergenceError,
)

# Lanczos g=7, n=9 coefficient set; relative error ~1e-13 for Re z >= 1/2.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

#: largest |z| accepted by the J_nu power series (all pipeline arguments are
#: below ~2; the cap is purely defensive)
X_SERIES_MAX = 30.0

#: hard cap on series terms before declaring non-convergence
SERIES_TERM_CAP = 200

#: largest |Im nu| supported (keeps 1/Gamma(1+nu) inside double range)
IM_NU_MAX = 200.0


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z via the Lanczos approximation.

    Reflection is used for Re z < 1/2.  Raises :class:`GammaPoleError` when z
    is within 1e-12 of a non-positive integer.
    """
    z = complex(z)
    if abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12 and round(z.real) <= 0:
        raise GammaPoleError(f"Gamma pole at z={z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    w = z - 1.0
    x = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        x += _LANCZOS_C[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (w + 0.5) * cmath.exp(-t) * x


def pochhammer(x: complex, n: int) -> complex:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise DomainError("pochhammer order n must be >= 0")
    out = complex(1.0)
    x = complex(x)
    for j in range(n):
        out *= x + j
    return out


def _series_ratio(nu: complex, z: complex) -> complex:
    """Sum_m (-1)^m (z/2)^{2m} / (m! (nu+1)_m); equals J_nu(z) / [(z/2)^nu / Gamma(nu+1)].

    Terms are built recursively, so neither (z/2)^{2m} nor Gamma(m+nu+1) is
    ever materialized.  Relative tail tolerance 1e-14, cap SERIES_TERM_CAP.
    """
    q = -(z / 2.0) ** 2
    term = complex(1.0)
    total = complex(1.0)
    for m in range(1, SERIES_TERM_CAP + 1):
        term *= q / (m * (m + nu))
        total += term
        if abs(term) < 1e-14 * max(abs(total), 1e-300):
            return total
    raise SeriesConvergenceError(
        f"J series did not converge for nu={nu}, z={z} within {SERIES_TERM_CAP} terms"
    )


def bessel_j_scaled(nu: complex, z: complex) -> tuple[complex, complex, complex]:
    """Scaled Bessel values: returns (L, S, Sd) with

        J_nu(z)  = exp(L) * S,      J'_nu(z) = exp(L) * Sd,
        L = nu*log(z/2) - log Gamma(nu+1)   (principal logs).

    Safe for |Im nu| up to IM_NU_MAX where plain values overflow in products.
    """
    nu = complex(nu)
    z = complex(z)
    if z == 0:
        raise DomainError("bessel_j_scaled requires z != 0")
    if abs(z) > X_SERIES_MAX:
        raise DomainError(f"|z|={abs(z):.3g} exceeds series limit {X_SERIES_MAX}")
    if abs(nu.imag) > IM_NU_MAX:
        raise DomainError(f"|Im nu|={abs(nu.imag):.3g} exceeds {IM_NU_MAX}")
    L = nu * cmath.log(z / 2.0) - cmath.log(gamma_complex(nu + 1.0))
    s = _series_ratio(nu, z)
    if nu == 0:
        # J'_0 = -J_1; the generic route below divides by (m + nu - 1) = 0
        sd = -(z / 2.0) * _series_ratio(1.0, z)
    else:
        # J_{nu-1} shares the exponent up to exp(log(nu) - log(z/2)):
        #   J'_nu = J_{nu-1} - (nu/z) J_nu = exp(L) [ (2 nu / z) S_{nu-1} - (nu/z) S ]
        s1 = _series_ratio(nu - 1.0, z)
        sd = (2.0 * nu / z) * s1 - (nu / z) * s
    return L, s, sd


def bessel_j_complex_order(nu: complex, x: complex) -> tuple[complex, complex]:
    """J_nu(x) and J'_nu(x) by power series, complex order nu.

    The public contract is real x > 0; complex x is accepted for analytic
    continuation (principal branch of (x/2)^nu).  Raises
    :class:`DomainError` for x == 0 or |x| beyond X_SERIES_MAX.
    """
    xc = complex(x)
    if xc.imag == 0.0 and xc.real <= 0.0:
        raise DomainError("bessel_j_complex_order requires x > 0 on the real axis")
    L, s, sd = bessel_j_scaled(nu, xc)
    scale = cmath.exp(L)
    if not (math.isfinite(scale.real) and math.isfinite(scale.imag)):
        raise OverflowRangeError(f"J_nu overflow for nu={nu}, x={x}; use bessel_j_scaled")
    return scale * s, scale * sd


def _spherical_jy(l: int, x: float) -> tuple[float, float, float, float]:
    """Spherical Bessel j_l, y_l and derivatives at real x > 0.

    j_l by Miller's downward recurrence (upward is unstable for l > x),
    y_l by upward recurrence (stable).  Returns (j, jp, y, yp).
    """
    if x <= 0.0:
        raise DomainError("spherical Bessel requires x > 0")
    sx, cx = math.sin(x), math.cos(x)
    j0 = sx / x
    y0 = -cx / x
    y1 = -cx / x**2 - sx / x
    if l == 0:
        return j0, cx / x - sx / x**2, y0, sx / x + cx / x**2
    # upward for y_l
    ym, yc = y0, y1
    for n in range(1, l):
        ym, yc = yc, (2 * n + 1) / x * yc - ym
        if abs(yc) > 1e280:
            raise OverflowRangeError(f"y_{n+1}({x}) overflows; l*x combination too extreme")
    yl, ylm1 = yc, ym  # y_l and y_{l-1}
    ylp = ylm1 - (l + 1) / x * yl
    # downward (Miller) for j_l
    start = l + 22 + int(1.5 * x)
    jp1, jc = 0.0, 1e-280
    jl_un = 0.0
    jlm1_un = 0.0
    j0_un = 0.0
    j1_un = 0.0
    for n in range(start, -1, -1):
        jm1 = (2 * n + 3) / x * jc - jp1
        jp1, jc = jc, jm1
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp1 *= 1e-250
            jl_un *= 1e-250
            jlm1_un *= 1e-250
            j0_un *= 1e-250
            j1_un *= 1e-250
        if n == l:
            jl_un = jc
        if n == l - 1:
            jlm1_un = jc
        if n == 1:
            j1_un = jc
        if n == 0:
            j0_un = jc
    # normalize against whichever closed form is better conditioned
    j1 = sx / x**2 - cx / x
    if abs(j0) >= abs(j1):
        scale = j0 / j0_un
    else:
        scale = j1 / j1_un
    jl = jl_un * scale
    if l >= 1:
        jlm1 = jlm1_un * scale
    else:
        jlm1 = j0
    jlp = jlm1 - (l + 1) / x * jl
    if not all(map(math.isfinite, (jl, jlp, yl, ylp))):
        raise OverflowRangeError(f"spherical Bessel over/underflow at l={l}, x={x}")
    return jl, jlp, yl, ylp


def cyl_bessel_half_integer(l: int, x: float) -> tuple[float, float, float, float]:
    """Cylinder Bessel functions of order l+1/2 at real x > 0.

    Returns (J, Y, Jp, Yp) where primes are derivatives with respect to x.
    Uses J_{l+1/2}(x) = sqrt(2x/pi) j_l(x) and the spherical recurrences.
    """
    if l < 0 or l > 100:
        raise DomainError("order l must satisfy 0 <= l <= 100")
    j, jp, y, yp = _spherical_jy(l, float(x))
    f = math.sqrt(2.0 * x / math.pi)
    g = 0.5 / x  # d/dx log sqrt(x)
    J = f * j
    Y = f * y
    Jp = f * (jp + g * j)
    Yp = f * (yp + g * y)
    return J, Y, Jp, Yp
