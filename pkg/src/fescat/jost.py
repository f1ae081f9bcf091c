"""Jost-function modulus and the scattering phase of the half-line problem.

Two routes to the s-wave phase Delta(kappa) of the transformed potential:

* the dispersion relation.  |f+(kappa)|^2 = kappa / Im m(kappa^2) gives the
  modulus; with g = log|f+| the phase follows from the principal-value
  integral, folded onto [0, inf) by evenness of |f+| and desingularized by
  subtracting g(kappa) (the subtracted term integrates to zero exactly):

      Delta(k) = (2k/pi) int_0^inf [g(t) - g(k)] / (t^2 - k^2) dt .

  The integral is truncated at T and closed with a fitted g ~ c1/t + c2/t^2
  tail (log|f+| of an exponentially decaying potential falls off like 1/t^2,
  so the two-term model is essentially exact there).

* closed forms for the constant and step profiles, evaluated through the
  reflection ratio S(kappa) = conj(f+)/f+ and unwrapped downward from
  kappa_max where Delta ~ A1/kappa -> 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BranchError, NonHerglotzError, TailFitError
from .mfunction import WeylM, _pairs_sum
from .specfun import bessel_j_scaled, gamma_complex

#: default |f+|^2 floor substituted where an interpolated m turns non-Herglotz
CLAMP_FLOOR = 1e-6


@dataclass(frozen=True)
class PhaseFunctionGrid:
    """Delta(kappa) on an increasing grid plus a fitted 1/kappa tail.

    ``tail_coeff`` is the leading coefficient A1 in
    Delta ~ A1/kappa + A3/kappa^3 + A5/kappa^5; the subleading pair is kept
    for the oscillatory tail closure of the Fourier step.  ``clamped`` lists
    (lo, hi) kappa intervals where the modulus had to be floored.
    """

    kappa: np.ndarray
    delta: np.ndarray
    tail_coeff: float
    tail_coeff3: float = 0.0
    tail_coeff5: float = 0.0
    clamped: tuple[tuple[float, float], ...] = ()

    @property
    def kappa_max(self) -> float:
        return float(self.kappa[-1])


def default_kappa_grid(kappa_max: float = 60.0, n: int = 600) -> np.ndarray:
    """Geometric nodes on [1e-3, 1), uniform on [1, kappa_max]; n total."""
    n_geo = n // 5
    geo = np.geomspace(1e-3, 1.0, n_geo, endpoint=False)
    uni = np.linspace(1.0, kappa_max, n - n_geo)
    return np.concatenate([geo, uni])


def jost_modulus_sq(m: WeylM, kappa: float) -> float:
    """|f+(kappa)|^2 = kappa / Im m(kappa^2); raises if m is not Herglotz there."""
    if kappa <= 0.0:
        raise BranchError("kappa must be positive")
    im = m.evaluate(kappa * kappa).imag
    if im <= 0.0:
        raise NonHerglotzError(f"Im m(kappa^2) = {im:g} <= 0 at kappa={kappa:g}")
    return kappa / im


def _gauss_panels(edges: np.ndarray, npts: int) -> tuple[np.ndarray, np.ndarray]:
    xg, wg = np.polynomial.legendre.leggauss(npts)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def fit_phase_tail(kappa: np.ndarray, delta: np.ndarray) -> tuple[float, float, float]:
    """Least-squares fit of kappa*Delta = A1 + A3/kappa^2 + A5/kappa^4 on the last decade."""
    mask = kappa >= kappa[-1] / 10.0
    kk = kappa[mask]
    design = np.vstack([np.ones_like(kk), kk**-2, kk**-4]).T
    coef, *_ = np.linalg.lstsq(design, kk * delta[mask], rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def phase_from_dispersion(
    m: WeylM,
    kappa_grid: np.ndarray | None = None,
    kappa_max: float = 60.0,
    t_factor: float = 3.0,
    clamp_floor: float = CLAMP_FLOOR,
    panel_points: int = 16,
) -> PhaseFunctionGrid:
    """Delta(kappa) on the grid from the modulus-only dispersion integral.

    Non-Herglotz points of ``m`` (possible for interpolated data) are floored
    at ``clamp_floor`` and reported in the result's ``clamped`` intervals
    rather than raised, since the sampled-data route must tolerate them.
    """
    kg = default_kappa_grid(kappa_max) if kappa_grid is None else np.asarray(kappa_grid, float)
    T = t_factor * kg[-1]
    edges = np.concatenate(
        [
            np.arange(0.0, 2.0, 0.25),
            np.arange(2.0, 10.0, 0.5),
            np.arange(10.0, T, 1.0),
            [T],
        ]
    )
    t_nodes, t_weights = _gauss_panels(edges, panel_points)

    clamped_pts: list[float] = []

    def g_of(k: float) -> float:
        im = m.evaluate(k * k).imag
        f2 = k / im if im > 0.0 else clamp_floor
        if im <= 0.0:
            clamped_pts.append(k)
        if f2 < clamp_floor:
            f2 = clamp_floor
        return 0.5 * math.log(f2)

    g_t = np.array([g_of(t) for t in t_nodes])
    g_k = np.array([g_of(k) for k in kg])

    # tail model g ~ c1/t + c2/t^2 fitted on [T/2, T]
    mask = t_nodes >= T / 2.0
    design = np.vstack([1.0 / t_nodes[mask], t_nodes[mask] ** -2]).T
    (c1, c2), *_ = np.linalg.lstsq(design, g_t[mask], rcond=None)
    mid_scale = np.max(np.abs(g_t[(t_nodes >= 1.0) & (t_nodes <= T / 2.0)])) + 1e-300
    if abs(c1) > 10.0 * mid_scale:
        raise TailFitError(
            f"fitted tail coefficient {c1:g} exceeds 10x the mid-grid scale {mid_scale:g}"
        )

    delta = np.empty_like(kg)
    denom = np.subtract.outer(-(kg**2), -(t_nodes**2))  # t^2 - k^2 per (k, t)
    for i, k in enumerate(kg):
        integrand = (g_t - g_k[i]) / denom[i]
        head = float(t_weights @ integrand)
        log_ratio = math.log((T + k) / (T - k)) / (2.0 * k)
        tail = (
            -c1 / (2.0 * k * k) * math.log1p(-((k / T) ** 2))
            + c2 / (k * k) * (log_ratio - 1.0 / T)
            - g_k[i] * log_ratio
        )
        delta[i] = (2.0 * k / math.pi) * (head + tail)

    A1, A3, A5 = fit_phase_tail(kg, delta)
    return PhaseFunctionGrid(
        kappa=kg,
        delta=delta,
        tail_coeff=A1,
        tail_coeff3=A3,
        tail_coeff5=A5,
        clamped=_intervals(clamped_pts),
    )


def _intervals(points: list[float]) -> tuple[tuple[float, float], ...]:
    """Collapse a point cloud into (lo, hi) intervals (gap > 20% splits)."""
    if not points:
        return ()
    pts = sorted(points)
    out = []
    lo = hi = pts[0]
    for p in pts[1:]:
        if p <= hi * 1.2 + 1e-12:
            hi = p
        else:
            out.append((lo, hi))
            lo = hi = p
    out.append((lo, hi))
    return tuple(out)


# ---------------------------------------------------------------------------
# closed forms: reflection ratio S(kappa) = conj(f+)/f+ = e^{2i Delta}
# ---------------------------------------------------------------------------


def _log_reflection_constant(s: float, kappa: float) -> complex:
    """log S for Q = -s e^{-2x}: S = (sqrt(s)/2)^{-2ik} G(1+ik) J_{ik} / (G(1-ik) J_{-ik})."""
    rs = cmath.sqrt(complex(s))
    Lp, Sp, _ = bessel_j_scaled(1j * kappa, rs)
    Lm, Sm, _ = bessel_j_scaled(-1j * kappa, rs)
    return (
        -2j * kappa * cmath.log(rs / 2.0)
        + cmath.log(gamma_complex(1.0 + 1j * kappa))
        - cmath.log(gamma_complex(1.0 - 1j * kappa))
        + (Lp - Lm)
        + cmath.log(Sp / Sm)
    )


def _log_reflection_step(s1: float, s2: float, x0: float, kappa: float) -> complex:
    """log S for the two-region profile; S = -P H with interface Wronskians at e^{-x0}."""
    t0 = math.exp(-x0)
    rs1 = cmath.sqrt(complex(s1))
    rs2 = cmath.sqrt(complex(s2))
    p, mo = 1j * kappa, -1j * kappa
    L1p, S1p, S1pd = bessel_j_scaled(p, rs1 * t0)
    L1m, S1m, S1md = bessel_j_scaled(mo, rs1 * t0)
    L2p, S2p, S2pd = bessel_j_scaled(p, rs2 * t0)
    L2m, S2m, S2md = bessel_j_scaled(mo, rs2 * t0)
    L2p1, S2p1, _ = bessel_j_scaled(p, rs2)
    L2m1, S2m1, _ = bessel_j_scaled(mo, rs2)

    def wsc(La, Sa, Sda, Lb, Sb, Sdb):
        return (La + Lb, Sa * rs2 * Sdb - rs1 * Sda * Sb)

    w_pp = wsc(L1p, S1p, S1pd, L2p, S2p, S2pd)
    w_pm = wsc(L1p, S1p, S1pd, L2m, S2m, S2md)
    w_mm = wsc(L1m, S1m, S1md, L2m, S2m, S2md)
    w_mp = wsc(L1m, S1m, S1md, L2p, S2p, S2pd)
    Ln, num = _pairs_sum([(L2m1 + w_pp[0], S2m1 * w_pp[1]), (L2p1 + w_pm[0], -S2p1 * w_pm[1])])
    Ld, den = _pairs_sum([(L2p1 + w_mm[0], S2p1 * w_mm[1]), (L2m1 + w_mp[0], -S2m1 * w_mp[1])])
    log_p = (
        -2j * kappa * cmath.log(rs1 / 2.0)
        + cmath.log(gamma_complex(1.0 + 1j * kappa))
        - cmath.log(gamma_complex(1.0 - 1j * kappa))
    )
    return 1j * math.pi + log_p + (Ln - Ld) + cmath.log(num / den)


def _delta_principal(log_s: complex, realness_tol: float = 1e-8) -> float:
    """Delta = Im(log S)/2; |S| must be 1 to within the realness tolerance."""
    if abs(log_s.real) > 2.0 * realness_tol:
        raise BranchError(f"|S| deviates from 1 by exp({log_s.real:g}); phase is not real")
    half = 0.5 * log_s.imag
    # reduce to (-pi/2, pi/2]
    while half > math.pi / 2.0:
        half -= math.pi
    while half <= -math.pi / 2.0:
        half += math.pi
    return half


def analytic_delta_constant(s: float, kappa: float) -> float:
    """Principal-branch Delta(kappa) for Q = -s e^{-2x} (exactly 0 for s = 0)."""
    if s == 0.0:
        return 0.0
    return _delta_principal(_log_reflection_constant(s, kappa))


def analytic_delta_step(s1: float, s2: float, x0: float, kappa: float) -> float:
    """Principal-branch Delta(kappa) for the two-region exponential profile."""
    if s1 == s2:
        return analytic_delta_constant(s1, kappa)
    return _delta_principal(_log_reflection_step(s1, s2, x0, kappa))


def unwrap_downward(delta_principal: np.ndarray) -> np.ndarray:
    """Resolve the mod-pi ambiguity by continuity, anchored at Delta(kappa_max) ~ 0."""
    out = np.array(delta_principal, dtype=float)
    out[-1] -= round(out[-1] / math.pi) * math.pi
    for i in range(len(out) - 2, -1, -1):
        out[i] += round((out[i + 1] - out[i]) / math.pi) * math.pi
    return out


def phase_grid_constant(s: float, kappa_grid: np.ndarray | None = None,
                        kappa_max: float = 60.0) -> PhaseFunctionGrid:
    """Unwrapped closed-form phase grid for the constant profile."""
    kg = default_kappa_grid(kappa_max) if kappa_grid is None else np.asarray(kappa_grid, float)
    raw = np.array([analytic_delta_constant(s, k) for k in kg])
    delta = unwrap_downward(raw)
    A1, A3, A5 = fit_phase_tail(kg, delta)
    return PhaseFunctionGrid(kg, delta, A1, A3, A5)


def phase_grid_step(s1: float, s2: float, x0: float, kappa_grid: np.ndarray | None = None,
                    kappa_max: float = 60.0) -> PhaseFunctionGrid:
    """Unwrapped closed-form phase grid for the step profile."""
    kg = default_kappa_grid(kappa_max) if kappa_grid is None else np.asarray(kappa_grid, float)
    raw = np.array([analytic_delta_step(s1, s2, x0, k) for k in kg])
    delta = unwrap_downward(raw)
    A1, A3, A5 = fit_phase_tail(kg, delta)
    return PhaseFunctionGrid(kg, delta, A1, A3, A5)
