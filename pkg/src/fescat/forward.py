"""Forward fixed-energy scattering: phase shifts for a truncated potential.

The radial equation

    u'' = [ l(l+1)/r^2 + q(r) - k^2 ] u,      u(r) ~ r^{l+1} at the origin,

is integrated with a fixed-step classical Runge-Kutta scheme from
r_min = 1e-6 a out to the truncation radius a, splitting the march at any
interior breakpoints of q so the fourth order survives discontinuities.
The phase shift follows from log-derivative matching to the free exterior,

    tan(delta_l) = (u_l'(ka) - C u_l(ka)) / (v_l'(ka) - C v_l(ka)),

with u_l(p) = p j_l(p), v_l(p) = p y_l(p) and C = u'(a)/(k u(a)).  With this
pairing the exterior wave is proportional to
J_{l+1/2}(kr) - tan(delta_l) Y_{l+1/2}(kr) (times sqrt(r)), a small
attractive well gives delta_0 > 0, and delta is reduced to (-pi/2, pi/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegrationError
from .potentials import Potential, ProblemSetup, eval_q
from .specfun import _spherical_jy

#: default number of RK4 steps across [r_min, a]
DEFAULT_STEPS = 4000

#: starting radius as a fraction of a (leading power behavior is exact there)
R_MIN_FACTOR = 1e-6


@dataclass(frozen=True)
class PhaseShiftSet:
    """Phase shifts delta_l (radians), l = 0..l_max, at one wavenumber."""

    k: float
    a: float
    deltas: tuple[float, ...]

    @property
    def l_max(self) -> int:
        return len(self.deltas) - 1


def _integrate_log_derivative(q: Potential, setup: ProblemSetup, l: int, n_steps: int):
    """March u, u' to r = a; returns (u(a), u'(a)) up to a common scale."""
    a = setup.a
    k2 = setup.k**2
    ll1 = float(l * (l + 1))

    def rhs(r, u, up):
        return up, (ll1 / (r * r) + eval_q(q, r, setup) - k2) * u

    r_min = R_MIN_FACTOR * a
    pts = [r_min] + [b for b in sorted(q.breakpoints(setup)) if r_min < b < a] + [a]
    # start on the regular branch; absolute scale is irrelevant for u'/u
    u = r_min ** (l + 1)
    up = (l + 1) * r_min**l
    span = a - r_min
    for r0, r1 in zip(pts[:-1], pts[1:]):
        n = max(2, int(round(n_steps * (r1 - r0) / span)))
        h = (r1 - r0) / n
        # the closing stage must see the left limit of q at a breakpoint
        # (eval_q is right-closed there), so step one ulp inside
        r_close = math.nextafter(r1, r0)
        for i in range(n):
            # nodes by multiplication; the segment end is pinned exactly so no
            # stage ever samples q past a breakpoint or the cutoff radius
            r = r0 + i * h
            r_end = r_close if i == n - 1 else r0 + (i + 1) * h
            r_mid = 0.5 * (r + r_end)
            k1u, k1p = rhs(r, u, up)
            k2u, k2p = rhs(r_mid, u + 0.5 * h * k1u, up + 0.5 * h * k1p)
            k3u, k3p = rhs(r_mid, u + 0.5 * h * k2u, up + 0.5 * h * k2p)
            k4u, k4p = rhs(r_end, u + h * k3u, up + h * k3p)
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            up += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        scale = max(abs(u), abs(up))
        if scale > 1e250:
            u /= scale
            up /= scale
        if not (math.isfinite(u) and math.isfinite(up)):
            raise IntegrationError(f"radial integration diverged at l={l}")
    return u, up


def _delta_from_match(L_over_k: float, l: int, rho: float) -> float:
    """Principal-branch delta from the interior log derivative C = u'/(k u)."""
    j, jp, y, yp = _spherical_jy(l, rho)
    u_l = rho * j
    v_l = rho * y
    up_l = j + rho * jp
    vp_l = y + rho * yp
    return math.atan((up_l - L_over_k * u_l) / (vp_l - L_over_k * v_l))


def phase_shift(q: Potential, setup: ProblemSetup, l: int, n_steps: int = DEFAULT_STEPS) -> float:
    """Phase shift delta_l in (-pi/2, pi/2] for the given potential."""
    if l < 0:
        raise DomainError("l must be >= 0")
    u, up = _integrate_log_derivative(q, setup, l, n_steps)
    if abs(u) <= 1e-12 * max(abs(up) * setup.a, 1e-300):
        # u(a) at a node: the log derivative has a pole there; match just
        # inside instead (q != 0 there shifts delta by O(1e-6), well under
        # the solver's quoted accuracy)
        setup_in = ProblemSetup(a=setup.a * (1.0 - 1e-6), k=setup.k)
        u, up = _integrate_log_derivative(q, setup_in, l, n_steps)
        if abs(u) <= 1e-12 * max(abs(up) * setup.a, 1e-300):
            raise IntegrationError(f"u(a) vanished twice for l={l}; cannot match")
        C = up / (setup.k * u)
        return _delta_from_match(C, l, setup.k * setup_in.a)
    C = up / (setup.k * u)
    return _delta_from_match(C, l, setup.k * setup.a)


def phase_shift_set(
    q: Potential, setup: ProblemSetup, l_max: int, n_steps: int = DEFAULT_STEPS
) -> PhaseShiftSet:
    """delta_l for l = 0..l_max (independent radial integrations)."""
    if l_max < 0:
        raise DomainError("l_max must be >= 0")
    deltas = []
    for l in range(l_max + 1):
        try:
            deltas.append(phase_shift(q, setup, l, n_steps))
        except IntegrationError as exc:
            raise IntegrationError(f"l={l}: {exc}") from exc
    return PhaseShiftSet(k=setup.k, a=setup.a, deltas=tuple(deltas))


def load_shift_file(path) -> list[tuple[int, float]]:
    """Parse an "l delta" two-column text file; '#' starts a comment."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise DomainError(f"{path}:{lineno}: expected 'l delta', got {len(parts)} columns")
            try:
                rows.append((int(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: non-numeric entry") from exc
    if not rows:
        raise DomainError(f"{path}: no data rows")
    rows.sort(key=lambda t: t[0])
    ls = [r[0] for r in rows]
    if ls != list(range(len(ls))):
        raise DomainError(f"{path}: l values must be contiguous from 0")
    return rows


def shiftset_from_file(path, setup: ProblemSetup) -> PhaseShiftSet:
    rows = load_shift_file(path)
    return PhaseShiftSet(k=setup.k, a=setup.a, deltas=tuple(d for _, d in rows))
