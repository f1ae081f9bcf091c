"""Radial potential models, the exponential variable change, and the
transformed half-line potential.

All potentials vanish identically beyond the truncation radius ``a``.  The
variable change r = a*exp(-x) maps (0, a] onto [0, inf) and carries a radial
potential q(r) at wavenumber k into

    Q(x) = r^2 (q(r) - k^2),   r = a e^{-x},

which decays like e^{-2x} whenever q is bounded (or 1/r at the origin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ProblemSetup:
    """Shared geometry: truncation radius ``a`` and fixed wavenumber ``k``."""

    a: float
    k: float

    def __post_init__(self):
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise DomainError("truncation radius a must be positive and finite")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError("wavenumber k must be positive and finite")


def r_of_x(x: float, setup: ProblemSetup) -> float:
    """r = a e^{-x} for x >= 0."""
    if x < 0.0:
        raise DomainError("x must be >= 0")
    return setup.a * math.exp(-x)


def x_of_r(r: float, setup: ProblemSetup) -> float:
    """x = -log(r/a) for r in (0, a]."""
    if not 0.0 < r <= setup.a:
        raise DomainError(f"r must lie in (0, a]; got r={r}, a={setup.a}")
    return -math.log(r / setup.a)


class Potential:
    """Base class for radial potentials supported on (0, a]."""

    def evaluate(self, r: float, setup: ProblemSetup) -> float:
        raise NotImplementedError

    def breakpoints(self, setup: ProblemSetup) -> tuple[float, ...]:
        """Interior radii where q is non-smooth (integration is split there)."""
        return ()

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantPotential(Potential):
    """q(r) = q0 for r <= a, 0 beyond."""

    q0: float

    def evaluate(self, r, setup):
        if r > setup.a:
            return 0.0
        return self.q0

    def describe(self):
        return f"constant q0={self.q0:g}"


@dataclass(frozen=True)
class StepPotential(Potential):
    """q = q1 for r < r0, q2 for r0 <= r <= a, 0 beyond.

    The discontinuity at r0 carries the outer value q2 (a measure-zero
    convention fixed for deterministic tests).
    """

    q1: float
    q2: float
    r0: float

    def evaluate(self, r, setup):
        if not 0.0 < self.r0 < setup.a:
            raise DomainError("step radius must satisfy 0 < r0 < a")
        if r > setup.a:
            return 0.0
        if r < self.r0:
            return self.q1
        return self.q2

    def breakpoints(self, setup):
        if not 0.0 < self.r0 < setup.a:
            raise DomainError("step radius must satisfy 0 < r0 < a")
        return (self.r0,)

    def describe(self):
        return f"step q1={self.q1:g} q2={self.q2:g} r0={self.r0:g}"


@dataclass(frozen=True)
class ShiftedCoulombPotential(Potential):
    """q(r) = A/r - A/a on (0, a], 0 beyond (continuous at r = a)."""

    A: float

    def evaluate(self, r, setup):
        if r > setup.a:
            return 0.0
        if r <= 0.0:
            raise DomainError("r must be positive")
        return self.A / r - self.A / setup.a

    def describe(self):
        return f"shifted-coulomb A={self.A:g}"


@dataclass(frozen=True)
class TabulatedPotential(Potential):
    """Linear interpolation through (r_i, q_i) nodes; 0 outside the node range.

    Nodes must be strictly increasing and lie in (0, a].
    """

    r_nodes: tuple[float, ...]
    q_nodes: tuple[float, ...]

    def __post_init__(self):
        r = np.asarray(self.r_nodes, dtype=float)
        q = np.asarray(self.q_nodes, dtype=float)
        if r.ndim != 1 or r.size < 2 or r.shape != q.shape:
            raise DomainError("tabulated potential needs matching 1-D node arrays (>= 2 nodes)")
        if not np.all(np.diff(r) > 0.0):
            raise DomainError("tabulated r nodes must be strictly increasing")
        if r[0] <= 0.0:
            raise DomainError("tabulated r nodes must be positive")
        object.__setattr__(self, "r_nodes", tuple(float(v) for v in r))
        object.__setattr__(self, "q_nodes", tuple(float(v) for v in q))

    def evaluate(self, r, setup):
        if self.r_nodes[-1] > setup.a + 1e-12 * setup.a:
            raise DomainError("tabulated nodes must lie within (0, a]")
        if r > setup.a:
            return 0.0
        if r < self.r_nodes[0] or r > self.r_nodes[-1]:
            return 0.0
        return float(np.interp(r, self.r_nodes, self.q_nodes))

    def breakpoints(self, setup):
        return tuple(rn for rn in self.r_nodes if 0.0 < rn < setup.a)

    def describe(self):
        return f"tabulated ({len(self.r_nodes)} nodes)"


def eval_q(q: Potential, r: float, setup: ProblemSetup) -> float:
    """Evaluate a potential at radius r > 0 (exactly 0 for r > a)."""
    if r <= 0.0:
        raise DomainError("r must be positive")
    return q.evaluate(r, setup)


@dataclass(frozen=True)
class TransformedPotential:
    """The half-line potential Q(x) = r^2 (q(r) - k^2), r = a e^{-x}.

    For the constant potential Q(x) = -s e^{-2x} with s = a^2 (k^2 - q0);
    for the step, the analogous (s1, s2) strengths and the matching point
    x0 = -log(r0/a) are exposed.  |Q(x)| <= a^2 e^{-2x} (sup|q| + k^2).
    """

    potential: Potential
    setup: ProblemSetup
    s: float | None = None
    s1: float | None = None
    s2: float | None = None
    x0: float | None = None
    breakpoints_x: tuple[float, ...] = field(default=())

    def __call__(self, x: float) -> float:
        r = r_of_x(x, self.setup)
        return r * r * (eval_q(self.potential, r, self.setup) - self.setup.k**2)


def liouville_forward(q: Potential, setup: ProblemSetup) -> TransformedPotential:
    """Map a radial potential to its half-line image Q(x)."""
    a, k = setup.a, setup.k
    bx = tuple(sorted(x_of_r(r0, setup) for r0 in q.breakpoints(setup)))
    if isinstance(q, ConstantPotential):
        return TransformedPotential(q, setup, s=a * a * (k * k - q.q0))
    if isinstance(q, StepPotential):
        return TransformedPotential(
            q,
            setup,
            s1=a * a * (k * k - q.q1),
            s2=a * a * (k * k - q.q2),
            x0=x_of_r(q.r0, setup),
            breakpoints_x=bx,
        )
    return TransformedPotential(q, setup, breakpoints_x=bx)


def load_potential_table(path) -> TabulatedPotential:
    """Read a two-column whitespace-separated "r q" file; '#' starts a comment."""
    rs, qs = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise DomainError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
            try:
                rs.append(float(parts[0]))
                qs.append(float(parts[1]))
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: non-numeric entry") from exc
    return TabulatedPotential(tuple(rs), tuple(qs))
