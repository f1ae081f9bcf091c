"""m-function tests.

The independent oracle integrates the half-line equation
-y'' + Q y = lam y downward from x = 40 with the recessive/outgoing seed
y = exp(i sqrt(lam) x) and forms y'(0)/y(0); it never touches the Bessel
closed forms it is checking.
"""

import cmath
import math

import numpy as np
import pytest

from fescat.errors import DenominatorError, DomainError
from fescat.forward import phase_shift_set
from fescat.mfunction import (
    ConstantWeylM,
    InterpolatedWeylM,
    MSamples,
    StepWeylM,
    m_from_phase_shift,
    msamples_from_phase_shifts,
    sqrt_lambda,
)
from fescat.potentials import ConstantPotential, ProblemSetup
from fescat.specfun import cyl_bessel_half_integer


def m_ode_oracle(Qfun, lam, x_start=40.0, n=160000):
    """Log-derivative at 0 of the solution seeded as exp(i sqrt(lam) x)."""
    sl = sqrt_lambda(lam)
    h = x_start / n

    def rhs(x, y0, y1):
        return y1, (Qfun(x) - lam) * y0

    y0 = cmath.exp(1j * sl * x_start)
    y1 = 1j * sl * y0
    for i in range(n):
        x = x_start - i * h
        k10, k11 = rhs(x, y0, y1)
        k20, k21 = rhs(x - 0.5 * h, y0 - 0.5 * h * k10, y1 - 0.5 * h * k11)
        k30, k31 = rhs(x - 0.5 * h, y0 - 0.5 * h * k20, y1 - 0.5 * h * k21)
        k40, k41 = rhs(x - h, y0 - h * k30, y1 - h * k31)
        y0 -= h / 6.0 * (k10 + 2 * k20 + 2 * k30 + k40)
        y1 -= h / 6.0 * (k11 + 2 * k21 + 2 * k31 + k41)
    return y1 / y0


class TestBranch:
    def test_negative_axis_from_above(self):
        for w in (0.5, 1.5, 7.0):
            assert sqrt_lambda(-(w**2)) == pytest.approx(1j * w)
            assert (-1j * sqrt_lambda(-(w**2))).real == pytest.approx(w)

    def test_positive_axis(self):
        assert sqrt_lambda(4.0) == pytest.approx(2.0)


class TestSampleFormula:
    def test_free_reduction(self):
        setup = ProblemSetup(a=1.0, k=1.0)
        J, Y, Jp, Yp = cyl_bessel_half_integer(0, 1.0)
        assert m_from_phase_shift(0.0, 0, setup) == pytest.approx(-1.0 * Jp / J, rel=1e-13)

    @pytest.mark.parametrize("a,k", [(0.75, 1.0), (1.0, 1.0), (2.0, 1.0)])
    def test_free_data_matches_constant_m(self, a, k):
        # with delta = 0 the boundary data must equal the closed form for
        # the free potential's transform, s = (ak)^2, at every node
        setup = ProblemSetup(a=a, k=k)
        rep = ConstantWeylM(s=a * a * k * k)
        for l in range(11):
            lhs = m_from_phase_shift(0.0, l, setup)
            rhs_ = rep.evaluate(-((l + 0.5) ** 2))
            assert abs(lhs - rhs_) <= 1e-9 * abs(rhs_)

    def test_forward_solver_closes_the_loop(self):
        # shifts computed for a constant well reproduce its closed-form m
        setup = ProblemSetup(a=0.75, k=1.0)
        shifts = phase_shift_set(ConstantPotential(0.5), setup, 6)
        samples = msamples_from_phase_shifts(shifts.deltas, setup)
        rep = ConstantWeylM(s=0.28125)
        for l, v in enumerate(samples.values):
            assert v == pytest.approx(rep.evaluate(-((l + 0.5) ** 2)).real, abs=1e-10)

    def test_denominator_guard(self):
        setup = ProblemSetup(a=1.0, k=1.0)
        J, Y, _, _ = cyl_bessel_half_integer(0, 1.0)
        bad_delta = math.atan(J / Y)  # makes J - tan(d) Y = 0
        with pytest.raises(DenominatorError):
            m_from_phase_shift(bad_delta, 0, setup)


class TestConstantForm:
    def test_zero_strength_is_free(self):
        rep = ConstantWeylM(s=0.0)
        lam = 2.0 + 0.3j
        assert rep.evaluate(lam) == pytest.approx(1j * sqrt_lambda(lam))

    @pytest.mark.parametrize("lam", [1.0, 2.0, -2.25, 0.5 + 0.5j])
    def test_against_ode_oracle(self, lam):
        s = 0.28125
        rep = ConstantWeylM(s=s)
        oracle = m_ode_oracle(lambda x: -s * math.exp(-2 * x), lam)
        assert abs(rep.evaluate(lam) - oracle) < 5e-10

    def test_negative_strength_against_oracle(self):
        s = -0.2
        rep = ConstantWeylM(s=s)
        oracle = m_ode_oracle(lambda x: 0.2 * math.exp(-2 * x), 1.0)
        assert abs(rep.evaluate(1.0) - oracle) < 5e-10

    def test_herglotz_on_grid(self):
        rep = ConstantWeylM(s=0.28125)
        for re in np.linspace(-10, 10, 9):
            for im in (0.1, 1.0, 5.0):
                assert rep.evaluate(complex(re, im)).imag > 0.0

    def test_real_below_spectrum(self):
        rep = ConstantWeylM(s=0.28125)
        assert abs(rep.evaluate(-4.0).imag) < 1e-13


class TestStepForm:
    S1, S2, X0 = -1.0, -0.5, math.log(2.0)

    def Q(self, x):
        return 0.5 * math.exp(-2 * x) if x <= self.X0 else 1.0 * math.exp(-2 * x)

    @pytest.mark.parametrize("lam", [1.0, 2.0, -2.25])
    def test_against_ode_oracle(self, lam):
        rep = StepWeylM(self.S1, self.S2, self.X0)
        # split the oracle march at the interface to keep it fourth order
        oracle = _step_oracle(self.S1, self.S2, self.X0, lam)
        assert abs(rep.evaluate(lam) - oracle) < 1e-9

    def test_degenerate_reduces_to_constant(self):
        rep = StepWeylM(0.28125, 0.28125, math.log(2.0))
        ref = ConstantWeylM(0.28125)
        for lam in (1.0, -2.25, 0.3 + 0.7j):
            assert abs(rep.evaluate(lam) - ref.evaluate(lam)) < 1e-12

    def test_schwarz_reflection(self):
        rep = StepWeylM(self.S1, self.S2, self.X0)
        lam = 1.0 + 0.5j
        assert rep.evaluate(lam.conjugate()) == pytest.approx(
            rep.evaluate(lam).conjugate(), rel=1e-12
        )

    def test_herglotz_on_grid(self):
        rep = StepWeylM(self.S1, self.S2, self.X0)
        for re in np.linspace(-10, 10, 7):
            for im in (0.1, 1.0, 5.0):
                assert rep.evaluate(complex(re, im)).imag > 0.0

    def test_large_kappa_no_overflow(self):
        rep = StepWeylM(self.S1, self.S2, self.X0)
        v = rep.evaluate(180.0**2)
        assert np.isfinite(v.real) and np.isfinite(v.imag)
        assert v.imag == pytest.approx(180.0, rel=1e-3)

    def test_interface_validation(self):
        with pytest.raises(DomainError):
            StepWeylM(-1.0, -0.5, 0.0)


def _step_oracle(s1, s2, x0, lam, x_start=40.0, n_per_unit=4000):
    sl = sqrt_lambda(lam)

    def rhs(Q, y0, y1):
        return y1, (Q - lam) * y0

    def march(Qfun, xa, xb, y0, y1):
        n = max(2, int(round((xa - xb) * n_per_unit)))
        h = (xa - xb) / n
        for i in range(n):
            x = xa - i * h
            xm = x - 0.5 * h
            xe = xb if i == n - 1 else x - h
            k10, k11 = rhs(Qfun(x), y0, y1)
            k20, k21 = rhs(Qfun(xm), y0 - 0.5 * h * k10, y1 - 0.5 * h * k11)
            k30, k31 = rhs(Qfun(xm), y0 - 0.5 * h * k20, y1 - 0.5 * h * k21)
            k40, k41 = rhs(Qfun(xe), y0 - h * k30, y1 - h * k31)
            y0 -= h / 6.0 * (k10 + 2 * k20 + 2 * k30 + k40)
            y1 -= h / 6.0 * (k11 + 2 * k21 + 2 * k31 + k41)
        return y0, y1

    y0 = cmath.exp(1j * sl * x_start)
    y1 = 1j * sl * y0
    y0, y1 = march(lambda x: -s1 * math.exp(-2 * x), x_start, x0, y0, y1)
    y0, y1 = march(lambda x: -s2 * math.exp(-2 * x), x0, 0.0, y0, y1)
    return y1 / y0


class TestInterpolated:
    def test_free_data_exact(self):
        samples = MSamples(tuple(-(l + 0.5) for l in range(11)))
        rep = InterpolatedWeylM(samples)
        for lam in (2.7, -4.0, 1.0 + 1.0j):
            assert rep.evaluate(lam) == pytest.approx(1j * sqrt_lambda(lam), abs=1e-14)

    def test_single_sample_reduction(self):
        # with one node the reconstruction is i sqrt(lam) + (m_0+1/2)/(1/2 - i sqrt(lam))
        m0 = -0.404
        rep = InterpolatedWeylM(MSamples((m0,)))
        lam = 3.1
        x = -1j * sqrt_lambda(lam)
        expected = 1j * sqrt_lambda(lam) + (m0 + 0.5) / (0.5 + x)
        assert rep.evaluate(lam) == pytest.approx(expected, rel=1e-14)

    def test_reproduces_every_node(self):
        ref = ConstantWeylM(0.28125)
        samples = ref.samples(10)
        rep = InterpolatedWeylM(samples)
        for j, v in enumerate(samples.values):
            got = rep.evaluate(-((j + 0.5) ** 2))
            assert got.real == pytest.approx(v, abs=1e-9)
            assert abs(got.imag) < 1e-10

    def test_positive_axis_accuracy_moderate_lmax(self):
        ref = ConstantWeylM(0.28125)
        rep = InterpolatedWeylM(ref.samples(10))
        for lam in (1.0, 4.0, 25.0):
            assert abs(rep.evaluate(lam) - ref.evaluate(lam)) < 0.01

    def test_large_lambda_returns_to_free(self):
        ref = ConstantWeylM(0.28125)
        rep = InterpolatedWeylM(ref.samples(10))
        lam = 400.0
        assert abs(rep.evaluate(lam) - 1j * sqrt_lambda(lam)) < 0.02

    def test_im_nonpositive_diagnostic(self):
        rep = InterpolatedWeylM(MSamples(tuple(-(l + 0.5) for l in range(4))))
        assert not rep.im_nonpositive(1.0)
