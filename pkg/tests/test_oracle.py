import math

import pytest

from lifshitz import feynman as fy
from lifshitz.errors import DomainError, QuadratureError
from lifshitz.oracle import QuadratureSpec, quad_i1m, quad_idm_m1, quad_jd, sphere_factor


class TestInner:
    def test_d1(self):
        r = quad_jd(1, 1.0, (0.5, 1.5))
        assert r.real == pytest.approx(fy.inner_j1(1.0, (0.5, 1.5)), rel=1e-10)
        assert r.abs_err < 1e-9

    def test_d2_p0(self):
        assert quad_jd(2, 0.0, (1, 1)).real == pytest.approx(1 / (4 * math.pi), rel=1e-10)

    def test_d3(self):
        assert quad_jd(3, 0.5, (1, 2)).real == pytest.approx(math.atan(1 / 6) / (2 * math.pi), rel=1e-9)

    def test_d3_one_massless(self):
        assert quad_jd(3, 1.0, (0, 2)).real == pytest.approx(math.atan(0.5) / (4 * math.pi), rel=1e-9)

    def test_explicit_cutoff_reports_slow_tail(self):
        # the D = 3 shell integrand falls off only like r^-2
        spec = QuadratureSpec(radial_cutoff_strategy="explicit-cutoff", rel_tol=1e-6, abs_tol=1e-9)
        with pytest.raises(QuadratureError):
            quad_jd(3, 0.5, (1, 2), spec)

    def test_bad_config(self):
        with pytest.raises(DomainError):
            quad_jd(2, 1.0, (0, 1))
        with pytest.raises(DomainError):
            quad_jd(4, 1.0, (1, 1))
        with pytest.raises(DomainError):
            QuadratureSpec(radial_cutoff_strategy="guess")


class TestMain:
    @pytest.mark.parametrize("m,p,q", [(3, 1, 1), (4, 1, 1), (5, 0.7, 1.3)])
    def test_closed_forms(self, m, p, q):
        r = quad_i1m(m, p, q)
        assert r.real == pytest.approx(fy.i1m((m, p, q)), rel=1e-7)
        assert r.real > 0

    def test_m4_reference(self):
        assert quad_i1m(4, 1, 1).real == pytest.approx(fy.i14_closed(1), rel=1e-7)

    def test_explicit_cutoff(self):
        spec = QuadratureSpec(radial_cutoff_strategy="explicit-cutoff")
        assert quad_i1m(3, 1, 1, spec).real == pytest.approx(fy.i1m((3, 1, 1)), rel=1e-7)

    def test_sphere_factor_m3(self):
        # 2 pi / (2 pi)^3
        assert sphere_factor(3) == pytest.approx(1 / (4 * math.pi**2))

    def test_halving_tolerance_is_stable(self):
        a = quad_i1m(3, 0.8, 1.4)
        b = quad_i1m(3, 0.8, 1.4, QuadratureSpec(abs_tol=5e-11, rel_tol=5e-9))
        assert abs(a.real - b.real) <= a.abs_err + b.abs_err

    def test_domain(self):
        with pytest.raises(DomainError):
            quad_i1m(6, 1, 1)
        with pytest.raises(DomainError):
            quad_i1m(3, 0, 1)


class TestM1:
    @pytest.mark.parametrize("q", [0.0, 0.5, 1.5])
    def test_i21(self, q):
        assert quad_idm_m1(2, 1, q).real == pytest.approx(fy.i21_closed(q), rel=1e-8)

    @pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
    def test_i31(self, q):
        assert quad_idm_m1(3, 1, q).real == pytest.approx(fy.i31_closed(q), rel=1e-8)
