"""The anisotropic two-denominator integral I_{1,m}(p, q) and its inner integrals.

Notation: D is the dimension of the inner x-integration, m that of the outer
y-integration, eps = m/2 - 1 for D = 1, and alpha = 1 - eps.  The reduced
function I_hat = I / C1(eps) is analytic in eps on [0, 2].
"""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np
from scipy import special

from .errors import DomainError, PoleError
from .hyper_core import (EPS, HyperParams, SeriesResult, cexpm1, cpow, eval_2f1, eval_pfq,
                         gamma_real, is_nonpos_int, rgamma)
from .multivar_hyper import eval_f1, h4_single_series


class MassPair(NamedTuple):
    kappa1: float
    kappa2: float


class IntegralPoint(NamedTuple):
    m: float
    p: float
    q: float

    @property
    def eps_hat(self) -> float:
        return self.m / 2 - 1


def _masses(masses) -> MassPair:
    k1, k2 = (float(v) for v in masses)
    if k1 < 0 or k2 < 0:
        raise DomainError("masses must be non-negative")
    return MassPair(k1, k2)


def _point(point) -> IntegralPoint:
    m, p, q = (float(v) for v in point)
    if p < 0 or q < 0:
        raise DomainError("p and q must be non-negative")
    if p == 0 and q == 0:
        raise DomainError("p and q cannot both vanish")
    return IntegralPoint(m, p, q)


# ---------------------------------------------------------------------------
# constants

def c1_constant(eps_hat: float) -> float:
    """C1 = 16^-eps pi^(-1-eps) Gamma(2-eps) / eps; carries the poles at eps = 0 and 2."""
    e = float(eps_hat)
    if not 0 < e < 2:
        raise DomainError("C1 is defined for 0 < eps < 2")
    return 16.0 ** (-e) * math.pi ** (-1 - e) * gamma_real(2 - e) / e


def gamma_d(D: float) -> float:
    """(4 pi)^(-D/2) Gamma(2 - D/2)."""
    if is_nonpos_int(2 - D / 2):
        raise PoleError(f"Gamma(2 - D/2) has a pole at D = {D}")
    return (4 * math.pi) ** (-D / 2) * gamma_real(2 - D / 2)


# ---------------------------------------------------------------------------
# inner one-loop integrals

def inner_j1(p: float, masses) -> float:
    """D = 1: (k1+k2)/(2 k1 k2) / (p^2 + (k1+k2)^2)."""
    k1, k2 = _masses(masses)
    if k1 * k2 == 0:
        raise DomainError("J1 needs both masses positive")
    s = k1 + k2
    return s / (2 * k1 * k2) / (p * p + s * s)


def inner_j2(p: float, masses) -> float:
    """D = 2: log((p^2 + k1^2 + k2^2 + sqrt(Delta)) / (2 k1 k2)) / (2 pi sqrt(Delta)).

    Delta = ((k1+k2)^2 + p^2)((k2-k1)^2 + p^2); the removable point Delta = 0 is
    returned as its limit.
    """
    k1, k2 = _masses(masses)
    if k1 * k2 == 0:
        raise DomainError("J2 needs both masses positive")
    delta = ((k1 + k2) ** 2 + p * p) * ((k2 - k1) ** 2 + p * p)
    if delta == 0:
        # p = 0, k1 = k2: the log over sqrt(Delta) tends to 1/(2 k1 k2)
        return 1 / (4 * math.pi * k1 * k2)
    rd = math.sqrt(delta)
    # the log argument exceeds 1; write it as 1 + (...) to keep small logs accurate
    excess = (p * p + (k1 - k2) ** 2 + rd) / (2 * k1 * k2)
    return math.log1p(excess) / (2 * math.pi * rd)


def inner_j3(p: float, masses) -> float:
    """D = 3: arctan(p / (k1+k2)) / (4 pi p)."""
    k1, k2 = _masses(masses)
    s = k1 + k2
    if s == 0:
        if p <= 0:
            raise DomainError("J3 needs k1 + k2 > 0 or p > 0")
        return 1 / (8 * p)
    x = p / s
    if x < 1e-4:
        # arctan(x)/x to O(x^6)
        return (1 - x * x / 3 + x**4 / 5) / (4 * math.pi * s)
    return math.atan(x) / (4 * math.pi * p)


def inner_jd_f1(D: float, p: float, masses, tol: float = 1e-15) -> float:
    """J_D as gamma_D ((k1+k2)/2)^(D-4) F1(2-D/2; 1, 3/2-D/2; 3/2; -p^2/(k1+k2)^2, (k2-k1)^2/(k1+k2)^2)."""
    if not 0 < D < 4:
        raise DomainError("inner_jd_f1 needs 0 < D < 4")
    k1, k2 = _masses(masses)
    s = k1 + k2
    if s == 0:
        raise DomainError("inner_jd_f1 needs k1 + k2 > 0")
    x = -(p / s) ** 2
    y = ((k2 - k1) / s) ** 2
    f = eval_f1(2 - D / 2, 1.0, 1.5 - D / 2, 1.5, x, y, tol)
    return gamma_d(D) * (s / 2) ** (D - 4) * f.real


def inner_jd_zero_mass(D: float, p: float, kappa: float) -> float:
    """J_D(p; 0, kappa) = -(4 pi)^(-D/2) Gamma(1-D/2) kappa^(D-4) 2F1(2-D/2, 1; D/2; -p^2/kappa^2).

    Finite for 2 < D < 4; for D < 2 this is the analytic continuation of a
    divergent integral.
    """
    if not 0 < D < 4:
        raise DomainError("inner_jd_zero_mass needs 0 < D < 4")
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    if is_nonpos_int(1 - D / 2):
        raise PoleError(f"Gamma(1 - D/2) has a pole at D = {D}")
    f = eval_2f1(2 - D / 2, 1.0, D / 2, -(p / kappa) ** 2)
    pref = (4 * math.pi) ** (-D / 2) * gamma_real(1 - D / 2) * kappa ** (D - 4)
    return -pref * f.real


def kss_roots(p: float, k1: float, k2: float):
    """Roots r-, r+ of p^2 r^2 - (p^2 + k2^2 - k1^2) r - k1^2 = 0 (r- < 0 < r+)."""
    A = p * p + k2 * k2 - k1 * k1
    rd = math.sqrt(A * A + 4 * k1 * k1 * p * p)
    # r- r+ = -k1^2/p^2: compute the root without cancellation, then the other
    if A >= 0:
        r_plus = (A + rd) / (2 * p * p)
        r_minus = -k1 * k1 / (p * p * r_plus)
    else:
        r_minus = (A - rd) / (2 * p * p)
        r_plus = -k1 * k1 / (p * p * r_minus)
    return r_minus, r_plus


def inner_jd_kss(D: float, p: float, masses, tol: float = 1e-15) -> float:
    """J_D as gamma_D k1^(D-4) F1(1; 2-D/2, 2-D/2; 2; 1/r-, 1/r+)."""
    if not 0 < D < 4:
        raise DomainError("inner_jd_kss needs 0 < D < 4")
    k1, k2 = _masses(masses)
    if k1 <= 0 or p <= 0:
        raise DomainError("inner_jd_kss needs k1 > 0 and p > 0")
    r_minus, r_plus = kss_roots(p, k1, k2)
    b = 2 - D / 2
    f = eval_f1(1.0, b, b, 2.0, 1 / r_minus, 1 / r_plus, tol)
    return gamma_d(D) * k1 ** (D - 4) * f.real


# ---------------------------------------------------------------------------
# main result for D = 1

def _zy(p: float, q: float):
    z = complex(q * q, -2 * p)
    return z, -q * q / z


def _clog1p(w: complex) -> complex:
    re = w.real
    return complex(0.5 * math.log1p(2 * re + abs(w) ** 2), math.atan2(w.imag, 1 + re))


def _hat_limit_m4(p: float, q: float) -> float:
    # alpha -> 0 limit: Im[((1-y)/y) log(1-y) - log z] / (2p)
    z, y = _zy(p, q)
    return ((1 - y) / y * _clog1p(-y) - cmath.log(z)).imag / (2 * p)


def _hat_general(eps: float, p: float, q: float) -> SeriesResult:
    """Im[z^-alpha 2F1(alpha, 1; 2-alpha; y)] / (2 alpha p) for alpha != 0.

    The bracket is 1 + O(alpha), so it is assembled as (1+A)(1+B)(1+C) - 1
    from z^-alpha - 1, (1-y)^-alpha - 1 and 2F1(alpha, 1-alpha; 2-alpha; w) - 1
    (Pfaff image, |w| <= 1/2), each of which is computed without cancellation.
    """
    alpha = 1 - eps
    z, y = _zy(p, q)
    w = y / (y - 1)
    A = cexpm1(-alpha * cmath.log(z))
    B = cexpm1(-alpha * cmath.log(1 - y))
    Cr = eval_pfq(HyperParams((alpha, 1 - alpha), (2 - alpha,)), w, drop_leading=True)
    C = Cr.value
    G = A + B + C + A * B + A * C + B * C + A * B * C
    den = 2 * alpha * p
    val = G.imag / den
    err = (Cr.abs_err * abs(1 + A) * abs(1 + B) + 8 * EPS * (abs(A) + abs(B) + abs(C))) / abs(den)
    return SeriesResult(complex(val), err, Cr.terms_used, True, "reduced_2f1")


def p_axis_hat(eps: float) -> float:
    """I_hat(1, 0) = 2^(eps-2) cos(pi eps/2) / (1 - eps), written through sinc."""
    alpha = 1 - eps
    return 2.0 ** (eps - 2) * (math.pi / 2) * float(np.sinc(alpha / 2))


def _q_axis_bracket_log(eps: float) -> float:
    # log(sqrt(pi) Gamma(eps)/Gamma(eps - 1/2)) as a Taylor series about eps = 1
    d = eps - 1
    out = 0.0
    fact = 1.0
    for k in range(1, 21):
        fact *= k
        coef = special.polygamma(k - 1, 1.0) - special.polygamma(k - 1, 0.5)
        out += coef * d**k / fact
    return out


def q_axis_hat(eps: float) -> float:
    """I_hat(0, 1) = [eps - sqrt(pi) eps Gamma(eps)/Gamma(eps - 1/2)] / (2 (1 - eps))."""
    alpha = 1 - eps
    if abs(alpha) < 0.05:
        # 1 - sqrt(pi) Gamma(eps)/Gamma(eps-1/2) vanishes at eps = 1
        one_minus = -math.expm1(_q_axis_bracket_log(eps))
        if alpha == 0:
            return math.log(2.0)
        return eps * one_minus / (2 * alpha)
    bracket = eps - math.sqrt(math.pi) * eps * gamma_real(eps) * rgamma(eps - 0.5)
    return bracket / (2 * alpha)


def _check_window(eps: float, closed: bool):
    if closed and not 0 <= eps <= 2:
        raise DomainError("the reduced integral is implemented for 2 <= m <= 6")
    if not closed and not 0 < eps < 2:
        raise DomainError("the integral is implemented for 2 < m < 6")


def i1m_hat_result(point, tol: float = 1e-15) -> SeriesResult:
    """I_hat_{1,m}(p, q) with an error estimate and route label."""
    m, p, q = _point(point)
    eps = m / 2 - 1
    _check_window(eps, closed=True)
    expo = eps - 2
    if p == 0:
        v = q ** (2 * expo) * q_axis_hat(eps)
        return SeriesResult(complex(v), 8 * EPS * abs(v), 1, True, "q_axis")
    if q == 0:
        v = p**expo * p_axis_hat(eps)
        return SeriesResult(complex(v), 8 * EPS * abs(v), 1, True, "p_axis")
    if eps == 1:
        v = _hat_limit_m4(p, q)
        return SeriesResult(complex(v), 16 * EPS * abs(v), 1, True, "m4_limit")
    return _hat_general(eps, p, q)


def i1m_hat(point, tol: float = 1e-15) -> float:
    """Reduced integral I_hat_{1,m}(p, q) = I_{1,m}(p, q) / C1 for 2 <= m <= 6."""
    return i1m_hat_result(point, tol).real


def i1m(point, tol: float = 1e-15) -> float:
    """I_{1,m}(p, q) = C1(eps) I_hat for 2 < m < 6."""
    point = _point(point)
    eps = point.eps_hat
    _check_window(eps, closed=False)
    return c1_constant(eps) * i1m_hat(point, tol)


def i1m_gamma_form(point, tol: float = 1e-15) -> float:
    """I_{1,m} from the Gamma(-eps) prefactor form with a plain 2F1 evaluation.

    Undefined at m = 4, where Gamma(-eps) has a pole; kept as a cross-check.
    """
    m, p, q = _point(point)
    eps = m / 2 - 1
    _check_window(eps, closed=False)
    if p == 0:
        raise DomainError("the Gamma-prefactor form divides by p")
    z, y = _zy(p, q)
    f = eval_2f1(1.0, 1 - eps, 1 + eps, y, tol)
    im = (cpow(z, eps - 1) * f.value).imag
    pref = gamma_real(-eps) / (2 ** (1 + 4 * eps) * math.pi ** (1 + eps))
    return -pref * im / p


def i1m_q_axis(m: float, q: float, reduced: bool = False) -> float:
    """I_{1,m}(0, q) = q^(-4+2 eps) I(0, 1)."""
    eps = m / 2 - 1
    _check_window(eps, closed=reduced)
    if q <= 0:
        raise DomainError("q must be positive")
    v = q ** (2 * eps - 4) * q_axis_hat(eps)
    return v if reduced else c1_constant(eps) * v


def i1m_p_axis(m: float, p: float, reduced: bool = False) -> float:
    """I_{1,m}(p, 0) = p^(-2+eps) I(1, 0)."""
    eps = m / 2 - 1
    _check_window(eps, closed=reduced)
    if p <= 0:
        raise DomainError("p must be positive")
    v = p ** (eps - 2) * p_axis_hat(eps)
    return v if reduced else c1_constant(eps) * v


def i1m_via_h4(point, tol: float = 1e-15) -> float:
    """C1 q^(-4+2 eps) H4(2-eps, 1; 3/2, 1+eps; -p^2/q^4, -1) by the accelerated single series."""
    m, p, q = _point(point)
    eps = m / 2 - 1
    _check_window(eps, closed=False)
    if q == 0:
        raise DomainError("the Horn representation needs q > 0")
    u = p / (q * q)
    h = h4_single_series(2 - eps, 1.0, 1.5, 1 + eps, -u * u, -1.0, tol)
    return c1_constant(eps) * q ** (2 * eps - 4) * h.real


# ---------------------------------------------------------------------------
# closed forms at integer m (reduced function)

def _pq_positive(p, q):
    if p <= 0 or q <= 0:
        raise DomainError("closed form needs p > 0 and q > 0")


def special_m2(p: float, q: float) -> float:
    """I_hat_{1,2} = 1 / (4 (p^2 + q^4))."""
    _pq_positive(p, q)
    return 0.25 / (p * p + q**4)


def special_m3(p: float, q: float) -> float:
    """I_hat_{1,3} = -log[(q^2 R + p^2 - p q sqrt2 sqrt(R + q^2)) / (p^2 + q^4)] / (4 p q), R = sqrt(4p^2 + q^4)."""
    _pq_positive(p, q)
    R = math.sqrt(4 * p * p + q**4)
    den = p * p + q**4
    # numerator - denominator with q^2 R - q^4 = 4 p^2 q^2 / (R + q^2)
    diff = 4 * p * p * q * q / (R + q * q) - p * q * math.sqrt(2) * math.sqrt(R + q * q)
    return -math.log1p(diff / den) / (4 * p * q)


def special_m4(p: float, q: float) -> float:
    """I_hat_{1,4} = [(p/q^2) log((p^2+q^4)/(p^2+q^4/4)) + arctan(2p^3/(q^2 (3p^2+q^4)))] / (2p)."""
    _pq_positive(p, q)
    q2, q4 = q * q, q**4
    lg = math.log1p(0.75 * q4 / (p * p + 0.25 * q4))
    return (p / q2 * lg + math.atan(2 * p**3 / (q2 * (3 * p * p + q4)))) / (2 * p)


def special_m5(p: float, q: float) -> float:
    """I_hat_{1,5} = -(3/(4q)) Re[sqrt(zeta) - (1/u)(1 - iu)^2 log((sqrt(zeta)+i)/(sqrt(zeta)-i))], zeta = 1 - 2iu."""
    _pq_positive(p, q)
    u = p / (q * q)
    sz = cmath.sqrt(complex(1, -2 * u))
    br = sz - (1 / u) * complex(1, -u) ** 2 * cmath.log((sz + 1j) / (sz - 1j))
    return -0.75 / q * br.real


def special_m6(p: float, q: float) -> float:
    """I_hat_{1,6} = 1."""
    _pq_positive(p, q)
    return 1.0


def special_hat(m: int, p: float, q: float) -> float:
    return {2: special_m2, 3: special_m3, 4: special_m4, 5: special_m5, 6: special_m6}[int(m)](p, q)


# ---------------------------------------------------------------------------
# other dimensions and the explicit points at p = 1

def i3m(m: float, p: float, q: float) -> float:
    """I_{3,m}(p, q) = 8 (16 pi)^-e Gamma(2-e) (4p^2+q^4)^(e/2-1) 2F1(1-e/2, e/2; 3/2; 4p^2/(4p^2+q^4)), e = m/2+1."""
    e = m / 2 + 1
    if not 1 <= e < 2:
        raise DomainError("the D = 3 formula is stated for 0 <= m < 2")
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise DomainError("needs p, q >= 0, not both zero")
    s = 4 * p * p + q**4
    f = eval_2f1(1 - e / 2, e / 2, 1.5, 4 * p * p / s)
    return 8 * (16 * math.pi) ** (-e) * gamma_real(2 - e) * s ** (e / 2 - 1) * f.real


def i21_closed(q: float) -> float:
    """I_{2,1}(1, q) = w^(1/4) 2F1(1/4, 1/4; 1; w) / (4 sqrt 2), w = 4/((1+q^4)^2 (4+q^4))."""
    if q < 0:
        raise DomainError("q must be non-negative")
    q4 = q**4
    w = 4 / ((1 + q4) ** 2 * (4 + q4))
    return w**0.25 / (4 * math.sqrt(2)) * eval_2f1(0.25, 0.25, 1.0, w).real


def i31_closed(q: float) -> float:
    """I_{3,1}(1, q) = sqrt(sqrt(4+q^4) - q^2) / (8 pi sqrt 2)."""
    if q < 0:
        raise DomainError("q must be non-negative")
    if q <= 1:
        return math.sqrt(math.sqrt(4 + q**4) - q * q) / (8 * math.pi * math.sqrt(2))
    # second printed form, free of the large-q cancellation
    return 1 / (q * 4 * math.pi * math.sqrt(2) * math.sqrt(math.sqrt(1 + 4 / q**4) + 1))


def i14_closed(q: float) -> float:
    """I_{1,4}(1, q) = [arctan(2/(q^2 (3+q^4))) + q^-2 log((1+q^4)/(1+q^4/4))] / (32 pi^2)."""
    if q < 0:
        raise DomainError("q must be non-negative")
    q2, q4 = q * q, q**4
    at = math.atan2(2.0, q2 * (3 + q4))
    lg = math.log1p(0.75 * q4 / (1 + 0.25 * q4)) / q2 if q > 0 else 0.0
    return (at + lg) / (32 * math.pi**2)
