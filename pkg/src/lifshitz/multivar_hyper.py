"""Appell F1, F2, F4 and Horn H4 functions of two variables.

Double series are summed over graded blocks (k+n, or 2k+n for H4) with all
terms of a block evaluated at once in log-magnitude form.  Outside the
double-series domains F1 falls back on its Euler integral and H4 on a single
series in its second argument.
"""
from __future__ import annotations

import cmath
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

from .errors import DomainError, NoConvergence, PoleError
from .hyper_core import (DEFAULT_TOL, EPS, SeriesResult, cpow, eval_2f1, gamma_real,
                         is_nonpos_int, rgamma, term_cap)

# domain measure above which F1 prefers the Euler integral
F1_SERIES_LIMIT = 0.9


class _LogPoch:
    """Cached log|(a)_j| and sign((a)_j) for j = 0, 1, 2, ..."""

    def __init__(self, a: float):
        self.a = float(a)
        self.log = np.zeros(1)
        self.sign = np.ones(1)

    def _grow(self, size: int):
        old = self.log.size
        if size <= old:
            return
        f = self.a + np.arange(old - 1, size - 1, dtype=float)
        with np.errstate(divide="ignore"):
            steps = np.log(np.abs(f))
        new_log = self.log[-1] + np.cumsum(steps)
        new_sign = self.sign[-1] * np.cumprod(np.sign(f))
        self.log = np.concatenate([self.log, new_log])
        self.sign = np.concatenate([self.sign, new_sign])

    def __call__(self, idx: np.ndarray):
        self._grow(int(idx.max()) + 1)
        return self.log[idx], self.sign[idx]


def _power(x: complex, k: np.ndarray):
    """log|x^k|, real sign and phase of x^k, elementwise in k."""
    if x == 0:
        logm = np.where(k == 0, 0.0, -np.inf)
        return logm, np.ones(k.shape), None
    logm = k * math.log(abs(x))
    if x.imag == 0:
        sign = np.where((x.real < 0) & (k % 2 == 1), -1.0, 1.0)
        return logm, sign, None
    return logm, np.ones(k.shape), k * cmath.phase(x)


def _assemble(logm, sign, phases):
    mag = sign * np.exp(logm)
    if not phases:
        return mag.astype(complex)
    ph = sum(phases)
    return mag * np.exp(1j * ph)


def _graded_sum(term_fn: Callable, rho: float, tol: float, kweight: int = 1,
                chunk: int = 24) -> SeriesResult:
    """Sum term_fn(k, n) over grades g = kweight*k + n until three consecutive
    grades are negligible and a geometric tail with ratio ``rho`` is too."""
    cap = term_cap()
    S = 0j
    abs_sum = 0.0
    used = 0
    small = 0
    g0 = 0
    recent = []
    while True:
        grades = np.arange(g0, g0 + chunk)
        lens = grades // kweight + 1
        k = np.concatenate([np.arange(L) for L in lens])
        n = np.repeat(grades, lens) - kweight * k
        t = term_fn(k, n)
        starts = np.concatenate([[0], np.cumsum(lens)[:-1]])
        gsum = np.add.reduceat(t, starts)
        gabs = np.add.reduceat(np.abs(t), starts)
        if not np.all(np.isfinite(gabs)):
            raise NoConvergence("double series overflowed", partial=SeriesResult(S, float("inf"), used, False))
        for i in range(grades.size):
            S += complex(gsum[i])
            abs_sum += float(gabs[i])
            used += int(lens[i])
            recent = (recent + [float(gabs[i])])[-3:]
            floor = max(tol * abs(S), EPS * abs_sum)
            small = small + 1 if gabs[i] <= floor else 0
            if small >= 3 and rho < 1:
                tail = max(recent) * rho / (1 - rho)
                if tail <= floor:
                    err = tail + 4 * EPS * abs_sum
                    return SeriesResult(S, err, used, True, "double_series")
        if used >= cap:
            part = SeriesResult(S, float("inf"), used, False)
            raise NoConvergence(f"double series hit the term cap {cap}", partial=part)
        g0 += chunk


def _check_den(*params):
    for c in params:
        if is_nonpos_int(c):
            raise PoleError(f"denominator parameter {c} is a non-positive integer")


# ---------------------------------------------------------------------------
# Appell F1

def _f1_series(a, b, bp, c, x, y, tol):
    pa, pb, pbp, pc, fact = _LogPoch(a), _LogPoch(b), _LogPoch(bp), _LogPoch(c), _LogPoch(1.0)

    def term(k, n):
        l1, s1 = pa(k + n)
        l2, s2 = pb(k)
        l3, s3 = pbp(n)
        l4, s4 = pc(k + n)
        l5, _ = fact(k)
        l6, _ = fact(n)
        lx, sx, phx = _power(x, k)
        ly, sy, phy = _power(y, n)
        logm = l1 + l2 + l3 - l4 - l5 - l6 + lx + ly
        sign = s1 * s2 * s3 * s4 * sx * sy
        return _assemble(logm, sign, [p for p in (phx, phy) if p is not None])

    return _graded_sum(term, max(abs(x), abs(y)), tol)


def _f1_euler(a, b, bp, c, x, y, tol):
    # the integrand poles u = 1/x, 1/y must stay off [0, 1]
    for v in (x, y):
        if v.imag == 0 and v.real >= 1:
            raise DomainError("F1 Euler integral has a pole on [0, 1]")

    def g(u):
        return cpow(1 - u * x, -b) * cpow(1 - u * y, -bp)

    opts = dict(weight="alg", wvar=(a - 1, c - a - 1), epsabs=0.0,
                epsrel=max(tol, 1e-13), limit=400)
    re, re_err = integrate.quad(lambda u: g(u).real, 0.0, 1.0, **opts)
    if x.imag == 0 and y.imag == 0:
        im, im_err = 0.0, 0.0
    else:
        im, im_err = integrate.quad(lambda u: g(u).imag, 0.0, 1.0, **opts)
    norm = gamma_real(c) * rgamma(a) * rgamma(c - a)
    val = norm * complex(re, im)
    err = abs(norm) * (re_err + im_err) + 8 * EPS * abs(val)
    if err > max(1e-8 * abs(val), 1e-300):
        raise NoConvergence("F1 Euler integral did not converge",
                            partial=SeriesResult(val, err, 0, False, "euler_integral"))
    return SeriesResult(val, err, 0, True, "euler_integral")


def eval_f1(a: float, b: float, bp: float, c: float, x: complex, y: complex,
            tol: float = DEFAULT_TOL) -> SeriesResult:
    """Appell F1(a; b, b'; c; x, y)."""
    _check_den(c)
    x, y = complex(x), complex(y)
    if x == 0 and y == 0:
        return SeriesResult(1 + 0j, 0.0, 1, True, "trivial")
    if a == c:
        # the double series factorizes into two binomial series
        if (x.imag == 0 and x.real >= 1 and b != 0) or (y.imag == 0 and y.real >= 1 and bp != 0):
            raise DomainError("F1 with a = c is singular for real arguments >= 1")
        val = cpow(1 - x, -b) * cpow(1 - y, -bp)
        return SeriesResult(val, 8 * EPS * abs(val), 1, True, "binomial")
    # one vanishing column collapses the double series to a Gauss series
    if bp == 0 or y == 0:
        return eval_2f1(a, b, c, x, tol).scaled(1.0, "reduced_2f1")
    if b == 0 or x == 0:
        return eval_2f1(a, bp, c, y, tol).scaled(1.0, "reduced_2f1")
    r = max(abs(x), abs(y))
    euler_ok = c > a > 0
    if r < 1 and (r <= F1_SERIES_LIMIT or not euler_ok):
        return _f1_series(a, b, bp, c, x, y, tol)
    if euler_ok:
        return _f1_euler(a, b, bp, c, x, y, tol)
    raise DomainError("F1 needs |x|, |y| < 1 or c > a > 0")


# ---------------------------------------------------------------------------
# Appell F2 and F4

def eval_f2(a: float, b: float, bp: float, c: float, cp: float, x: complex, y: complex,
            tol: float = DEFAULT_TOL) -> SeriesResult:
    """Appell F2(a; b, b'; c, c'; x, y) for |x| + |y| < 1."""
    _check_den(c, cp)
    x, y = complex(x), complex(y)
    rho = abs(x) + abs(y)
    if rho >= 1:
        raise DomainError("F2 series needs |x| + |y| < 1")
    if x == 0 and y == 0:
        return SeriesResult(1 + 0j, 0.0, 1, True, "trivial")
    pa, pb, pbp, pc, pcp, fact = (_LogPoch(v) for v in (a, b, bp, c, cp, 1.0))

    def term(k, n):
        l1, s1 = pa(k + n)
        l2, s2 = pb(k)
        l3, s3 = pbp(n)
        l4, s4 = pc(k)
        l5, s5 = pcp(n)
        lx, sx, phx = _power(x, k)
        ly, sy, phy = _power(y, n)
        logm = l1 + l2 + l3 - l4 - l5 - fact(k)[0] - fact(n)[0] + lx + ly
        sign = s1 * s2 * s3 * s4 * s5 * sx * sy
        return _assemble(logm, sign, [p for p in (phx, phy) if p is not None])

    return _graded_sum(term, rho, tol)


def eval_f4(a: float, b: float, c: float, cp: float, x: complex, y: complex,
            tol: float = DEFAULT_TOL) -> SeriesResult:
    """Appell F4(a, b; c, c'; x, y) for sqrt|x| + sqrt|y| < 1."""
    _check_den(c, cp)
    x, y = complex(x), complex(y)
    root = math.sqrt(abs(x)) + math.sqrt(abs(y))
    if root >= 1:
        raise DomainError("F4 series needs sqrt|x| + sqrt|y| < 1")
    if x == 0 and y == 0:
        return SeriesResult(1 + 0j, 0.0, 1, True, "trivial")
    pa, pb, pc, pcp, fact = (_LogPoch(v) for v in (a, b, c, cp, 1.0))

    def term(k, n):
        l1, s1 = pa(k + n)
        l2, s2 = pb(k + n)
        l4, s4 = pc(k)
        l5, s5 = pcp(n)
        lx, sx, phx = _power(x, k)
        ly, sy, phy = _power(y, n)
        logm = l1 + l2 - l4 - l5 - fact(k)[0] - fact(n)[0] + lx + ly
        sign = s1 * s2 * s4 * s5 * sx * sy
        return _assemble(logm, sign, [p for p in (phx, phy) if p is not None])

    return _graded_sum(term, root * root, tol)


# ---------------------------------------------------------------------------
# Horn H4

def _h4_series(alpha, beta, gamma, delta, x, y, tol):
    pal, pbe, pga, pde, fact = (_LogPoch(v) for v in (alpha, beta, gamma, delta, 1.0))

    def term(k, n):
        l1, s1 = pal(2 * k + n)
        l2, s2 = pbe(n)
        l3, s3 = pga(k)
        l4, s4 = pde(n)
        lx, sx, phx = _power(x, k)
        ly, sy, phy = _power(y, n)
        logm = l1 + l2 - l3 - l4 - fact(k)[0] - fact(n)[0] + lx + ly
        sign = s1 * s2 * s3 * s4 * sx * sy
        return _assemble(logm, sign, [p for p in (phx, phy) if p is not None])

    return _graded_sum(term, 2 * math.sqrt(abs(x)) + abs(y), tol, kweight=2)


def eval_h4(alpha: float, beta: float, gamma: float, delta: float, x: complex, y: complex,
            tol: float = DEFAULT_TOL) -> SeriesResult:
    """Horn H4(alpha, beta; gamma, delta; x, y).

    Uses the double series for 2 sqrt|x| + |y| < 1 and the single series in
    y (with inner 2F1 in 4x) elsewhere.
    """
    _check_den(gamma, delta)
    x, y = complex(x), complex(y)
    if x == 0 and y == 0:
        return SeriesResult(1 + 0j, 0.0, 1, True, "trivial")
    if 2 * math.sqrt(abs(x)) + abs(y) < 1:
        return _h4_series(alpha, beta, gamma, delta, x, y, tol)
    return h4_single_series(alpha, beta, gamma, delta, x, y, tol)


def _euler_mean(partials, K):
    # K-fold repeated averaging of the last K+1 partial sums
    w = np.array([math.comb(K, j) for j in range(K + 1)], dtype=float) / 2.0**K
    return complex(np.dot(w, np.asarray(partials[-(K + 1):])))


def h4_single_series(alpha: float, beta: float, gamma: float, delta: float,
                     s: complex, t: complex, tol: float = DEFAULT_TOL,
                     max_outer: int = 6000) -> SeriesResult:
    """H4 as a power series in t whose coefficients are 2F1 functions of 4s.

    Direct summation is used when the terms die out; otherwise (|t| = 1)
    the partial sums are smoothed by repeated averaging and the value is
    accepted once consecutive smoothed estimates agree to 10 digits.
    """
    _check_den(gamma, delta)
    s, t = complex(s), complex(t)
    # a few ulps of slack: arguments on |t| = 1 are often computed, not given
    boundary = abs(abs(t) - 1) <= 64 * EPS
    if abs(t) > 1 and not boundary:
        raise DomainError("single-series H4 needs |t| <= 1")
    K = 30
    stride = 10
    target = max(tol, 1e-15)
    accept = 1e-10
    S = 0j
    coef = 1 + 0j
    abs_sum = 0.0
    err_inner = 0.0
    partials = []
    small = 0
    prev_mean = None
    best = None
    for n in range(max_outer):
        if n > 0:
            coef *= (alpha + n - 1) * (beta + n - 1) / ((delta + n - 1) * n) * t
        if coef == 0:
            # terminating outer series
            return SeriesResult(S, err_inner + 4 * EPS * abs_sum, n, True, "single_series")
        inner = eval_2f1((n + alpha) / 2, (n + alpha + 1) / 2, gamma, 4 * s, tol)
        term = coef * inner.value
        S += term
        abs_sum += abs(term)
        err_inner += abs(coef) * inner.abs_err
        partials.append(S)
        floor = max(target * abs(S), EPS * abs_sum)
        small = small + 1 if abs(term) <= floor else 0
        if small >= 3 and abs(t) < 1 and not boundary:
            # geometric tail in |t| for the outer coefficients
            tail = abs(term) * abs(t) / (1 - abs(t))
            if tail <= floor:
                return SeriesResult(S, tail + err_inner + 4 * EPS * abs_sum, n + 1, True,
                                    "single_series")
        if small >= 3 and boundary:
            return SeriesResult(S, abs(term) + err_inner + 4 * EPS * abs_sum, n + 1, True,
                                "single_series")
        if n + 1 >= K + 1 and (n + 1) % stride == 0:
            mean = _euler_mean(partials, K)
            if prev_mean is not None:
                change = abs(mean - prev_mean)
                if best is None or change < best[1]:
                    best = (mean, change, n + 1)
                if change <= target * abs(mean):
                    return SeriesResult(mean, change + err_inner + 4 * EPS * abs_sum, n + 1,
                                        True, "single_series_euler")
            prev_mean = mean
    if best is not None and best[1] <= accept * abs(best[0]):
        mean, change, used = best
        return SeriesResult(mean, change + err_inner, used, True, "single_series_euler")
    part = SeriesResult(best[0] if best else S, float("inf"), max_outer, False)
    raise NoConvergence("single-series H4 did not stabilize", partial=part)


def h4_dx_series(alpha: float, beta: float, gamma: float, delta: float,
                 s: complex, t: complex, tol: float = DEFAULT_TOL) -> SeriesResult:
    """H4 as a power series in s whose coefficients are 2F1 functions of t."""
    _check_den(gamma, delta)
    s, t = complex(s), complex(t)
    rho = 2 * math.sqrt(abs(s)) + abs(t)
    if rho >= 1:
        raise DomainError("H4 s-series needs 2 sqrt|s| + |t| < 1")
    cap = term_cap()
    S = 0j
    coef = 1 + 0j
    abs_sum = 0.0
    err_inner = 0.0
    small = 0
    # per-step growth of the coefficients approaches 4|s|
    ratio = 4 * abs(s) / (1 - abs(t)) ** 2 if abs(t) < 1 else 1.0
    for n in range(cap):
        if n > 0:
            coef *= (alpha + 2 * n - 2) * (alpha + 2 * n - 1) / ((gamma + n - 1) * n) * s
        if coef == 0:
            return SeriesResult(S, err_inner + 4 * EPS * abs_sum, n, True, "s_series")
        inner = eval_2f1(alpha + 2 * n, beta, delta, t, tol)
        term = coef * inner.value
        S += term
        abs_sum += abs(term)
        err_inner += abs(coef) * inner.abs_err
        floor = max(tol * abs(S), EPS * abs_sum)
        small = small + 1 if abs(term) <= floor else 0
        if small >= 3 and ratio < 1:
            tail = abs(term) * ratio / (1 - ratio)
            if tail <= floor:
                return SeriesResult(S, tail + err_inner + 4 * EPS * abs_sum, n + 1, True,
                                    "s_series")
    raise NoConvergence("H4 s-series hit the term cap", partial=SeriesResult(S, float("inf"), cap, False))


def h4_via_f2(alpha: float, beta: float, gamma: float, delta: float,
              s: complex, t: complex, tol: float = DEFAULT_TOL) -> SeriesResult:
    """H4 through Appell F2 with arguments t/(1+2 sqrt s), 4 sqrt s/(1+2 sqrt s)."""
    s = complex(s)
    if s.imag != 0 or s.real < 0:
        raise DomainError("F2 representation of H4 needs real s >= 0")
    r = math.sqrt(s.real)
    den = 1 + 2 * r
    f2 = eval_f2(alpha, beta, gamma - 0.5, delta, 2 * gamma - 1, complex(t) / den, 4 * r / den, tol)
    return f2.scaled(den ** (-alpha), "via_f2")


def h4_via_f4(alpha: float, beta: float, delta: float, s: complex, t: complex,
              tol: float = DEFAULT_TOL) -> SeriesResult:
    """H4(alpha, beta; alpha-beta+1, delta; s, t) through Appell F4."""
    s = complex(s)
    if s.imag != 0 or s.real >= 0.25:
        raise DomainError("F4 representation of H4 needs real s < 1/4")
    root = math.sqrt(1 - 4 * s.real)
    half = (1 + root) / 2
    # (1-root)/(1+root) written without the subtraction
    second = 4 * s.real / (1 + root) ** 2
    f4 = eval_f4(alpha, beta, delta, alpha - beta + 1, complex(t) / half, second, tol)
    return f4.scaled(half ** (-alpha), "via_f4")


# ---------------------------------------------------------------------------
# quadratic transformation of F1

def f1_quadratic_transform_pair(a: float, b: float, x: float, y: float,
                                tol: float = DEFAULT_TOL) -> Tuple[SeriesResult, SeriesResult]:
    """Both sides of the quadratic transformation taking F1(a; b, b; 2a; ...)
    at the reciprocal roots 1/r-, 1/r+ to F1(b; a, b-a+1/2; a+1/2; ...)."""
    x, y = float(x), float(y)
    if x == 0 or x + y == 0:
        raise DomainError("the transformation needs x != 0 and x + y != 0")
    A = 1 + y * y - x * x
    root = math.sqrt(A * A + 4 * x * x)
    # r_minus * r_plus = -x^2; take the root without cancellation first
    if A >= 0:
        r_minus = (A + root) / 2
        r_plus = -x * x / r_minus
    else:
        r_plus = (A - root) / 2
        r_minus = -x * x / r_plus
    lhs = eval_f1(a, b, b, 2 * a, 1 / r_minus, 1 / r_plus, tol)
    lhs = SeriesResult(lhs.value, lhs.abs_err, lhs.terms_used, lhs.converged, "lhs_" + lhs.route)
    u = -1 / (x + y) ** 2
    v = ((x - y) / (x + y)) ** 2
    rhs = eval_f1(b, a, b - a + 0.5, a + 0.5, u, v, tol)
    fac = cpow(complex((x + y) / (2 * x)), -2 * b)
    return lhs, rhs.scaled(fac, "rhs_" + rhs.route)
