"""Real and imaginary parts of 2F1(a, b; c; z) for real parameters.

Several independent representations are provided so they can be checked
against each other: the plain polar series, a series in |z|^2/x with 2F1
coefficients in -y^2/x^2, a series in -y^2/x^2 with 3F2 coefficients, a
Laplace-type integral, and Horn H4 representations.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Tuple, Union

from scipy import integrate

from .errors import DomainError, NoConvergence, PrecisionLoss, QuadratureError
from .hyper_core import (DEFAULT_TOL, EPS, HyperParams, cpow, eval_2f1, eval_pfq,
                         eval_pfq_scaled, is_nonpos_int, term_cap)
from .multivar_hyper import eval_h4

# cancellation growth in the x < 0 series beyond which a warning is issued
CANCELLATION_LIMIT = 1e3


@dataclass(frozen=True)
class CartesianArg:
    """z = x + iy with cached |z|^2 and principal argument."""

    x: float
    y: float
    mod2: float
    phi: float

    @classmethod
    def from_xy(cls, x: float, y: float) -> "CartesianArg":
        x, y = float(x), float(y)
        return cls(x, y, x * x + y * y, math.atan2(y, x))

    @classmethod
    def from_complex(cls, z: complex) -> "CartesianArg":
        z = complex(z)
        return cls.from_xy(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @property
    def modulus(self) -> float:
        return math.hypot(self.x, self.y)


ArgLike = Union[CartesianArg, complex, float]


def _cart(z: ArgLike) -> CartesianArg:
    return z if isinstance(z, CartesianArg) else CartesianArg.from_complex(z)


def _check_disk(a, b, c, z: CartesianArg):
    if is_nonpos_int(c):
        raise DomainError(f"c = {c} is a non-positive integer")
    r = z.modulus
    if r > 1 or (r == 1 and c - a - b <= 0):
        raise DomainError("needs |z| < 1, or |z| = 1 with c - a - b > 0")


class _Accumulator:
    """Running sum with the stopping rule used by every series here."""

    def __init__(self, rho: float, tol: float, balance: float = 1.0):
        self.rho = rho
        self.tol = tol
        self.balance = balance
        self.S = 0.0
        self.abs_sum = 0.0
        self.small = 0
        self.k = 0

    def add(self, term: float) -> bool:
        """Add a term; True once the sum has converged."""
        self.S += term
        self.abs_sum += abs(term)
        self.k += 1
        floor = max(self.tol * abs(self.S), EPS * self.abs_sum)
        self.small = self.small + 1 if abs(term) <= floor else 0
        if self.small < 3:
            return False
        if self.rho < 1:
            tail = abs(term) * self.rho / (1 - self.rho)
        else:
            tail = abs(term) * self.k / self.balance
        return tail <= floor

    def condition(self) -> float:
        return self.abs_sum / abs(self.S) if self.S != 0 else math.inf


def _iterate(acc: _Accumulator, term_fn, what: str):
    cap = term_cap()
    for k in range(cap):
        if acc.add(term_fn(k)):
            return acc
    raise NoConvergence(f"{what} hit the term cap", partial=acc.S)


def _gauss_coefs(a, b, c):
    """Yields (a)_k (b)_k / ((c)_k k!) for k = 0, 1, ..."""
    coef = 1.0
    k = 0
    while True:
        yield coef
        coef *= (a + k) * (b + k) / ((c + k) * (k + 1))
        k += 1


# ---------------------------------------------------------------------------
# polar series

def re_im_polar(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """(X, Y) by summing the defining series with |z|^k cos(k phi), |z|^k sin(k phi)."""
    z = _cart(z)
    _check_disk(a, b, c, z)
    r = z.modulus
    if r == 0:
        return 1.0, 0.0
    coefs = _gauss_coefs(a, b, c)
    X = Y = 0.0
    major = 0.0
    small = 0
    balance = c - a - b
    for k in range(term_cap()):
        t = next(coefs) * r**k
        X += t * math.cos(k * z.phi)
        Y += t * math.sin(k * z.phi)
        major += abs(t)
        # |t| majorizes both components
        floor = max(tol * min(abs(X), abs(Y) or abs(X)), EPS * major)
        small = small + 1 if abs(t) <= floor else 0
        if small >= 3:
            tail = abs(t) * (r / (1 - r) if r < 1 else k / balance)
            if tail <= floor:
                return X, Y
    raise NoConvergence("polar series hit the term cap", partial=(X, Y))


# ---------------------------------------------------------------------------
# series in |z|^2/x with 2F1 coefficients

def _re_power(k: int, x: float, y: float) -> float:
    """Re (x+iy)^k as (|z|^2/x)^k 2F1(k/2, (k+1)/2; 1/2; -y^2/x^2)."""
    s = (x * x + y * y) / x
    f = eval_2f1(k / 2, (k + 1) / 2, 0.5, -(y / x) ** 2).real
    return s**k * f


def _im_power(k: int, x: float, y: float) -> float:
    """Im (x+iy)^k as (y/x) k (|z|^2/x)^k 2F1((k+1)/2, k/2+1; 3/2; -y^2/x^2)."""
    if k == 0:
        return 0.0
    s = (x * x + y * y) / x
    f = eval_2f1((k + 1) / 2, k / 2 + 1, 1.5, -(y / x) ** 2).real
    return (y / x) * k * s**k * f


def _warn_cancellation(acc: _Accumulator, what: str):
    if acc.condition() > CANCELLATION_LIMIT:
        warnings.warn(f"{what}: alternating terms cancel by a factor {acc.condition():.3g}",
                      PrecisionLoss, stacklevel=3)


def _gauss_series_rotated(a, b, c, z: CartesianArg, tol, want_real: bool) -> float:
    # z = -i w with w = iz = -y + ix, so |Im w| <= |Re w| when |y| > |x|
    xw, yw = -z.y, z.x
    coefs = _gauss_coefs(a, b, c)
    acc = _Accumulator(z.modulus, tol, c - a - b)

    def term(k):
        co = next(coefs)
        m = k % 4
        # Re/Im of (-i)^k w^k in terms of Re w^k and Im w^k
        if want_real:
            if m == 0:
                return co * _re_power(k, xw, yw)
            if m == 1:
                return co * _im_power(k, xw, yw)
            if m == 2:
                return -co * _re_power(k, xw, yw)
            return -co * _im_power(k, xw, yw)
        if m == 0:
            return co * _im_power(k, xw, yw)
        if m == 1:
            return -co * _re_power(k, xw, yw)
        if m == 2:
            return -co * _im_power(k, xw, yw)
        return co * _re_power(k, xw, yw)

    _iterate(acc, term, "rotated series")
    return acc.S


def re_2f1_gauss_series(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """X = sum_k (a)_k (b)_k/((c)_k k!) (|z|^2/x)^k 2F1(k/2, (k+1)/2; 1/2; -y^2/x^2)."""
    z = _cart(z)
    _check_disk(a, b, c, z)
    if z.mod2 == 0:
        return 1.0
    if abs(z.y) > abs(z.x):
        return _gauss_series_rotated(a, b, c, z, tol, True)
    coefs = _gauss_coefs(a, b, c)
    acc = _Accumulator(z.modulus, tol, c - a - b)
    _iterate(acc, lambda k: next(coefs) * _re_power(k, z.x, z.y), "X series")
    if z.x < 0:
        _warn_cancellation(acc, "X series")
    return acc.S


def im_2f1_gauss_series(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Y = y (|z|^2/x^2)(ab/c) sum_k (a+1)_k (b+1)_k/((c+1)_k k!) (|z|^2/x)^k
    2F1((k+2)/2, (k+3)/2; 3/2; -y^2/x^2)."""
    z = _cart(z)
    _check_disk(a, b, c, z)
    if z.y == 0:
        return 0.0
    if abs(z.y) > abs(z.x):
        return _gauss_series_rotated(a, b, c, z, tol, False)
    x, y = z.x, z.y
    s = z.mod2 / x
    tau2 = -(y / x) ** 2
    coefs = _gauss_coefs(a + 1, b + 1, c + 1)
    acc = _Accumulator(z.modulus, tol, c - a - b)

    def term(k):
        f = eval_2f1((k + 2) / 2, (k + 3) / 2, 1.5, tau2).real
        return next(coefs) * s**k * f

    _iterate(acc, term, "Y series")
    if x < 0:
        _warn_cancellation(acc, "Y series")
    return y * z.mod2 / (x * x) * (a * b / c) * acc.S


# ---------------------------------------------------------------------------
# series in -y^2/x^2 with 3F2 coefficients

def _w_series(a, b, c, z: CartesianArg, tol, shift: int) -> float:
    x, y = z.x, z.y
    if x == 0:
        raise DomainError("the 3F2 series needs x != 0")
    s = z.mod2 / x
    tau = abs(y / x)
    rho = abs(s) + tau
    if rho >= 1:
        raise DomainError("the 3F2 series needs |z|^2/|x| + |y/x| < 1")
    acc = _Accumulator(tau * tau / (1 - abs(s)) ** 2, tol)

    def term(k):
        f = eval_pfq(HyperParams((a + 1, b + 1, 2 * k + shift), (c + 1, 2)), s, tol).real
        return f * (-tau * tau) ** k

    _iterate(acc, term, "3F2 series")
    if x < 0:
        _warn_cancellation(acc, "3F2 series")
    return acc.S


def re_2f1_3f2_series(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """X = 1 + (|z|^2/x)(ab/c) sum_k 3F2(a+1, b+1, 2k+1; c+1, 2; |z|^2/x)(-y^2/x^2)^k."""
    z = _cart(z)
    _check_disk(a, b, c, z)
    if z.mod2 == 0:
        return 1.0
    return 1 + z.mod2 / z.x * (a * b / c) * _w_series(a, b, c, z, tol, 1)


def im_2f1_3f2_series(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Y = y (|z|^2/x^2)(ab/c) sum_k 3F2(a+1, b+1, 2k+2; c+1, 2; |z|^2/x)(-y^2/x^2)^k."""
    z = _cart(z)
    _check_disk(a, b, c, z)
    if z.y == 0:
        return 0.0
    return z.y * z.mod2 / (z.x * z.x) * (a * b / c) * _w_series(a, b, c, z, tol, 2)


# ---------------------------------------------------------------------------
# Laplace-type integrals

LAPLACE_MARGIN = 1e-3


def _laplace(a, b, c, z: CartesianArg, tol, kind: str) -> float:
    x, y, r2 = z.x, z.y, z.mod2
    if not (x > 0 and x - r2 > LAPLACE_MARGIN * x):
        raise DomainError("the Laplace representation needs x > 0 and |z|^2 < x")
    if a * b == 0 or r2 == 0:
        return 1.0 if kind == "cos" else 0.0
    if kind == "sin" and y == 0:
        return 0.0
    params = HyperParams((a + 1, b + 1), (c + 1, 2))
    decay = x - r2

    def f(t):
        # exp(-x t) 2F2(|z|^2 t) with the exponential growth of 2F2 divided out
        return math.exp(-decay * t) * float(eval_pfq_scaled(params, [r2 * t])[0])

    epsabs = max(tol, 1e-14) * 1e-2
    if y == 0:
        val, err = integrate.quad(f, 0, math.inf, epsabs=epsabs, epsrel=max(tol, 1e-13), limit=500)
    else:
        val, err = integrate.quad(f, 0, math.inf, weight=kind, wvar=abs(y), epsabs=epsabs, limlst=200)
        if kind == "sin" and y < 0:
            val = -val
    pref = r2 * a * b / c
    if abs(pref) * err > max(tol * 1e2 * abs(pref * val), 1e-12):
        raise QuadratureError(f"Laplace integral error {err:.3g} above tolerance",
                              partial=pref * val)
    return (1.0 + pref * val) if kind == "cos" else pref * val


def re_2f1_laplace(a: float, b: float, c: float, z: ArgLike, tol: float = 1e-10) -> float:
    """X = 1 + |z|^2 (ab/c) int_0^inf exp(-xt) cos(yt) 2F2(a+1, b+1; c+1, 2; |z|^2 t) dt."""
    return _laplace(a, b, c, _cart(z), tol, "cos")


def im_2f1_laplace(a: float, b: float, c: float, z: ArgLike, tol: float = 1e-10) -> float:
    """Y = |z|^2 (ab/c) int_0^inf exp(-xt) sin(yt) 2F2(a+1, b+1; c+1, 2; |z|^2 t) dt."""
    return _laplace(a, b, c, _cart(z), tol, "sin")


# ---------------------------------------------------------------------------
# Horn H4 bridges

def _h4_args(z: CartesianArg):
    if z.x == 0:
        raise DomainError("H4 representation needs x != 0")
    return -(z.y * z.y) / (4 * z.x * z.x), z.mod2 / z.x


def re_2f1_b1_h4(a: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Re 2F1(a, 1; c; z) = 1 + (a/c)(|z|^2/x) H4(1, a+1; 1/2, c+1; -y^2/4x^2, |z|^2/x)."""
    z = _cart(z)
    u, s = _h4_args(z)
    h = eval_h4(1, a + 1, 0.5, c + 1, u, s, tol)
    return 1 + (a / c) * s * h.real


def im_2f1_b1_h4(a: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Im 2F1(a, 1; c; z) = (a/c)(y|z|^2/x^2) H4(2, a+1; 3/2, c+1; -y^2/4x^2, |z|^2/x)."""
    z = _cart(z)
    u, s = _h4_args(z)
    if z.y == 0:
        return 0.0
    h = eval_h4(2, a + 1, 1.5, c + 1, u, s, tol)
    return (a / c) * z.y * z.mod2 / (z.x * z.x) * h.real


def _rotor(x: float, sign: int) -> complex:
    if x < 0:
        raise DomainError("needs x >= 0")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return complex(1.0, sign * 2 * math.sqrt(x))


def h4_gamma_half(alpha: float, beta: float, delta: float, x: float, y: float, sign: int = 1,
                  tol: float = DEFAULT_TOL) -> float:
    """H4(alpha, beta; 1/2, delta; -x, y) = Re w^-alpha 2F1(alpha, beta; delta; y/w), w = 1 +- 2i sqrt x."""
    w = _rotor(x, sign)
    f = eval_2f1(alpha, beta, delta, y / w, tol)
    return (cpow(w, -alpha) * f.value).real


def h4_gamma_three_half(alpha: float, beta: float, delta: float, x: float, y: float, sign: int = 1,
                        tol: float = DEFAULT_TOL) -> float:
    """H4(alpha, beta; 3/2, delta; -x, y) =
    -+ Im[w^(1-alpha) 2F1(alpha-1, beta; delta; y/w)] / (2 (alpha-1) sqrt x)."""
    if alpha == 1:
        raise DomainError("the gamma = 3/2 closed form divides by alpha - 1")
    if x <= 0:
        raise DomainError("the gamma = 3/2 closed form needs x > 0")
    w = _rotor(x, sign)
    f = eval_2f1(alpha - 1, beta, delta, y / w, tol)
    return -sign * (cpow(w, 1 - alpha) * f.value).imag / (2 * (alpha - 1) * math.sqrt(x))


def re_za_2f1_h4(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Re[z^a 2F1(a, b; c; z)] through (|z|^2/x)^a H4(a, b; 1/2, c; -y^2/4x^2, |z|^2/x)."""
    z = _cart(z)
    if z.x <= 0:
        raise DomainError("needs Re z > 0")
    u, s = _h4_args(z)
    h = eval_h4(a, b, 0.5, c, u, s, tol)
    return s**a * h.real


def re_za_2f1_direct(a: float, b: float, c: float, z: ArgLike, tol: float = DEFAULT_TOL) -> float:
    """Re[z^a 2F1(a, b; c; z)] from the principal power and eval_2f1."""
    z = _cart(z)
    return (cpow(z.z, a) * eval_2f1(a, b, c, z.z, tol).value).real
