"""Gamma, Pochhammer and generalized hypergeometric series.

All arithmetic is binary64 with real parameters and a complex argument.
Fractional powers use the principal branch, Arg in (-pi, pi].
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, NoConvergence, PoleError

EPS = 2.220446049250313e-16
DEFAULT_TOL = 1e-15
DEFAULT_MAX_TERMS = 10**6
# |z| beyond which the direct 2F1 series is replaced by a transformation
DISK_RADIUS = 0.8
# minimal distance of c-a-b from an integer for the 1-z connection formula
CONNECTION_GAP = 0.05


def term_cap() -> int:
    """Series term cap, overridable through the LIFSH_MAX_TERMS variable."""
    raw = os.environ.get("LIFSH_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        cap = int(float(raw))
    except ValueError:
        raise DomainError(f"LIFSH_MAX_TERMS must be an integer, got {raw!r}")
    if cap < 1:
        raise DomainError("LIFSH_MAX_TERMS must be positive")
    return cap


@dataclass(frozen=True)
class SeriesResult:
    """Value of a series (or series-derived) evaluation with its error estimate."""

    value: complex
    abs_err: float
    terms_used: int
    converged: bool = True
    route: str = "series"

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def scaled(self, factor: complex, route: Optional[str] = None) -> "SeriesResult":
        """Multiply value and error by ``factor``, adding one rounding of the product."""
        v = self.value * factor
        err = abs(factor) * self.abs_err + EPS * abs(v)
        return SeriesResult(v, err, self.terms_used, self.converged, route or self.route)


def is_nonpos_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HyperParams:
    """Numerator and denominator parameters of a pFq series."""

    numerators: tuple
    denominators: tuple

    def __init__(self, numerators: Iterable[float], denominators: Iterable[float]):
        num = tuple(float(a) for a in numerators)
        den = tuple(float(b) for b in denominators)
        for b in den:
            if is_nonpos_int(b):
                raise PoleError(f"denominator parameter {b} is a non-positive integer")
        object.__setattr__(self, "numerators", num)
        object.__setattr__(self, "denominators", den)

    def polynomial_degree(self) -> Optional[int]:
        """Degree when a numerator is a non-positive integer, else None."""
        degs = [int(-a) for a in self.numerators if is_nonpos_int(a)]
        return min(degs) if degs else None


def pochhammer(lam: float, n: int) -> float:
    """Rising factorial (lam)_n with (lam)_0 = 1 for every lam."""
    if n < 0 or int(n) != n:
        raise DomainError("pochhammer needs a non-negative integer n")
    out = 1.0
    for j in range(int(n)):
        out *= lam + j
        if math.isinf(out):
            raise NoConvergence(f"({lam})_{n} overflows binary64", partial=out)
    return out


def gamma_real(x: float) -> float:
    """Gamma function of a real argument."""
    if is_nonpos_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        raise DomainError(f"Gamma({x}) overflows binary64")


def rgamma(x: float) -> float:
    """Reciprocal Gamma, an entire function: zero at the poles of Gamma."""
    if is_nonpos_int(x):
        return 0.0
    try:
        return 1.0 / math.gamma(x)
    except OverflowError:
        return 0.0


def cexpm1(w: complex) -> complex:
    """exp(w) - 1 without cancellation for small |w|."""
    u, v = w.real, w.imag
    em = math.expm1(u)
    cm1 = -2.0 * math.sin(0.5 * v) ** 2
    return complex(em * math.cos(v) + cm1, math.exp(u) * math.sin(v))


def cpow(base: complex, expo: float) -> complex:
    """Principal power base**expo."""
    if base == 0:
        if expo > 0:
            return 0j
        if expo == 0:
            return 1 + 0j
        raise DomainError("zero raised to a non-positive power")
    return cmath.exp(expo * cmath.log(base))


# ---------------------------------------------------------------------------
# pFq by term-ratio recurrence

def _sum_series(num: Sequence[float], den: Sequence[float], z: complex, tol: float,
                cap: int, degree: Optional[int], balance: Optional[float],
                drop_leading: bool = False) -> SeriesResult:
    # balance = sum(den) - sum(num) for r = s+1 series, else None
    az = abs(z)
    S = 0j if drop_leading else 1 + 0j
    t = 1 + 0j
    abs_sum = 0.0 if drop_leading else 1.0
    small = 0
    n = 0
    while True:
        if degree is not None and n >= degree:
            return SeriesResult(S, 2 * EPS * abs_sum * (1 + n), n + 1, True, "polynomial")
        if n + 1 >= cap:
            part = SeriesResult(S, float("inf"), n + 1, False)
            raise NoConvergence(f"series hit the term cap {cap}", partial=part)
        ratio = z / (n + 1)
        for a in num:
            ratio *= a + n
        for b in den:
            ratio /= b + n
        t *= ratio
        n += 1
        S += t
        at = abs(t)
        abs_sum += at
        floor = max(tol * abs(S), EPS * abs_sum)
        if at <= floor:
            small += 1
        else:
            small = 0
        if small < 3 or degree is not None:
            continue
        # bound the remainder before accepting
        rho = az / (n + 1)
        for a in num:
            rho *= abs(a + n)
        for b in den:
            rho /= abs(b + n)
        if balance is not None:
            if az < 1:
                rho = max(rho, az)
            else:
                tail = at * n / balance
                if tail <= floor:
                    return SeriesResult(S, tail + 2 * EPS * abs_sum, n + 1, True, "direct")
                continue
        if rho < 1:
            tail = at * rho / (1 - rho)
            if tail <= floor:
                return SeriesResult(S, tail + 2 * EPS * abs_sum, n + 1, True, "direct")


def eval_pfq(params: HyperParams, z: complex, tol: float = DEFAULT_TOL,
             max_terms: Optional[int] = None, drop_leading: bool = False) -> SeriesResult:
    """Sum the pFq series at complex ``z`` inside its disk of convergence.

    With ``drop_leading`` the n = 0 term is left out, so pFq - 1 keeps its
    full relative accuracy when it is small.
    """
    if not isinstance(params, HyperParams):
        params = HyperParams(*params)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("non-finite argument")
    if z == 0:
        return SeriesResult(0j if drop_leading else 1 + 0j, 0.0, 1, True, "trivial")
    cap = max_terms if max_terms is not None else term_cap()
    num, den = params.numerators, params.denominators
    degree = params.polynomial_degree()
    r, s = len(num), len(den)
    balance = None
    if r == s + 1:
        balance = sum(den) - sum(num)
    if degree is None:
        if r > s + 1:
            raise DomainError(f"{r}F{s} diverges for every z != 0")
        if r == s + 1:
            az = abs(z)
            if az > 1 or (az == 1 and balance <= 0):
                raise DomainError(f"|z| = {az} outside the convergence disk of {r}F{s}")
    return _sum_series(num, den, z, tol, cap, degree, balance, drop_leading)


# ---------------------------------------------------------------------------
# 2F1 with transformations

def _quadratic_closed_form(a: float, b: float, c: float, z: complex) -> Optional[SeriesResult]:
    """F(mu, mu+1/2; 1/2 or 3/2; z) in elementary form, else None."""
    if c not in (0.5, 1.5):
        return None
    if b - a == 0.5:
        mu = a
    elif a - b == 0.5:
        mu = b
    else:
        return None
    if z.imag == 0 and z.real >= 1:
        return None
    w = cmath.sqrt(z)
    lp = cmath.log(1 + w)
    lm = cmath.log(1 - w)
    if c == 0.5:
        t1 = cmath.exp(-2 * mu * lp)
        t2 = cmath.exp(-2 * mu * lm)
        val = 0.5 * (t1 + t2)
        scale = abs(t1) + abs(t2)
        err = EPS * scale * (4 + abs(2 * mu) * max(abs(lp), abs(lm)))
        return SeriesResult(val, err, 1, True, "quadratic")
    nu = 1 - 2 * mu
    d = 2 * cmath.atanh(w) if abs(w) < 0.5 else lp - lm
    if nu == 0:
        val = d / (2 * w)
        return SeriesResult(val, 4 * EPS * abs(val), 1, True, "quadratic")
    x = nu * d
    if x.real > 700:
        val = (cmath.exp(nu * lp) - cmath.exp(nu * lm)) / (2 * w * nu)
    else:
        val = cmath.exp(nu * lm) * cexpm1(x) / (2 * w * nu)
    big = (abs(cmath.exp(nu * lp)) + abs(cmath.exp(nu * lm))) / abs(2 * w * nu)
    err = EPS * (4 * abs(val) + big * (1 + abs(nu) * max(abs(lp), abs(lm))) * min(1.0, abs(x)))
    return SeriesResult(val, err, 1, True, "quadratic")


def _gauss_sum(a: float, b: float, c: float) -> SeriesResult:
    d = c - a - b
    if d <= 0:
        raise DomainError("2F1 at z = 1 needs c - a - b > 0")
    val = gamma_real(c) * gamma_real(d) * rgamma(c - a) * rgamma(c - b)
    return SeriesResult(complex(val), 8 * EPS * abs(val), 1, True, "gauss_sum")


def _connection(a: float, b: float, c: float, z: complex, tol: float) -> SeriesResult:
    # expansion around z = 1, valid for non-integer c - a - b
    d = c - a - b
    w = 1 - z
    f1 = eval_pfq(HyperParams((a, b), (1 - d,)), w, tol)
    f2 = eval_pfq(HyperParams((c - a, c - b), (1 + d,)), w, tol)
    gc = gamma_real(c)
    g1 = gc * gamma_real(d) * rgamma(c - a) * rgamma(c - b)
    g2 = gc * gamma_real(-d) * rgamma(a) * rgamma(b)
    pw = cpow(w, d)
    t1 = g1 * f1.value
    t2 = g2 * pw * f2.value
    val = t1 + t2
    err = (abs(g1) * f1.abs_err + abs(g2 * pw) * f2.abs_err
           + 8 * EPS * (abs(t1) + abs(t2)))
    return SeriesResult(val, err, f1.terms_used + f2.terms_used, True, "connection")


def _f21_disk(a: float, b: float, c: float, z: complex, tol: float) -> SeriesResult:
    az = abs(z)
    if az > DISK_RADIUS and abs(1 - z) < az:
        d = c - a - b
        if abs(d - round(d)) > CONNECTION_GAP:
            return _connection(a, b, c, z, tol)
    res = eval_pfq(HyperParams((a, b), (c,)), z, tol)
    return res


def _negativity(*params: float) -> float:
    return sum(max(0.0, -p) for p in params)


def eval_2f1(a: float, b: float, c: float, z: complex, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Gauss hypergeometric function 2F1(a, b; c; z), principal branch.

    Evaluation order: polynomial case, elementary closed forms for the
    (mu, mu+1/2; 1/2 or 3/2) family, Gauss summation at z = 1, the Pfaff map
    z -> z/(z-1) when it shrinks |z| (always for Re z < 0), then the direct
    series or the expansion around z = 1 inside the unit disk.
    """
    a, b, c = float(a), float(b), float(c)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("non-finite argument")
    if is_nonpos_int(c):
        raise PoleError(f"2F1 with c = {c} is undefined")
    if z == 0:
        return SeriesResult(1 + 0j, 0.0, 1, True, "trivial")
    if is_nonpos_int(a) or is_nonpos_int(b):
        return eval_pfq(HyperParams((a, b), (c,)), z, tol)
    closed = _quadratic_closed_form(a, b, c, z)
    if closed is not None:
        return closed
    if z == 1:
        return _gauss_sum(a, b, c)
    if abs(z - 1) > 1 and (z.real < 0 or abs(z) > DISK_RADIUS):
        w = z / (z - 1)
        if abs(w) >= 1:
            raise DomainError(f"2F1 argument {z} is not reachable by the implemented maps")
        # keep the parameter whose partner introduces less sign alternation
        if _negativity(a, c - b) <= _negativity(b, c - a):
            lead, other = a, c - b
        else:
            lead, other = b, c - a
        inner = _f21_disk(lead, other, c, w, tol)
        fac = cpow(1 - z, -lead)
        return inner.scaled(fac, "pfaff+" + inner.route)
    if abs(z) >= 1:
        raise DomainError(f"|z| = {abs(z)} outside the implemented region of 2F1")
    return _f21_disk(a, b, c, z, tol)


# ---------------------------------------------------------------------------
# vectorized exponentially scaled pFq for real non-negative arguments

def eval_pfq_scaled(params: HyperParams, w, tol: float = 1e-16) -> np.ndarray:
    """exp(-w) * pFq(w) for an array of real w >= 0 (r <= s).

    Terms are accumulated in log-magnitude form so the result stays finite
    even where pFq itself overflows.
    """
    if not isinstance(params, HyperParams):
        params = HyperParams(*params)
    num, den = params.numerators, params.denominators
    if len(num) > len(den):
        raise DomainError("scaled evaluation is for r <= s only")
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise DomainError("scaled evaluation needs w >= 0")
    with np.errstate(divide="ignore"):
        logw = np.log(w)
    logt = -w.copy()
    sign = 1.0
    total = np.exp(logt)
    wmax = float(w.max()) if w.size else 0.0
    cap = term_cap()
    small = 0
    n = 0
    while True:
        ratio = 1.0 / (n + 1)
        for a in num:
            ratio *= a + n
        for b in den:
            ratio /= b + n
        n += 1
        if ratio == 0:
            break
        sign *= math.copysign(1.0, ratio)
        logt = logt + math.log(abs(ratio)) + logw
        term = sign * np.exp(logt)
        total = total + term
        if n > wmax and np.all(np.abs(term) <= tol * np.abs(total) + 1e-300):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        if n >= cap:
            raise NoConvergence("scaled series hit the term cap", partial=total)
    return total
