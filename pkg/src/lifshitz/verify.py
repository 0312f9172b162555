"""Identity and oracle checks grouped into named suites.

Each check compares two independently computed numbers.  A check passes when
either the absolute or the relative deviation is within the tolerance.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import complex_expansion as cx
from . import feynman as fy
from . import multivar_hyper as mh
from . import oracle
from .hyper_core import eval_2f1


@dataclass
class VerifyReport:
    name: str
    lhs: complex
    rhs: complex
    abs_dev: float
    rel_dev: float
    tol: float
    passed: bool
    route_labels: Tuple[str, str]
    error: Optional[str] = None

    @classmethod
    def compare(cls, name, lhs, rhs, tol, routes=("lhs", "rhs")):
        lhs, rhs = complex(lhs), complex(rhs)
        abs_dev = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_dev = abs_dev / scale if scale > 0 else 0.0
        ok = bool(abs_dev <= tol or rel_dev <= tol)
        return cls(name, lhs, rhs, abs_dev, rel_dev, tol, ok, tuple(routes))

    @classmethod
    def failed(cls, name, tol, routes, exc):
        nan = complex(math.nan)
        return cls(name, nan, nan, math.inf, math.inf, tol, False, tuple(routes),
                   f"{type(exc).__name__}: {exc}")

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs"):
            v = d[key]
            d[key] = [v.real, v.imag]
        d["pass"] = d.pop("passed")
        d["route_labels"] = list(self.route_labels)
        return d


def _check(out: List[VerifyReport], name: str, tol: float, routes, fl: Callable, fr: Callable):
    try:
        out.append(VerifyReport.compare(name, fl(), fr(), tol, routes))
    except Exception as exc:  # a route that raises is a failed check, not a crash
        out.append(VerifyReport.failed(name, tol, routes, exc))


def _rng(seed):
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------

def suite_inner_integrals(tol: float = 1e-8) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    rng = _rng(11)
    closed = {1: fy.inner_j1, 2: fy.inner_j2, 3: fy.inner_j3}
    for D, fn in closed.items():
        for _ in range(5):
            p = float(rng.uniform(0.1, 2.0))
            k = (float(rng.uniform(0.2, 2.0)), float(rng.uniform(0.2, 2.0)))
            _check(out, f"J{D} closed vs F1 p={p:.3f} k={k[0]:.3f},{k[1]:.3f}", tol,
                   (f"j{D}", "jd_f1"), lambda: fn(p, k), lambda: fy.inner_jd_f1(D, p, k))
    for D in (1.0, 1.5, 2.0):
        for p, k in [(0.5, (1.0, 1.3)), (0.8, (0.6, 0.9)), (1.2, (1.0, 1.0))]:
            _check(out, f"KSS vs F1 D={D} p={p}", tol, ("jd_kss", "jd_f1"),
                   lambda: fy.inner_jd_kss(D, p, k), lambda: fy.inner_jd_f1(D, p, k))
    for p, kap in [(1.0, 2.0), (0.3, 0.5), (2.5, 1.0)]:
        _check(out, f"zero mass D=3 p={p} k={kap}", tol, ("jd_zero_mass", "j3"),
               lambda: fy.inner_jd_zero_mass(3, p, kap), lambda: fy.inner_j3(p, (0.0, kap)))
    return out


def suite_main_result(tol: float = 1e-8) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    for m in (2.5, 3.3, 4.8, 5.5):
        for p, q in [(0.6, 1.2), (1.0, 0.5), (2.0, 2.0)]:
            pt = (m, p, q)
            _check(out, f"reduced vs Gamma form m={m} p={p} q={q}", tol, ("i1m", "gamma_form"),
                   lambda: fy.i1m(pt), lambda: fy.i1m_gamma_form(pt))
    for m in (2.5, 3.5, 4.5, 5.0):
        for u in (0.2, 0.5, 1.0):
            q = 1.1
            pt = (m, u * q * q, q)
            _check(out, f"Horn single series m={m} u={u}", tol, ("i1m", "i1m_via_h4"),
                   lambda: fy.i1m(pt), lambda: fy.i1m_via_h4(pt))
    lam = 2.7
    for m, p, q in [(3.4, 0.8, 1.1), (4.0, 0.5, 0.7), (5.6, 1.3, 0.4)]:
        e = m / 2 - 1
        _check(out, f"homogeneity m={m} p={p} q={q}", tol, ("scaled", "power"),
               lambda: fy.i1m_hat((m, lam * p, math.sqrt(lam) * q)),
               lambda: lam ** (e - 2) * fy.i1m_hat((m, p, q)))
    return out


def suite_special_cases(tol: float = 1e-8) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    grid = [0.3, 0.9, 1.7, 3.0]
    for m in (2, 3, 4, 5, 6):
        for p in grid:
            for q in grid:
                _check(out, f"m={m} p={p} q={q}", tol, ("i1m_hat", f"special_m{m}"),
                       lambda: fy.i1m_hat((m, p, q)), lambda: fy.special_hat(m, p, q))
    for q in (0.5, 1.0, 2.0):
        _check(out, f"I14(1,q) q={q}", tol, ("i14_closed", "c1*special_m4"),
               lambda: fy.i14_closed(q), lambda: fy.c1_constant(1.0) * fy.special_m4(1.0, q))
        _check(out, f"I31(1,q) q={q}", tol, ("i31_closed", "i3m"),
               lambda: fy.i31_closed(q), lambda: fy.i3m(1.0, 1.0, q))
    return out


def _random_disk_points(rng, n, rmax=0.8, xmin=0.05):
    pts = []
    while len(pts) < n:
        r = rng.uniform(0.05, rmax)
        th = rng.uniform(-math.pi / 2, math.pi / 2)
        z = complex(r * math.cos(th), r * math.sin(th))
        if z.real > xmin:
            pts.append(z)
    return pts


def _random_params(rng):
    return (float(rng.uniform(0.2, 2.0)), float(rng.uniform(0.2, 2.0)), float(rng.uniform(0.5, 3.0)))


def suite_complex_expansion(tol: float = 1e-8) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    rng = _rng(23)
    for z in _random_disk_points(rng, 8):
        a, b, c = _random_params(rng)
        ref = lambda: eval_2f1(a, b, c, z).value
        _check(out, f"polar z={z:.3f}", tol, ("re_im_polar", "eval_2f1"),
               lambda: complex(*cx.re_im_polar(a, b, c, z)), ref)
        _check(out, f"Gauss-coefficient series z={z:.3f}", tol, ("gauss_series", "eval_2f1"),
               lambda: complex(cx.re_2f1_gauss_series(a, b, c, z), cx.im_2f1_gauss_series(a, b, c, z)),
               ref)
    for _ in range(6):
        x = float(rng.uniform(0.1, 0.7))
        y = float(rng.uniform(-0.25, 0.25)) * x
        z = complex(x, y)
        a, b, c = _random_params(rng)
        ref = lambda: eval_2f1(a, b, c, z).value
        _check(out, f"3F2 series z={z:.3f}", tol, ("3f2_series", "eval_2f1"),
               lambda: complex(cx.re_2f1_3f2_series(a, b, c, z), cx.im_2f1_3f2_series(a, b, c, z)), ref)
        _check(out, f"Laplace z={z:.3f}", max(tol, 1e-6), ("laplace", "eval_2f1"),
               lambda: complex(cx.re_2f1_laplace(a, b, c, z), cx.im_2f1_laplace(a, b, c, z)), ref)
    return out


def suite_horn_bridges(tol: float = 1e-9) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    rng = _rng(37)
    for k in range(6):
        al, be, de = float(rng.uniform(1.2, 3.0)), float(rng.uniform(0.3, 2.0)), float(rng.uniform(0.8, 3.0))
        x = float(rng.uniform(0.005, 0.05))
        y = float(rng.uniform(-1, 1)) * (0.85 - 2 * math.sqrt(x))
        for sign in (1, -1):
            _check(out, f"gamma=1/2 #{k} sign={sign:+d}", tol, ("h4_gamma_half", "eval_h4"),
                   lambda: cx.h4_gamma_half(al, be, de, x, y, sign),
                   lambda: mh.eval_h4(al, be, 0.5, de, -x, y).value)
            _check(out, f"gamma=3/2 #{k} sign={sign:+d}", tol, ("h4_gamma_three_half", "eval_h4"),
                   lambda: cx.h4_gamma_three_half(al, be, de, x, y, sign),
                   lambda: mh.eval_h4(al, be, 1.5, de, -x, y).value)
    for k in range(5):
        # the bridge needs |z|^2 <= |x|
        x = float(rng.choice([-1, 1]) * rng.uniform(0.2, 0.6))
        z = complex(x, float(rng.uniform(-1, 1)) * math.sqrt(0.9 * abs(x) - x * x))
        a, c = float(rng.uniform(0.3, 2.0)), float(rng.uniform(0.8, 3.0))
        ref = lambda: eval_2f1(a, 1.0, c, z).value
        _check(out, f"b=1 real part #{k}", tol, ("re_2f1_b1_h4", "eval_2f1"),
               lambda: cx.re_2f1_b1_h4(a, c, z), lambda: ref().real)
        _check(out, f"b=1 imaginary part #{k}", tol, ("im_2f1_b1_h4", "eval_2f1"),
               lambda: cx.im_2f1_b1_h4(a, c, z), lambda: ref().imag)
    for k in range(5):
        al, be, ga, de = (float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.3, 2.0)),
                          float(rng.uniform(0.8, 2.5)), float(rng.uniform(0.8, 2.5)))
        s = float(rng.uniform(0.002, 0.03))
        t = float(rng.uniform(-1, 1)) * (0.8 - 2 * math.sqrt(s))
        ref = lambda: mh.eval_h4(al, be, ga, de, s, t).value
        _check(out, f"t-series #{k}", tol, ("single_series", "double_series"),
               lambda: mh.h4_single_series(al, be, ga, de, s, t).value, ref)
        _check(out, f"s-series #{k}", tol, ("s_series", "double_series"),
               lambda: mh.h4_dx_series(al, be, ga, de, s, t).value, ref)
        _check(out, f"via F2 #{k}", tol, ("via_f2", "double_series"),
               lambda: mh.h4_via_f2(al, be, ga, de, s, t).value, ref)
        ga4 = al - be + 1
        if ga4 > 0:
            _check(out, f"via F4 #{k}", tol, ("via_f4", "double_series"),
                   lambda: mh.h4_via_f4(al, be, de, s, t).value,
                   lambda: mh.eval_h4(al, be, ga4, de, s, t).value)
    return out


F1_TRANSFORM_CONFIGS = [
    (1.0, 1.5, 0.3, 0.9), (1.0, 0.5, 0.2, 1.1), (1.3, 0.7, 0.5, 0.8),
    (0.8, 1.2, 0.4, 0.9), (1.5, 0.6, 0.25, 1.0), (0.7, 0.4, 0.35, 0.95),
    (1.2, 1.1, 0.45, 0.75), (0.9, 0.8, 0.15, 1.2), (1.1, 1.4, 0.55, 0.7),
    (1.4, 0.9, 0.3, 1.05),
]


def suite_f1_transform(tol: float = 1e-8) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    for a, b, x, y in F1_TRANSFORM_CONFIGS:
        pair = {}

        def both():
            if not pair:
                pair["lr"] = mh.f1_quadratic_transform_pair(a, b, x, y)
            return pair["lr"]

        _check(out, f"a={a} b={b} x={x} y={y}", tol, ("reciprocal_roots", "transformed"),
               lambda: both()[0].value, lambda: both()[1].value)
    return out


ORACLE_I1M_POINTS = {
    3: [(1.0, 1.0), (0.4, 0.8), (2.0, 1.5), (0.7, 2.5), (1.5, 0.4)],
    4: [(1.0, 1.0), (0.5, 1.2), (2.2, 0.7), (0.3, 0.5), (1.2, 2.0)],
    5: [(0.7, 1.3), (1.0, 1.0), (2.0, 0.6), (0.4, 2.0), (1.6, 1.6)],
}


def suite_oracle(tol: float = 1e-6) -> List[VerifyReport]:
    out: List[VerifyReport] = []
    for m, pts in ORACLE_I1M_POINTS.items():
        for p, q in pts:
            _check(out, f"I1{m}({p},{q})", tol, ("quad_i1m", "c1*i1m_hat"),
                   lambda: oracle.quad_i1m(m, p, q).value, lambda: fy.i1m((m, p, q)))
    for q in (0.5, 1.0, 2.0):
        _check(out, f"I31(1,{q})", tol, ("quad_idm_m1", "i31_closed"),
               lambda: oracle.quad_idm_m1(3, 1.0, q).value, lambda: fy.i31_closed(q))
        _check(out, f"I21(1,{q})", tol, ("quad_idm_m1", "i21_closed"),
               lambda: oracle.quad_idm_m1(2, 1.0, q).value, lambda: fy.i21_closed(q))
    for D, fn, p, k in [(1, fy.inner_j1, 1.0, (0.5, 1.5)), (2, fy.inner_j2, 1.0, (0.7, 1.1)),
                        (3, fy.inner_j3, 0.5, (1.0, 2.0))]:
        _check(out, f"J{D}({p}; {k})", tol, ("quad_jd", f"j{D}"),
               lambda: oracle.quad_jd(D, p, k).value, lambda: fn(p, k))
    return out


SUITES: Dict[str, Callable[..., List[VerifyReport]]] = {
    "inner-integrals": suite_inner_integrals,
    "main-result": suite_main_result,
    "special-cases": suite_special_cases,
    "complex-expansion": suite_complex_expansion,
    "horn-bridges": suite_horn_bridges,
    "f1-transform": suite_f1_transform,
    "oracle": suite_oracle,
}


def run_suite(name: str, tol: Optional[float] = None) -> List[VerifyReport]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    return fn() if tol is None else fn(tol)
