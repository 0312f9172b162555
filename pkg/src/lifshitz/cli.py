"""Command-line front end.

    lifshitz eval --fn i1m_hat --m 3 --p 1 --q 1
    lifshitz table --fn i14_closed --q 0.1:3:0.1 --format csv
    lifshitz verify --suite special-cases --tol 1e-8
    lifshitz oracle-compare --fn i1m --m 4 --p 0.5:1.5:0.5 --q 0.5:1.5:0.5

Exit codes: 0 ok, 1 usage, 2 no convergence, 3 domain error, 4 failed check.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import complex_expansion as cx
from . import feynman as fy
from . import multivar_hyper as mh
from . import oracle
from .errors import DomainError, NoConvergence
from .hyper_core import SeriesResult, eval_2f1
from .verify import SUITES, run_suite

SCHEMA = "1"
EXIT_OK, EXIT_USAGE, EXIT_NOCONV, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3, 4

PARAM_FLAGS = ("m", "p", "q", "a", "b", "bp", "c", "cp", "d", "D", "k1", "k2", "x", "y",
               "zre", "zim", "sign")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# function registry

@dataclass(frozen=True)
class Entry:
    params: Tuple[str, ...]
    run: Callable[[dict, Optional[float]], SeriesResult]
    is_complex: bool = False
    defaults: Tuple[Tuple[str, float], ...] = ()


def _plain(fn: Callable[..., float], route: str):
    # real-valued closed forms carry no separate error estimate
    def run(v, tol):
        return SeriesResult(complex(fn(v)), math.nan, 0, True, route)
    return run


def _tolkw(tol):
    return {} if tol is None else {"tol": tol}


def _z(v):
    return complex(v["zre"], v["zim"])


def _pt(v):
    return (v["m"], v["p"], v["q"])


def _k(v):
    return (v["k1"], v["k2"])


def _pair(fn_re, fn_im, route):
    def run(v, tol):
        kw = _tolkw(tol)
        return SeriesResult(complex(fn_re(v, kw), fn_im(v, kw)), math.nan, 0, True, route)
    return run


def _integer(v: float, what: str) -> int:
    if v != int(v):
        raise DomainError(f"the oracle needs integer {what}")
    return int(v)


REGISTRY: Dict[str, Entry] = {
    "i1m": Entry(("m", "p", "q"), _plain(lambda v: fy.i1m(_pt(v)), "reduced_2f1")),
    "i1m_hat": Entry(("m", "p", "q"), lambda v, tol: fy.i1m_hat_result(_pt(v), **_tolkw(tol))),
    "i1m_via_h4": Entry(("m", "p", "q"), _plain(lambda v: fy.i1m_via_h4(_pt(v)), "horn_single_series")),
    "i1m_gamma_form": Entry(("m", "p", "q"), _plain(lambda v: fy.i1m_gamma_form(_pt(v)), "gamma_form")),
    "i1m_q_axis": Entry(("m", "q"), _plain(lambda v: fy.i1m_q_axis(v["m"], v["q"]), "q_axis")),
    "i1m_p_axis": Entry(("m", "p"), _plain(lambda v: fy.i1m_p_axis(v["m"], v["p"]), "p_axis")),
    "c1_constant": Entry(("m",), _plain(lambda v: fy.c1_constant(v["m"] / 2 - 1), "gamma")),
    "i3m": Entry(("m", "p", "q"), _plain(lambda v: fy.i3m(v["m"], v["p"], v["q"]), "gauss_2f1")),
    "i21_closed": Entry(("q",), _plain(lambda v: fy.i21_closed(v["q"]), "closed_form")),
    "i31_closed": Entry(("q",), _plain(lambda v: fy.i31_closed(v["q"]), "closed_form")),
    "i14_closed": Entry(("q",), _plain(lambda v: fy.i14_closed(v["q"]), "closed_form")),
    "inner_j1": Entry(("p", "k1", "k2"), _plain(lambda v: fy.inner_j1(v["p"], _k(v)), "closed_form")),
    "inner_j2": Entry(("p", "k1", "k2"), _plain(lambda v: fy.inner_j2(v["p"], _k(v)), "closed_form")),
    "inner_j3": Entry(("p", "k1", "k2"), _plain(lambda v: fy.inner_j3(v["p"], _k(v)), "closed_form")),
    "inner_jd_f1": Entry(("D", "p", "k1", "k2"),
                         _plain(lambda v: fy.inner_jd_f1(v["D"], v["p"], _k(v)), "appell_f1")),
    "inner_jd_kss": Entry(("D", "p", "k1", "k2"),
                          _plain(lambda v: fy.inner_jd_kss(v["D"], v["p"], _k(v)), "appell_f1_roots")),
    "inner_jd_zero_mass": Entry(("D", "p", "k2"),
                                _plain(lambda v: fy.inner_jd_zero_mass(v["D"], v["p"], v["k2"]), "gauss_2f1")),
    "eval_2f1": Entry(("a", "b", "c", "zre", "zim"),
                      lambda v, tol: eval_2f1(v["a"], v["b"], v["c"], _z(v), **_tolkw(tol)), True,
                      (("zim", 0.0),)),
    "eval_f1": Entry(("a", "b", "bp", "c", "x", "y"),
                     lambda v, tol: mh.eval_f1(v["a"], v["b"], v["bp"], v["c"], v["x"], v["y"], **_tolkw(tol)),
                     True),
    "eval_f2": Entry(("a", "b", "bp", "c", "cp", "x", "y"),
                     lambda v, tol: mh.eval_f2(v["a"], v["b"], v["bp"], v["c"], v["cp"], v["x"], v["y"],
                                               **_tolkw(tol)), True),
    "eval_f4": Entry(("a", "b", "c", "cp", "x", "y"),
                     lambda v, tol: mh.eval_f4(v["a"], v["b"], v["c"], v["cp"], v["x"], v["y"], **_tolkw(tol)),
                     True),
    "eval_h4": Entry(("a", "b", "c", "d", "x", "y"),
                     lambda v, tol: mh.eval_h4(v["a"], v["b"], v["c"], v["d"], v["x"], v["y"], **_tolkw(tol)),
                     True),
    "re_im_polar": Entry(("a", "b", "c", "zre", "zim"),
                         lambda v, tol: SeriesResult(complex(*cx.re_im_polar(v["a"], v["b"], v["c"], _z(v),
                                                                             **_tolkw(tol))),
                                                     math.nan, 0, True, "polar_series"), True),
    "gauss_series": Entry(("a", "b", "c", "zre", "zim"), _pair(
        lambda v, kw: cx.re_2f1_gauss_series(v["a"], v["b"], v["c"], _z(v), **kw),
        lambda v, kw: cx.im_2f1_gauss_series(v["a"], v["b"], v["c"], _z(v), **kw), "gauss_coefficients"),
        True),
    "3f2_series": Entry(("a", "b", "c", "zre", "zim"), _pair(
        lambda v, kw: cx.re_2f1_3f2_series(v["a"], v["b"], v["c"], _z(v), **kw),
        lambda v, kw: cx.im_2f1_3f2_series(v["a"], v["b"], v["c"], _z(v), **kw), "3f2_coefficients"),
        True),
    "laplace": Entry(("a", "b", "c", "zre", "zim"), _pair(
        lambda v, kw: cx.re_2f1_laplace(v["a"], v["b"], v["c"], _z(v)),
        lambda v, kw: cx.im_2f1_laplace(v["a"], v["b"], v["c"], _z(v)), "laplace_integral"), True),
    "b1_h4": Entry(("a", "c", "zre", "zim"), _pair(
        lambda v, kw: cx.re_2f1_b1_h4(v["a"], v["c"], _z(v), **kw),
        lambda v, kw: cx.im_2f1_b1_h4(v["a"], v["c"], _z(v), **kw), "horn_h4"), True),
    "h4_gamma_half": Entry(("a", "b", "d", "x", "y", "sign"), _plain(
        lambda v: cx.h4_gamma_half(v["a"], v["b"], v["d"], v["x"], v["y"], int(v["sign"])), "rotated_2f1"),
        defaults=(("sign", 1.0),)),
    "h4_gamma_three_half": Entry(("a", "b", "d", "x", "y", "sign"), _plain(
        lambda v: cx.h4_gamma_three_half(v["a"], v["b"], v["d"], v["x"], v["y"], int(v["sign"])),
        "rotated_2f1"), defaults=(("sign", 1.0),)),
    "quad_i1m": Entry(("m", "p", "q"), lambda v, tol: oracle.quad_i1m(_integer(v["m"], "m"), v["p"], v["q"])),
    "quad_jd": Entry(("D", "p", "k1", "k2"), lambda v, tol: oracle.quad_jd(_integer(v["D"], "D"), v["p"], _k(v))),
    "quad_idm_m1": Entry(("D", "p", "q"), lambda v, tol: oracle.quad_idm_m1(_integer(v["D"], "D"), v["p"], v["q"])),
}
for _m in range(2, 7):
    REGISTRY[f"special_m{_m}"] = Entry(
        ("p", "q"), _plain(lambda v, _m=_m: fy.special_hat(_m, v["p"], v["q"]), "closed_form"))


# closed form -> quadrature counterpart
ORACLES: Dict[str, Callable[[dict], SeriesResult]] = {
    "i1m": lambda v: oracle.quad_i1m(_integer(v["m"], "m"), v["p"], v["q"]),
    "inner_j1": lambda v: oracle.quad_jd(1, v["p"], _k(v)),
    "inner_j2": lambda v: oracle.quad_jd(2, v["p"], _k(v)),
    "inner_j3": lambda v: oracle.quad_jd(3, v["p"], _k(v)),
    "inner_jd_f1": lambda v: oracle.quad_jd(_integer(v["D"], "D"), v["p"], _k(v)),
    "inner_jd_kss": lambda v: oracle.quad_jd(_integer(v["D"], "D"), v["p"], _k(v)),
    "i3m": lambda v: _i3m_oracle(v),
    "i21_closed": lambda v: oracle.quad_idm_m1(2, 1.0, v["q"]),
    "i31_closed": lambda v: oracle.quad_idm_m1(3, 1.0, v["q"]),
}


def _i3m_oracle(v):
    if v["m"] != 1:
        raise DomainError("the D = 3 oracle covers m = 1 only")
    return oracle.quad_idm_m1(3, v["p"], v["q"])


# ---------------------------------------------------------------------------
# parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _range(text: str) -> List[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise UsageError(f"bad number in grid {text!r}") from None
    if not step > 0:
        raise UsageError("grid step must be positive")
    if stop < start:
        return []
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    # rounding keeps 0.1-style steps from drifting off their decimal values
    return [round(start + i * step, 12) for i in range(n)]


def _values(text: str) -> List[float]:
    if ":" in text:
        return _range(text)
    try:
        return [float(text)]
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lifshitz", description="Anisotropic Feynman integral and hypergeometric toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fn_required=True):
        p.add_argument("--tol", type=float, default=None, help="relative tolerance")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write to this file instead of stdout")
        if fn_required:
            p.add_argument("--fn", required=True, help="function id")
            for name in PARAM_FLAGS:
                p.add_argument(f"--{name}", default=None,
                               help="value or start:stop:step grid" if name in ("m", "p", "q") else None)

    common(sub.add_parser("eval", help="evaluate one function at one point"))
    common(sub.add_parser("table", help="tabulate a function along one grid axis"))
    vp = sub.add_parser("verify", help="run a verification suite")
    common(vp, fn_required=False)
    vp.add_argument("--suite", required=True, choices=tuple(SUITES) + ("all",))
    common(sub.add_parser("oracle-compare", help="compare a closed form with quadrature"))
    return ap


def _collect(args, entry: Entry) -> Dict[str, List[float]]:
    given = {}
    for name in PARAM_FLAGS:
        raw = getattr(args, name, None)
        if raw is not None:
            given[name] = _values(raw)
    extra = set(given) - set(entry.params)
    if extra:
        raise UsageError(f"--fn {args.fn} does not take {', '.join('--' + e for e in sorted(extra))}")
    for name, val in entry.defaults:
        given.setdefault(name, [val])
    missing = [n for n in entry.params if n not in given]
    if missing:
        raise UsageError(f"--fn {args.fn} needs {', '.join('--' + n for n in missing)}")
    return given


def _entry(name: str) -> Entry:
    if name not in REGISTRY:
        raise UsageError(f"unknown function {name!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[name]


# ---------------------------------------------------------------------------
# output

def _num(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _json(obj, indent=0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_json_str(k)}: {_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_json(v, indent + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _json(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, str):
        return _json_str(obj)
    return _num(obj)


def _json_str(s: str) -> str:
    return json.dumps(s)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (_num(v) if isinstance(v, (int, float)) else v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]):
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lifshitz-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# commands

def _value_fields(res: SeriesResult, entry: Entry) -> dict:
    d = {"value": res.value.real}
    if entry.is_complex:
        d["imag"] = res.value.imag
    d["abs_err"] = res.abs_err
    d["route"] = res.route
    d["converged"] = res.converged
    return d


def cmd_eval(args) -> int:
    entry = _entry(args.fn)
    given = _collect(args, entry)
    if any(len(v) != 1 for v in given.values()):
        raise UsageError("eval takes single values; use table for grids")
    point = {k: v[0] for k, v in given.items()}
    res = entry.run(point, args.tol)
    fields = _value_fields(res, entry)
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": "eval", "fn": args.fn,
               "params": {k: point[k] for k in entry.params}}
        doc.update(fields)
        _emit(_json(doc), args.out)
    else:
        header = ["fn"] + list(entry.params) + list(fields)
        row = [args.fn] + [point[k] for k in entry.params] + list(fields.values())
        _emit(_csv(header, [row]), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    entry = _entry(args.fn)
    given = _collect(args, entry)
    axes = [k for k in entry.params if len(given[k]) != 1 or ":" in (getattr(args, k) or "")]
    if len(axes) != 1:
        raise UsageError("table needs exactly one start:stop:step axis")
    axis = axes[0]
    fixed = {k: v[0] for k, v in given.items() if k != axis}
    rows = []
    for val in given[axis]:
        res = entry.run({**fixed, axis: val}, args.tol)
        row = [val, res.value.real]
        if entry.is_complex:
            row.append(res.value.imag)
        row.append(res.abs_err)
        rows.append(row)
    header = [axis, "value"] + (["imag"] if entry.is_complex else []) + ["abs_err"]
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": "table", "fn": args.fn, "axis": axis,
               "fixed": fixed, "columns": header, "rows": rows}
        _emit(_json(doc), args.out)
    else:
        _emit(_csv(header, rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend((name, r) for r in run_suite(name, args.tol))
    failed = [(s, r) for s, r in reports if not r.passed]
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": "verify", "suite": args.suite, "tol": args.tol,
               "passed": not failed, "n_checks": len(reports), "n_failed": len(failed),
               "checks": [{"suite": s, **r.to_dict()} for s, r in reports]}
        _emit(_json(doc), args.out)
    else:
        header = ["suite", "name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_dev", "rel_dev",
                  "tol", "pass", "route_lhs", "route_rhs", "error"]
        rows = [[s, r.name, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.abs_dev, r.rel_dev,
                 r.tol, "true" if r.passed else "false", r.route_labels[0], r.route_labels[1],
                 r.error or ""] for s, r in reports]
        _emit(_csv(header, rows), args.out)
    for s, r in failed:
        sys.stderr.write(f"FAILED [{s}] {r.name}: rel_dev={r.rel_dev:.3g} {r.error or ''}\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_oracle_compare(args) -> int:
    entry = _entry(args.fn)
    if args.fn not in ORACLES:
        raise UsageError(f"no oracle for {args.fn!r}; choose from {', '.join(sorted(ORACLES))}")
    given = _collect(args, entry)
    tol = 1e-6 if args.tol is None else args.tol
    names = list(entry.params)
    rows = []
    flagged = 0
    for combo in itertools.product(*(given[n] for n in names)):
        point = dict(zip(names, combo))
        closed = entry.run(point, None)
        orc = ORACLES[args.fn](point)
        cv, ov = closed.value.real, orc.value.real
        dev = abs(cv - ov)
        rel = dev / abs(cv) if cv != 0 else dev
        c_err = 0.0 if math.isnan(closed.abs_err) else closed.abs_err
        bound = orc.abs_err + c_err + tol * abs(cv)
        flag = dev > bound
        flagged += flag
        rows.append(list(combo) + [cv, ov, dev, rel, orc.abs_err, "FLAG" if flag else "ok"])
    header = names + ["closed_form", "oracle", "abs_dev", "rel_dev", "oracle_err", "status"]
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": "oracle-compare", "fn": args.fn, "tol": tol,
               "columns": header, "rows": rows, "n_flagged": flagged}
        _emit(_json(doc), args.out)
    else:
        _emit(_csv(header, rows), args.out)
    return EXIT_VERIFY if flagged else EXIT_OK


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify,
            "oracle-compare": cmd_oracle_compare}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"lifshitz: usage error: {exc}\n")
        return EXIT_USAGE
    except NoConvergence as exc:
        sys.stderr.write(f"lifshitz: no convergence: {exc}\n")
        return EXIT_NOCONV
    except DomainError as exc:
        sys.stderr.write(f"lifshitz: domain error: {exc}\n")
        return EXIT_DOMAIN
    # timing goes to stderr so stdout stays byte-identical between runs
    sys.stderr.write(f"wall time: {time.perf_counter() - t0:.3f} s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
