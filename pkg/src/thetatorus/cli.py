"""Command-line front end.

Subcommands: theta, verify, norm-table, phi-curve, projection, witness,
criterion.  Output formats: plain (default), csv, json.  The environment
variable THETA_TORUS_TOL overrides the default theta tolerance.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""

import dataclasses
import json
import re as _re
import sys

import click

from . import nctorus as nc
from . import projector as pj
from . import repmat as rm
from . import theta as th
from . import witness as wit
from .exprparse import parse_expr, serialize_witness


def _sig(x):
    """12 significant digits, '.' decimal separator."""
    if isinstance(x, complex):
        return f"{_sig(x.real)}{'+' if x.imag >= 0 else '-'}{_sig(abs(x.imag))}i"
    return f"{float(x):.12g}"


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _rows_to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_sig(v) if isinstance(v, (int, float, complex))
                              else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_default(obj):
    if dataclasses.is_dataclass(obj):
        return dataclasses.asdict(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not serializable: {type(obj).__name__}")


def _emit_report(report, fmt, out, plain_lines):
    if fmt == "json":
        _emit(json.dumps(report, default=_json_default, indent=2,
                         sort_keys=True) + "\n", out)
    elif fmt == "csv":
        rows = [(k, v) for k, v in _flatten(report)]
        _emit(_rows_to_csv(("key", "value"), rows), out)
    else:
        _emit("\n".join(plain_lines) + "\n", out)


def _flatten(obj, prefix=""):
    if dataclasses.is_dataclass(obj):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        for k in obj:
            yield from _flatten(obj[k], f"{prefix}{k}." if prefix else f"{k}.")
        return
    yield prefix.rstrip("."), obj if not isinstance(obj, (list, tuple)) \
        else " ".join(map(str, obj))


_COMPLEX_RE = _re.compile(
    r"^\s*(?P<re>[-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)?"
    r"\s*(?P<im>[-+]\s*(?:\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)?\s*i|[-+]?(?:\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)?\s*i)?\s*$")


def _parse_complex(text):
    """Parse '1.5', 'i', '0.5+0.5i', '-2i', '1-0.3i'."""
    m = _COMPLEX_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise click.UsageError(f"cannot parse complex number {text!r}")
    re_part = float(m.group("re")) if m.group("re") else 0.0
    im_txt = m.group("im")
    if im_txt is None:
        return complex(re_part, 0.0)
    im_txt = im_txt.replace(" ", "")[:-1]  # strip trailing i
    if im_txt in ("", "+"):
        im_part = 1.0
    elif im_txt == "-":
        im_part = -1.0
    else:
        im_part = float(im_txt)
    return complex(re_part, im_part)


_fmt_opt = click.option("--format", "fmt", type=click.Choice(["plain", "csv", "json"]),
                        default="plain", show_default=True)
_out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None,
                        help="write output to a file instead of stdout")


@click.group()
def main():
    """Theta functions, rotation-algebra identities, Harper norms, projections."""


# ---------------------------------------------------------------------------
@main.command("theta")
@click.option("--z", required=True, help="argument, e.g. '0.5+0.5i'")
@click.option("--tau", required=True, help="modulus with Im > 0, e.g. 'i' or '0.5i'")
@click.option("--a", type=float, default=None, help="first characteristic")
@click.option("--b", type=float, default=None, help="second characteristic")
@click.option("--tol", type=float, default=None, help="truncation tolerance")
@_fmt_opt
@_out_opt
def cmd_theta(z, tau, a, b, tol, fmt, out):
    """Evaluate a theta value with a rigorous tail bound."""
    zc = _parse_complex(z)
    tc = _parse_complex(tau)
    if tc.imag <= 0:
        raise click.UsageError("tau must have positive imaginary part")
    if (a is None) != (b is None):
        raise click.UsageError("give both --a and --b or neither")
    try:
        if a is None:
            tv = th.eval_theta(zc, th.UpperHalfPoint(tc.real, tc.imag), tol=tol)
        else:
            tv = th.eval_theta_char(th.Characteristics(a, b), zc,
                                    th.UpperHalfPoint(tc.real, tc.imag), tol=tol)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    report = {"value": tv.value, "tail_bound": tv.tail_bound,
              "terms_used": tv.terms_used}
    _emit_report(report, fmt, out, [
        f"value = {_sig(tv.value)}",
        f"tail_bound = {_sig(tv.tail_bound)}",
        f"terms_used = {tv.terms_used}",
    ])


# ---------------------------------------------------------------------------
SUITES = ("classical", "bracket", "theta3", "partition", "all")


def _run_verify(suite, rng, qs, samples, tol):
    failures = []
    reports = {}
    if suite in ("classical", "all"):
        rep = th.check_classical_identities(tol=tol or 1e-10)
        reports["classical"] = rep
        for name, res in rep["identities"].items():
            if res > rep["tol"]:
                failures.append(("classical", name, res))
        for name, ok in rep["inequalities"].items():
            if not ok:
                failures.append(("classical", name, "inequality violated"))
    if suite in ("bracket", "all"):
        rep = nc.check_bracket_identities(rng)
        reports["bracket"] = rep
        for f in rep["failures"]:
            failures.append(("bracket",) + tuple(f))
    if suite in ("theta3", "all"):
        rep = pj.theta_identity_checks(qs, samples=samples, tol=tol or 1e-10)
        reports["theta3"] = rep
        for name in ("eq37", "eq38", "eq39", "riemann"):
            if rep[name] > rep["tol"]:
                failures.append(("theta3", name, rep[name]))
    if suite in ("partition", "all"):
        part_tol = tol or 1e-8
        for q in (2, 3):
            rep = pj.partition_checks(q)
            reports[f"partition_q{q}"] = rep
            for name, res in rep.items():
                if name != "q" and res > part_tol:
                    failures.append((f"partition q={q}", name, res))
    return reports, failures


@main.command("verify")
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--range", "rng", type=int, default=3, show_default=True,
              help="index range for the bracket suite")
@click.option("--q", "qs", type=int, multiple=True, help="even q values for theta3")
@click.option("--samples", type=int, default=20, show_default=True)
@click.option("--tol", type=float, default=None)
@_fmt_opt
@_out_opt
def cmd_verify(suite, rng, qs, samples, tol, fmt, out):
    """Run an identity suite; exit 1 if any residual exceeds its tolerance."""
    qs = tuple(qs) or (2, 4, 6)
    if any(q % 2 for q in qs):
        raise click.UsageError("theta3 identities require even q")
    reports, failures = _run_verify(suite, rng, qs, samples, tol)
    plain = [f"suite: {suite}"]
    for name, rep in reports.items():
        plain.append(f"[{name}] {rep}")
    plain.append("FAILURES:" if failures else "all identities verified")
    for f in failures:
        plain.append("  " + " ".join(map(str, f)))
    _emit_report({"suite": suite, "reports": reports,
                  "failures": [list(map(str, f)) for f in failures]},
                 fmt, out, plain)
    if failures:
        sys.exit(1)


# ---------------------------------------------------------------------------
@main.command("norm-table")
@click.option("--q", "qs", type=int, multiple=True,
              help="denominators (default 2..13)")
@click.option("--lam", type=float, default=2.0, show_default=True)
@click.option("--grid", type=int, default=64, show_default=True)
@_fmt_opt
@_out_opt
def cmd_norm_table(qs, lam, grid, fmt, out):
    """Harper norms against the phi0/phi1 lower bounds."""
    qs = tuple(qs) or tuple(range(2, 14))
    if any(q < 2 for q in qs):
        raise click.UsageError("q must be >= 2")
    rows = []
    for q in qs:
        norm = rm.harper_norm(1, q, lam, grid=grid)
        bound = pj.phi_bounds(q)
        gap = norm - bound
        if -1e-9 < gap < 0:
            gap = 0.0  # norm == bound up to roundoff (e.g. q = 2, 3)
        rows.append((q, norm, bound, gap))
    header = ("q", "norm", "phi0-or-phi1", "gap")
    if fmt == "json":
        _emit(json.dumps([dict(zip(header, r)) for r in rows], indent=2,
                         sort_keys=True) + "\n", out)
    elif fmt == "plain":
        lines = ["%-4s %-14s %-14s %-14s" % header]
        lines += ["%-4d %-14s %-14s %-14s" % (r[0], _sig(r[1]), _sig(r[2]), _sig(r[3]))
                  for r in rows]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(_rows_to_csv(header, rows), out)


# ---------------------------------------------------------------------------
@main.command("phi-curve")
@click.option("--parity", type=click.Choice(["even", "odd"]), default="even",
              show_default=True)
@click.option("--x-min", type=float, default=0.01, show_default=True)
@click.option("--x-max", type=float, default=None,
              help="default 0.5 (even) / 1/3 (odd)")
@click.option("--points", type=int, default=200, show_default=True)
@_fmt_opt
@_out_opt
def cmd_phi_curve(parity, x_min, x_max, points, fmt, out):
    """Sample the phi0 or phi1 lower-bound curve as plottable data."""
    top = 0.5 if parity == "even" else 1.0 / 3.0
    if x_max is None:
        x_max = top
    if not (0 < x_min <= x_max <= top + 1e-12):
        raise click.UsageError(f"x-range must lie in (0, {_sig(top)}]")
    if points < 2:
        raise click.UsageError("points must be >= 2")
    f = pj.phi0_curve if parity == "even" else pj.phi1_curve
    rows = []
    for k in range(points):
        x = x_min + (x_max - x_min) * k / (points - 1)
        rows.append((x, f(x)))
    if fmt == "json":
        _emit(json.dumps([{"x": x, "phi": y} for (x, y) in rows], indent=2,
                         sort_keys=True) + "\n", out)
    else:
        _emit(_rows_to_csv(("x", "phi"), rows), out)


# ---------------------------------------------------------------------------
@main.command("projection")
@click.option("--q", type=int, required=True)
@click.option("--grid", type=int, default=4, show_default=True,
              help="twist grid resolution")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@_fmt_opt
@_out_opt
def cmd_projection(q, grid, tol, fmt, out):
    """Projection residual report over a twist grid; exit 1 on failure."""
    if q < 2 or grid < 1:
        raise click.UsageError("need q >= 2 and grid >= 1")
    checks = [pj.projection_check(q, i / (grid * q), j / (grid * q))
              for i in range(grid) for j in range(grid)]
    worst = {
        "idempotency": max(c.idempotency for c in checks),
        "self_adjointness": max(c.self_adjointness for c in checks),
        "trace_deviation": max(c.trace_deviation for c in checks),
    }
    report = {"q": q, "grid": grid, "worst": worst, "tol": tol}
    _emit_report(report, fmt, out, [
        f"q = {q}, twist grid {grid}x{grid}",
        *[f"{k} = {_sig(v)}" for k, v in worst.items()],
    ])
    if max(worst.values()) > tol:
        sys.exit(1)


# ---------------------------------------------------------------------------
@main.command("witness")
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@_fmt_opt
@_out_opt
def cmd_witness(n, m, fmt, out):
    """Emit a generation witness for {n,m} in the expression syntax."""
    if n < 0 or m < 0:
        raise click.UsageError("n and m must be nonnegative")
    tree = wit.generation_witness(n, m)
    text = serialize_witness(tree)
    if parse_expr(text) != nc.curly(n, m):
        click.echo("witness failed self-verification", err=True)
        sys.exit(1)
    _emit_report({"n": n, "m": m, "expression": text, "verified": True},
                 fmt, out, [text])


# ---------------------------------------------------------------------------
@main.command("criterion")
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--alpha", type=float, required=True)
@_fmt_opt
@_out_opt
def cmd_criterion(p, q, alpha, fmt, out):
    """Invertibility criterion report for (p, q, alpha)."""
    if q < 2:
        raise click.UsageError("q must be >= 2")
    rep = pj.invertibility_pq(p, q, alpha)
    plain = [f"verdict: {rep.verdict}"]
    if rep.trace is not None:
        plain.append(f"trace: {_sig(rep.trace)}")
    if rep.reason:
        plain.append(f"reason: {rep.reason}")
    for k, v in rep.constants.items():
        plain.append(f"{k} = {v if not isinstance(v, float) else _sig(v)}")
    _emit_report(rep, fmt, out, plain)


if __name__ == "__main__":
    main()
