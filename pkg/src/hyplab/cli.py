"""Command-line front end: ``hyplab verify`` and ``hyplab experiment``."""
import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

CSV_SCHEMA = """\
experiment CSV columns (header row, comma separated, LF line endings):
  param  the swept parameter (t for cusp, k for slits, n for chain,
         j for growth-ladder with r = 1 - 2^-j, r for annulus-cover)
  ell    hyperbolic length along the radius, or its quadrature upper bound
  E      Euclidean length of the image path
  H      hyperbolic length of the image path in the image domain
         (growth-ladder: radial L^p scale norm up to r)
  bound  the comparison quantity for the experiment
Lines starting with '#' after the table carry the growth-exponent fit.

verify summary CSV columns: name,pass,lhs,rhs,slack,cases,failures,worst_case
"""

EXPERIMENTS = ("cusp", "slits", "chain", "growth-ladder", "annulus-cover")
DEFAULT_SEED = 12345


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _num(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_text(header, rows, footer=()):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, (int, float, np.number)) else v for v in row])
    for line in footer:
        buf.write("# " + line + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _parse_tol(items):
    out = {}
    for item in items or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(val)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad tolerance {val!r}") from exc
    return out


def cmd_verify(args):
    from .verify import FAMILIES, run_suite

    try:
        tols = _parse_tol(args.tol)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    only = args.only or None
    bad = [n for n in list(only or []) + list(tols) if n not in FAMILIES]
    if bad:
        print(f"error: unknown check family {', '.join(bad)}; choose from {', '.join(FAMILIES)}",
              file=sys.stderr)
        return 2
    results = run_suite(only=only, tolerances=tols)
    header = ["name", "pass", "lhs", "rhs", "slack", "cases", "failures", "worst_case"]
    rows = []
    failures = []
    for name, (summary, reports, seconds) in results.items():
        if name in tols:
            summary.params["tolerance_override"] = tols[name]
        rows.append([name, "1" if summary.passed else "0", summary.lhs, summary.rhs, summary.slack,
                     summary.params["cases"], summary.params["failures"], summary.params["worst_case"]])
        print(f"{name:20s} {'PASS' if summary.passed else 'FAIL'}  slack={summary.slack:+.3e}"
              f"  cases={summary.params['cases']}  {seconds:.1f}s")
        if not summary.passed:
            failures.append((name, [r for r in reports if not r.passed]))
        if args.out:
            payload = {"summary": summary.to_dict(), "reports": [r.to_dict() for r in reports]}
            if name in tols:
                payload["tolerance_override"] = tols[name]
            _atomic_write(os.path.join(args.out, f"{name}.json"),
                          json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.out:
        if args.format == "json":
            text = json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
            _atomic_write(os.path.join(args.out, "summary.json"), text)
        else:
            _atomic_write(os.path.join(args.out, "summary.csv"), _csv_text(header, rows))
    if failures:
        for name, bad_reports in failures:
            names = ", ".join(sorted({str(r.params.get("worst_case", r.name)) for r in bad_reports}))
            print(f"FAILED {name}: {names}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# experiment
# ---------------------------------------------------------------------------

def _fit_footer(L, E):
    from .lengths import fit_growth_exponent
    L, E = np.asarray(L, float), np.asarray(E, float)
    keep = (L > 0) & (E > 0)
    fit = fit_growth_exponent(np.column_stack([L[keep], E[keep]]))
    return [f"fit exponent={fit.exponent!r} intercept={fit.intercept!r} residual={fit.residual!r} "
            f"samples={fit.sample_count} span_decades={fit.span_decades!r}"]


def _exp_cusp(a):
    from .verify.checks import cusp_table
    eps = 1.0 if a.eps is None else a.eps
    t, E, L = cusp_table(eps, a.points or 30)
    rows = [[tk, Lk, Ek, Lk, (Ek + 3.0) ** (2.0 + eps)] for tk, Ek, Lk in zip(t, E, L)]
    return rows, _fit_footer(L, E)


def _exp_slits(a):
    from .verify.checks import slit_table
    eps = 0.5 if a.eps is None else a.eps
    ks, h, cap = slit_table(eps, a.n or 50)
    cum = np.concatenate([[0.0], np.cumsum(h)[:-1]])
    rows = [[int(k), c, int(k), hk, capk] for k, c, hk, capk in zip(ks, cum, h, cap)]
    return rows, _fit_footer(cum, ks)


def _exp_chain(a):
    from .verify.checks import chain_table
    beta = 1.0 if a.beta is None else a.beta
    n, L, E = chain_table(beta, a.n or 10_000, a.points or 40)
    rows = [[int(k), Lk, Ek, Lk, beta / (beta + 1.0)] for k, Lk, Ek in zip(n, L, E)]
    return rows, _fit_footer(L, E)


def _exp_growth_ladder(a):
    from .core.series import random_polynomial
    from .lengths import euclidean_length_radial, radial_lp_norm
    rng = np.random.default_rng(DEFAULT_SEED if a.seed is None else a.seed)
    f = random_polynomial(rng, a.n or 10)
    p = 2.0 if a.p is None else a.p
    A = f.area()
    rows = []
    for j in range(1, (a.points or 20) + 1):
        s = 2.0 ** -j
        L = math.log((2.0 - s) / s)
        E = euclidean_length_radial(f, None, s_end=s, tol=1e-12)
        H = radial_lp_norm(f, p, s_end=s)
        rows.append([j, L, E, H, math.sqrt(A / math.pi * L)])
    return rows, [f"seed={DEFAULT_SEED if a.seed is None else a.seed} p={p!r} area={A!r}"]


def _exp_annulus_cover(a):
    from .domains import Annulus
    from .lengths import AnnulusCover, image_hyperbolic_length
    from .verify.checks import COVER_M
    f, dom = AnnulusCover(), Annulus()
    rs = [a.r] if a.r is not None else [1.0 - 2.0 ** -j for j in range(1, (a.points or 10) + 1)]
    rows = []
    for r in rs:
        if r == 0:
            rows.append([0.0, 0.0, 0.0, 0.0, 0.0])
            continue
        rep = image_hyperbolic_length(f, dom, r, tol=1e-12)
        L = 2.0 * math.atanh(r)
        rows.append([r, L, rep.euclidean, rep.hyperbolic_upper, COVER_M / 2.0 * L])
    return rows, []


_RUNNERS = {"cusp": _exp_cusp, "slits": _exp_slits, "chain": _exp_chain,
            "growth-ladder": _exp_growth_ladder, "annulus-cover": _exp_annulus_cover}


def _validate(a):
    if a.eps is not None and not 0 < a.eps <= 2:
        return "--eps must lie in (0, 2]"
    if a.beta is not None and not 0 < a.beta <= 4:
        return "--beta must lie in (0, 4]"
    if a.p is not None and not a.p >= 1:
        return "--p must be >= 1"
    if a.r is not None and not 0 <= a.r < 1:
        return "--r must lie in [0, 1)"
    if a.n is not None and a.n < 1:
        return "--n must be positive"
    if a.points is not None and a.points < 3:
        return "--points must be at least 3"
    return None


def cmd_experiment(args):
    msg = _validate(args)
    if msg:
        print(f"error: {msg}", file=sys.stderr)
        return 2
    rows, footer = _RUNNERS[args.name](args)
    header = ["param", "ell", "E", "H", "bound"]
    if args.format == "json":
        text = json.dumps({"experiment": args.name, "columns": header, "rows": rows, "footer": footer},
                          indent=2) + "\n"
    else:
        text = _csv_text(header, rows, footer)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="hyplab", description="Length inequalities for analytic maps of the disc.",
                                 formatter_class=argparse.RawDescriptionHelpFormatter, epilog=CSV_SCHEMA)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite",
                       formatter_class=argparse.RawDescriptionHelpFormatter, epilog=CSV_SCHEMA)
    g = v.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every check family (default)")
    g.add_argument("--only", action="append", metavar="NAME", help="run one family; repeatable")
    v.add_argument("--tol", action="append", metavar="NAME=V", help="override a family's tolerance")
    v.add_argument("--out", metavar="DIR", help="directory for summary and per-family JSON")
    v.add_argument("--format", choices=("csv", "json"), default="csv", help="summary format")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="emit a table for one experiment",
                       formatter_class=argparse.RawDescriptionHelpFormatter, epilog=CSV_SCHEMA)
    e.add_argument("name", choices=EXPERIMENTS)
    e.add_argument("--eps", type=float)
    e.add_argument("--beta", type=float)
    e.add_argument("--n", type=int)
    e.add_argument("--p", type=float)
    e.add_argument("--d", type=float, help="accepted for symmetry with the checks; unused by tables")
    e.add_argument("--points", type=int)
    e.add_argument("--seed", type=int)
    e.add_argument("--r", type=float)
    e.add_argument("--out", metavar="PATH")
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
