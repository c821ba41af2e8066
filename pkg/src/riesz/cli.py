"""Command-line front end.

    riesz eval X [--method M]
    riesz scan X_MIN X_MAX STEPS [--out FILE] [--jobs N]
    riesz validate [X ...]
    riesz zeros [X ...] --zeros FILE
    riesz coeffs N

Exit codes: 0 success, 1 a validation check failed, 2 usage or domain error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from . import __version__
from .api import QueryMethod, RieszQuery, riesz, riesz_derivative, riesz_general, rh_scan
from .errors import RieszError
from .precision import as_real, digits_to_bits, format_sci
from .providers import MOBIUS
from .series import maclaurin_coefficient, theorem1_series
from .zeros import load_zeros, reconstruct_riesz

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_VALIDATE_XS = ("0.1", "1", "10", "100")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    digits: int = 40
    tolerance: mpf = mpf("1e-30")
    method: str = "auto"
    out: str | None = None
    zeros: str | None = None
    c: mpf = mpf(2)
    jobs: int = 1
    n_max: int = 100_000

    def __post_init__(self):
        if self.digits < 10:
            raise UsageError("--digits must be >= 10")
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")

    @property
    def precision_bits(self) -> int:
        return digits_to_bits(self.digits)

    def flags(self) -> str:
        # everything that affects numbers; --jobs and --out deliberately excluded
        return (
            f"digits={self.digits} tol={format_sci(self.tolerance, 3)} "
            f"method={self.method} c={mpmath.nstr(self.c, 10)}"
        )


def _decimal(text: str, name: str = "x") -> mpf:
    try:
        return as_real(text)
    except (ValueError, TypeError):
        raise UsageError(f"{name}: not a decimal number: {text!r}") from None


def _fmt(value, cfg: CliConfig) -> str:
    return format_sci(value, cfg.digits)


def _bound(value) -> str:
    return format_sci(value, 3)


@contextlib.contextmanager
def _output(path: str | None):
    """Collect output in memory and write it in one go (stdout when path is None)."""
    buf = io.StringIO()
    if path is not None:
        try:
            handle = open(path, "w", encoding="ascii", newline="\n")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    if path is None:
        yield buf
        sys.stdout.write(buf.getvalue())
        return
    with handle:
        yield buf
        handle.write(buf.getvalue())


def _header(buf, title: str, cfg: CliConfig, extra: str = "") -> None:
    buf.write(f"# {title}\n")
    buf.write(f"# riesz {__version__}; {cfg.flags()}{' ' + extra if extra else ''}\n")


# ---------------------------------------------------------------- commands


def cmd_eval(x_text: str, cfg: CliConfig) -> int:
    x = _decimal(x_text)
    if x < 0:
        raise UsageError("x must be >= 0")
    if cfg.c == 2:
        r = riesz(RieszQuery(x, cfg.tolerance, cfg.method))
    else:
        if cfg.method not in ("auto", "kummer"):
            raise UsageError("only the kummer route is available for c != 2")
        r = riesz_general(MOBIUS, cfg.c, x, cfg.tolerance)
    print(f"{_fmt(x, cfg)}, {_fmt(r.value, cfg)}, {_bound(r.error_bound)}, {r.method}")
    return EXIT_OK


def cmd_scan(x_min: str, x_max: str, steps: int, cfg: CliConfig) -> int:
    lo, hi = _decimal(x_min, "x_min"), _decimal(x_max, "x_max")
    with _output(cfg.out) as buf:
        rows = rh_scan(lo, hi, steps, cfg.c, cfg.tolerance, jobs=cfg.jobs)
        _header(
            buf,
            "growth diagnostic R_c(x) / x^(1/(2c)); diagnostic only, no claim about RH",
            cfg,
            f"x_min={x_min} x_max={x_max} steps={steps}",
        )
        buf.write("x,riesz,scaled,error_bound\n")
        for row in rows:
            buf.write(
                f"{_fmt(row.x, cfg)},{_fmt(row.riesz_value, cfg)},"
                f"{_fmt(row.scaled_value, cfg)},{_bound(row.error_bound)}\n"
            )
    return EXIT_OK


def richardson_derivative(f, x, h):
    """(4 D(h/2) - D(h)) / 3 with central differences D."""
    def central(step):
        return (f(x + step) - f(x - step)) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


def _validate_row(x, cfg: CliConfig) -> tuple[list[str], bool]:
    tol = cfg.tolerance
    results = {}
    for name, run in (
        ("maclaurin", lambda: riesz(RieszQuery(x, tol, "maclaurin"))),
        ("theorem1", lambda: theorem1_series(MOBIUS, 2, x, cfg.n_max, cfg.precision_bits)),
        ("kummer", lambda: riesz(RieszQuery(x, tol, "kummer"))),
    ):
        try:
            results[name] = run()
        except RieszError as exc:
            print(f"x={mpmath.nstr(x, 10)} {name}: {exc}", file=sys.stderr)
            results[name] = None
    ok = all(r is not None for r in results.values())
    cells = [_fmt(x, cfg)]
    for name in ("maclaurin", "theorem1", "kummer"):
        cells.append(_fmt(results[name].value, cfg) if results[name] else "nan")
    wp = cfg.precision_bits + 64
    for a, b in (("maclaurin", "theorem1"), ("maclaurin", "kummer"), ("theorem1", "kummer")):
        ra, rb = results[a], results[b]
        if ra is None or rb is None:
            cells.append("nan")
            continue
        with mpmath.workprec(wp):
            delta = abs(ra.value - rb.value)
        cells.append(_bound(delta))
        ok &= delta <= ra.error_bound + rb.error_bound
    for name in ("maclaurin", "theorem1", "kummer"):
        cells.append(_bound(results[name].error_bound) if results[name] else "nan")

    if x > 0:
        ident = riesz_derivative(MOBIUS, 2, x, tol)
        h = min(x / 4, mpf("1e-3"))
        with mpmath.workprec(wp):
            fd = richardson_derivative(lambda u: riesz(RieszQuery(u, tol)).value, x, h)
            rel = abs(ident.value - fd) / abs(fd)
        ok &= rel <= mpf("1e-6")
        cells += [_fmt(ident.value, cfg), _fmt(fd, cfg), _bound(rel)]
    else:
        cells += ["0", "0", "0"]
    cells.append("pass" if ok else "FAIL")
    return cells, ok


def cmd_validate(x_texts: list[str], cfg: CliConfig) -> int:
    if cfg.c != 2:
        raise UsageError("validate compares the three Riesz routes and needs c = 2")
    xs = [_decimal(t) for t in (x_texts or DEFAULT_VALIDATE_XS)]
    if any(x < 0 for x in xs):
        raise UsageError("x must be >= 0")
    all_ok = True
    with _output(cfg.out) as buf:
        _header(buf, "cross-method validation of Riesz(x)", cfg, f"theorem1_nmax={cfg.n_max}")
        buf.write(
            "x,maclaurin,theorem1,kummer,d_mac_th1,d_mac_kum,d_th1_kum,"
            "bound_mac,bound_th1,bound_kum,deriv_identity,deriv_fd,deriv_rel,status\n"
        )
        for x in xs:
            cells, ok = _validate_row(x, cfg)
            all_ok &= ok
            buf.write(",".join(cells) + "\n")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_zeros(x_texts: list[str], cfg: CliConfig) -> int:
    if not cfg.zeros:
        raise UsageError("--zeros FILE is required")
    xs = [_decimal(t) for t in (x_texts or ("1", "10", "100"))]
    if any(not x > 0 for x in xs):
        raise UsageError("x must be > 0")
    try:
        table = load_zeros(cfg.zeros)
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        raise OSError(f"cannot load zeros from {cfg.zeros}: {exc}") from exc
    if not len(table):
        raise UsageError("table empty")
    prec = max(cfg.precision_bits, digits_to_bits(table.precision_decimal_digits))
    all_ok = True
    with _output(cfg.out) as buf:
        _header(buf, "zero-expansion reconstruction of Riesz(x)", cfg,
                f"zeros={len(table)} table_digits={table.precision_decimal_digits}")
        buf.write("x,reconstruction,reference,delta,envelope,status\n")
        for x in xs:
            rec = reconstruct_riesz(x, table, precision_bits=prec)
            ref = riesz(RieszQuery(x, cfg.tolerance))
            with mpmath.workprec(prec + 32):
                delta = abs(rec.value - ref.value)
            ok = delta <= rec.error_bound + cfg.tolerance
            all_ok &= ok
            buf.write(
                f"{_fmt(x, cfg)},{_fmt(rec.value, cfg)},{_fmt(ref.value, cfg)},"
                f"{_bound(delta)},{_bound(rec.error_bound)},{'pass' if ok else 'FAIL'}\n"
            )
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_coeffs(n: int, cfg: CliConfig) -> int:
    if n < 1:
        raise UsageError("n must be >= 1")
    with _output(cfg.out) as buf:
        buf.write("# exact coefficients of y^k in Riesz(4 pi^2 y); halve them for (1/2) Riesz\n")
        buf.write("k,coefficient\n")
        for k in range(1, n + 1):
            buf.write(f"{k},{maclaurin_coefficient(k)}\n")
    return EXIT_OK


# ---------------------------------------------------------------- argument parsing


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=40, help="output digits and working precision (default 40)")
    common.add_argument("--tol", default="1e-30", help="absolute error tolerance (default 1e-30)")
    common.add_argument("--method", default="auto", choices=[m.value for m in QueryMethod])
    common.add_argument("--c", default="2", help="exponent c of R_c (default 2)")
    common.add_argument("--zeros", help="zeros file for the zeros command")
    common.add_argument("--out", help="write CSV here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scan")
    common.add_argument("--nmax", type=_positive_int, default=100_000, help="theorem1 cutoff in validate")

    parser = argparse.ArgumentParser(prog="riesz", description="High-precision Riesz function evaluation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate Riesz(x)")
    p.add_argument("x")
    p = sub.add_parser("scan", parents=[common], help="growth-diagnostic CSV on a geometric grid")
    p.add_argument("x_min")
    p.add_argument("x_max")
    p.add_argument("steps", type=int)
    p = sub.add_parser("validate", parents=[common], help="cross-check the three series routes")
    p.add_argument("x", nargs="*")
    p = sub.add_parser("zeros", parents=[common], help="reconstruct Riesz(x) from zeta zeros")
    p.add_argument("x", nargs="*")
    p = sub.add_parser("coeffs", parents=[common], help="exact Maclaurin coefficients")
    p.add_argument("n", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(
            digits=args.digits,
            tolerance=_decimal(args.tol, "--tol"),
            method=args.method,
            out=args.out,
            zeros=args.zeros,
            c=_decimal(args.c, "--c"),
            jobs=args.jobs,
            n_max=args.nmax,
        )
        if args.command == "eval":
            return cmd_eval(args.x, cfg)
        if args.command == "scan":
            return cmd_scan(args.x_min, args.x_max, args.steps, cfg)
        if args.command == "validate":
            return cmd_validate(args.x, cfg)
        if args.command == "zeros":
            return cmd_zeros(args.x, cfg)
        return cmd_coeffs(args.n, cfg)
    except (UsageError, RieszError) as exc:
        print(f"riesz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"riesz: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
