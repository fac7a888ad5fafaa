"""Command-line interface: every computation as JSON Lines or CSV records.

Exit codes: 0 success, 2 argument error, 3 precision error, 4 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import mpmath

from . import airy_edge, bulk_kernels, external_source, gue_finite, mc_oracle, verify
from .numerics import (
    DEFAULT_DIGITS,
    DomainError,
    PrecisionError,
    as_fraction,
    dirac_det,
)
from .numerics.special import _workdps, dirac_det_product
from .results import OutputRecord, to_csv, to_jsonl

EXIT_OK, EXIT_ARGS, EXIT_PRECISION, EXIT_CHECK = 0, 2, 3, 4


class CrossCheckFailure(Exception):
    def __init__(self, records, failures):
        super().__init__(f"{len(failures)} cross-check(s) failed")
        self.records = records
        self.failures = failures


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


class _ArgError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if d < 1:
        raise argparse.ArgumentTypeError("digits must be >= 1")
    return d


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


R = OutputRecord.make


# subcommands --------------------------------------------------------------------

def cmd_gamma_k(a) -> Iterator[OutputRecord]:
    yield R("gamma_K", {"K": a.k}, bulk_kernels.gamma_k(a.k), "exact")
    for name, v in zip(("gamma_U", "gamma_Sp", "gamma_O"), bulk_kernels.gamma_k_ensembles(a.k)):
        yield R(name, {"K": a.k}, v, "closed-form")


def cmd_sine_det(a) -> Iterator[OutputRecord]:
    det, closed = bulk_kernels.sine_det_check(a.k)
    yield R("sine_taylor_det", {"K": a.k}, det, "exact")
    yield R("sine_det_closed", {"K": a.k}, closed, "closed-form", agrees=det == closed)
    u, sp, o = bulk_kernels.checkerboard_factorization(a.k)
    yield R("checkerboard_I_Sp", {"order": a.k}, sp, "exact")
    yield R("checkerboard_I_O", {"order": a.k}, o, "exact", factorizes=u == sp * o)


def cmd_bessel(a) -> Iterator[OutputRecord]:
    p = {"K": a.k, "alpha": a.alpha}
    closed = bulk_kernels.bessel_moment_closed(a.k, a.alpha, a.digits)
    yield R("bessel_moment_closed", p, closed, "numeric", a.digits, digits=a.digits)
    try:
        det = bulk_kernels.bessel_taylor_matrix(a.k, a.alpha).det()
    except DomainError as exc:
        # the Taylor route has poles at alpha = 0, -1, ...; the closed form does not
        yield R("bessel_taylor_det", p, "unavailable", "exact", reason=str(exc))
        return
    yield R("bessel_taylor_det", p, det, "exact")
    lhs, rhs = bulk_kernels.bessel_consistency(a.k, a.alpha, a.digits)
    with _workdps(a.digits):
        dev = abs(lhs / rhs - 1)
    yield R("bessel_bridge_det", p, lhs, "numeric", a.digits, digits=a.digits, rel_dev=dev)


def cmd_barnes_check(a) -> Iterator[OutputRecord]:
    for K in range(1, a.k + 1):
        dev = verify.barnes_dirac_deviation(K, a.digits)
        prod = dirac_det_product(-K, a.digits)
        yield R("dirac_det", {"z": -K}, dirac_det(-K, a.digits), "numeric", a.digits,
                digits=a.digits, product_mode=prod.value, product_error_bound=prod.error_bound)
        yield R("gamma_dirac_identity_deviation", {"K": K}, dev, "check", 5, digits=a.digits)


def cmd_airy(a) -> Iterator[OutputRecord]:
    for n in range(a.max_order + 1):
        poly = airy_edge.airy_hankel_det(n)
        yield R("airy_hankel_det", {"n": n}, str(poly), "exact")
        yield R("airy_hankel_numeric", {"n": n}, airy_edge.airy_hankel_numeric(n, a.digits),
                "numeric", a.digits, digits=a.digits)
    for K in range(1, a.gamma_table + 1):
        g = airy_edge.edge_gamma(K, a.digits)
        with _workdps(a.digits):
            yield R("edge_gamma", {"K": K}, g, "numeric", a.digits, digits=a.digits,
                    log_abs=mpmath.log(abs(g)))


def cmd_finite_n(a) -> Iterator[OutputRecord]:
    lam = a.lam
    nfac = a.k
    N = a.n if a.n is not None else a.m + (nfac + 1) // 2
    p = {"M": a.m, "N": N, "factors": nfac, "lambda": lam, "D": a.d}
    spec = gue_finite.MomentSpec.equal(a.m, nfac, lam, N=N, D=a.d)
    if a.d == 0:
        yield R("charpoly_moment", p, gue_finite.charpoly_moment(spec), "exact")
        if lam == 0 and a.m % 2 == 0 and nfac % 2 == 0 and nfac:
            yield R("center_moment_closed", p, gue_finite.center_moment_closed(a.m, nfac // 2, N), "closed-form")
        return
    yield R("derivative_moment", p, gue_finite.derivative_moment(spec), "exact")
    if nfac % 2 == 0 and nfac:
        K = nfac // 2
        yield R("derivative_row_determinant", p, gue_finite.deriv_moment_det(a.m, a.d, K, N, lam), "exact")
        if lam == 0 and a.m % 2 == 0 and a.d % 2 == 0 and a.d <= a.m:
            yield R("derivative_row_closed", p, gue_finite.deriv_moment_closed(a.m, a.d, K, N), "closed-form")
            yield R("derivative_row_closed_printed_bracket", p,
                    gue_finite.deriv_moment_closed(a.m, a.d, K, N, printed=True), "closed-form")


def cmd_asymptotic(a) -> Iterator[OutputRecord]:
    if a.edge:
        seq = gue_finite.edge_moment_scaling(a.k, a.n_list, digits=a.digits)
        ref = gue_finite.edge_reference_constant(a.k, a.digits)
        for N, v in zip(a.n_list, seq):
            yield R("edge_moment_scaling", {"K": a.k, "N": N}, v, "numeric", a.digits,
                    digits=a.digits, reference=ref)
        return
    for N, r in zip(a.n_list, gue_finite.bulk_asymptotic_ratio(a.lam, a.k, a.n_list, a.digits)):
        yield R("bulk_asymptotic_ratio", {"K": a.k, "N": N, "lambda": a.lam}, r, "numeric", a.digits,
                digits=a.digits)


def cmd_source(a) -> Iterator[OutputRecord]:
    if len(a.eigs) != len(a.mult):
        raise ValueError("--eigs and --mult need the same length")
    src = external_source.SourceSpec(zip(a.eigs, a.mult))
    lams = a.lam if len(a.lam) == a.k else (a.lam * a.k if len(a.lam) == 1 else None)
    if lams is None:
        raise ValueError("--lambda needs one value or exactly --k values")
    N = a.n if a.n is not None else a.m + a.k
    spec = gue_finite.MomentSpec(a.m, N, a.k, tuple(lams))
    p = {"M": a.m, "N": N, "K": a.k, "lambda": list(lams), "eigs": a.eigs, "mult": a.mult}
    exact = external_source.source_moment(spec, src)
    yield R("source_moment", p, exact, "exact")
    if a.k <= 3 and (len(set(lams)) in (1, len(lams))):
        b = external_source.b_integral_moment_bounded(spec, src, a.digits)
        yield R("b_integral_moment", p, b.value, "numeric", a.digits, digits=a.digits, error_bound=b.error_bound)


def cmd_critical(a) -> Iterator[OutputRecord]:
    yield R("critical_quartic_hankel", {"K": a.k}, external_source.critical_quartic_hankel(a.k, a.digits),
            "numeric", a.digits, digits=a.digits)
    yield R("critical_curvature", {"a": 1}, external_source.critical_curvature(1), "exact")
    for N, r in zip(a.n_list, external_source.critical_ratio(a.k, a.n_list, a.digits)):
        yield R("critical_ratio", {"K": a.k, "N": N}, r, "numeric", 12, digits=a.digits)


def cmd_mc(a) -> Iterator[OutputRecord]:
    src = None
    if a.eigs:
        src = external_source.SourceSpec(zip(a.eigs, a.mult or [1] * len(a.eigs)))
    lams = a.lam if len(a.lam) == a.k else (a.lam * a.k if len(a.lam) == 1 else None)
    if lams is None:
        raise ValueError("--lambda needs one value or exactly --k values")
    cfg = mc_oracle.SamplerConfig(a.m, float(a.n), src, a.samples, a.seed, a.workers, a.antithetic)
    est = mc_oracle.estimate_moment(cfg, [float(x) for x in lams], a.k, a.d)
    p = {"M": a.m, "N": a.n, "K": a.k, "lambda": list(lams), "D": a.d, "seed": a.seed,
         "workers": a.workers, "antithetic": a.antithetic}
    yield R("mc_moment", p, est.mean, "mc", samples=est.samples, stderr=est.stderr)


def cmd_verify_all(a) -> Iterator[OutputRecord]:
    records, failures = [], []
    for check in verify.CHECKS:
        res = check()
        status = "measured" if res.passed is None else ("pass" if res.passed else "fail")
        records.append(R(res.name, {}, status, "check", **{"measured": json.loads(json.dumps(res.measured, default=str))}))
        if res.passed is False:
            failures.append(res.name)
    records.append(R("verify_all_failures", {}, json.dumps(failures), "check"))
    if failures:
        raise CrossCheckFailure(records, failures)
    yield from records


# wiring -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charpoly-moments", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn: Callable, help_text: str, digits: bool = False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
        if digits:
            p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
        return p

    p = add("gamma-k", cmd_gamma_k, "gamma_K and the U/Sp/O constants")
    p.add_argument("--k", type=int, required=True)
    p = add("sine-det", cmd_sine_det, "sine-kernel Taylor determinant")
    p.add_argument("--k", type=int, required=True)
    p = add("bessel", cmd_bessel, "Bessel-kernel moments", digits=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p = add("barnes-check", cmd_barnes_check, "gamma_K vs the Dirac determinant", digits=True)
    p.add_argument("--k", type=int, required=True)
    p = add("airy", cmd_airy, "Airy Hankel determinants d_n", digits=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--gamma-table", type=int, default=0, metavar="KMAX",
                   help="also emit edge_gamma for K = 1..KMAX (log-plot data)")
    p = add("finite-n", cmd_finite_n, "exact finite-N moments (--k = number of factors)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(0))
    p.add_argument("--n", type=_rational, default=None, help="weight scale (default M + ceil(k/2))")
    p = add("asymptotic", cmd_asymptotic, "bulk ratio r(N) for F_{2K} (or --edge scaling)", digits=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(0))
    p.add_argument("--edge", action="store_true")
    p = add("source", cmd_source, "external-source moments", digits=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eigs", type=_rational_list, required=True)
    p.add_argument("--mult", type=_int_list, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational_list, default=[Fraction(0)])
    p.add_argument("--n", type=_rational, default=None, help="weight scale (default M + K)")
    p = add("critical", cmd_critical, "gap-closing quartic Hankel determinant", digits=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-list", type=_int_list, default=[])
    p = add("mc", cmd_mc, "Monte Carlo estimate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational_list, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--eigs", type=_rational_list, default=None)
    p.add_argument("--mult", type=_int_list, default=None)
    p.add_argument("--antithetic", action="store_true")
    add("verify-all", cmd_verify_all, "run every cross-check")
    return parser


def _emit(records, fmt: str, out) -> None:
    out.write(to_csv(records) if fmt == "csv" else to_jsonl(records))


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        err.write(f"argument error: {exc}\n")
        return EXIT_ARGS
    try:
        records = list(args.func(args))
    except CrossCheckFailure as exc:
        _emit(exc.records, args.format, out)
        err.write(f"cross-check failures: {json.dumps(exc.failures)}\n")
        return EXIT_CHECK
    except PrecisionError as exc:
        err.write(f"precision error: {exc}\n")
        return EXIT_PRECISION
    except (ValueError, DomainError, ZeroDivisionError) as exc:
        err.write(f"argument error: {exc}\n")
        return EXIT_ARGS
    _emit(records, args.format, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
