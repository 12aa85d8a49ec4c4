"""Command-line entry point.

Exit status is the machine contract: 0 proven/pass, 1 not-proven/fail,
2 indeterminate, 64 usage error, 65 configuration or data error,
66 missing input file.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__, _kernels
from .certificates import INDETERMINATE, PROVEN, verify
from .config import PRECISION_ENV, Config, ConfigError, load_config
from .geometry import DivergentEndpointError, breakpoints_x, build_floor_matrix, interval_profile
from .linforms import (
    DeskScaleError,
    PreconditionError,
    eval_r,
    integrality_suite,
    linear_form_coefficients,
    partial_fractions,
)
from .params import InfeasibleCollectionError, ZetaCollection
from .search import PrecisionProfile, search_parameters

EXIT_OK, EXIT_FAIL, EXIT_INDETERMINATE = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT = 64, 65, 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_common(p: argparse.ArgumentParser, threads: bool = True) -> None:
    p.add_argument("--config", required=True, help="configuration file (bundled names such as zeta35.cfg also work)")
    p.add_argument("--precision-bits", type=int, help="working precision; overrides the config and the environment")
    if threads:
        p.add_argument("--threads", type=int, help="worker threads for the nu_0 sweep (default: config, else all)")
    p.add_argument("--report", help="also write the report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetacert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zetacert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("verify-zeta", "verify-beta"):
        _add_common(sub.add_parser(name, help=f"certificate for a {name[7:]} collection"))

    p = sub.add_parser("desk-check", help="exact desk-scale checks of the linear-form construction")
    p.add_argument("--family", choices=("zeta", "beta"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strong", action="store_true", help="include the Phi-factor claims (needs n > s^2)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random reconstruction points")
    _add_common(p, threads=False)

    p = sub.add_parser("search", help="seeded hill climbing on the certificate margin")
    p.add_argument("--family", choices=("zeta", "beta"), required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coarse-bits", type=int, default=53, help="screening precision (<= 53 means float64)")
    p.add_argument("--history", help="write line-delimited JSON history here")
    _add_common(p)

    p = sub.add_parser("breakpoints", help="breakpoint set and nu_0 profile summary")
    _add_common(p)
    return parser


def _precision(args, cfg: Config) -> tuple[int, str]:
    if args.precision_bits is not None:
        bits, src = args.precision_bits, "flag"
    elif os.environ.get(PRECISION_ENV):
        try:
            bits, src = int(os.environ[PRECISION_ENV]), f"env:{PRECISION_ENV}"
        except ValueError:
            raise UsageError(f"{PRECISION_ENV} must be an integer") from None
    else:
        bits, src = cfg.precision_bits, "config"
    if bits < 64:
        raise UsageError(f"precision must be at least 64 bits (got {bits})")
    return bits, src


def _emit(text: str, path: str | None) -> None:
    sys.stdout.write(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _kv(pairs) -> str:
    return "".join(f"{k}: {v}\n" for k, v in pairs)


# ---------------------------------------------------------------- commands


def _cmd_verify(args, cfg: Config, family: str) -> int:
    if cfg.family != family:
        raise UsageError(f"verify-{family} needs a {family} config, got family {cfg.family}")
    bits, src = _precision(args, cfg)
    threads = args.threads if args.threads is not None else cfg.threads
    cert = verify(cfg.collection, bits, threads)
    pairs = cert.fields()
    pairs.insert(pairs.index(("precision_bits", str(bits))) + 1, ("precision_source", src))
    pairs.append(("backend", _kernels.active_backend()))
    _emit(_kv(pairs), args.report)
    if cert.verdict == PROVEN:
        return EXIT_OK
    return EXIT_INDETERMINATE if cert.verdict == INDETERMINATE else EXIT_FAIL


def _structural_checks(col, n: int, seed: int) -> list[tuple[str, bool, str]]:
    table = partial_fractions(col, n)
    rng = random.Random(seed)
    pts = []
    while len(pts) < 10:
        t = Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 997))
        try:
            pts.append((t, eval_r(col, n, t)))
        except ZeroDivisionError:
            continue
    out = [("recon", all(table.reconstruct(t) == v for t, v in pts), "partial fractions reproduce R at 10 random points")]
    if table.family == "zeta":
        mn = col.m2 * n
        sym = all(a == (-1) ** (i + 1) * table.coeffs[i, mn - k] for (i, k), a in table.coeffs.items())
        out.append(("sym", sym, "a_ik = (-1)^(i+1) a_i,m2n-k"))
        lf = linear_form_coefficients(table, thetas=())
        out.append(("res", lf.column_sums[1] == 0, "sum_k a_1k = 0"))
        even = all(v == 0 for i, v in lf.column_sums.items() if i % 2 == 0)
        out.append(("even", even, "sum_k a_ik = 0 for even i"))
    elif -col.s + 1 <= -2:
        out.append(("res", table.column_sum(1) == 0, "sum_k a~_1k = 0"))
    return out


def _cmd_desk(args, cfg: Config) -> int:
    if cfg.family != args.family:
        raise UsageError(f"--family {args.family} does not match the config family {cfg.family}")
    if args.n < 2 or args.n % 2:
        raise UsageError(f"--n must be an even integer >= 2 (got {args.n})")
    t0 = time.perf_counter()
    rows = [(name, ok, ok and 1 or 0, 0 if ok else 1, desc) for name, ok, desc in _structural_checks(cfg.collection, args.n, args.seed)]
    rep = integrality_suite(cfg.collection, args.n, strong=args.strong)
    for c in rep.checks:
        rows.append((c.name, c.ok, c.passed, c.failed, c.description))
    lines = [
        f"family: {cfg.family}",
        f"n: {args.n}",
        f"strong: {str(args.strong).lower()}",
        f"tool_version: {__version__}",
        "",
        f"{'check':<8}{'result':<8}{'pass':>8}{'fail':>8}  description",
    ]
    for name, ok, npass, nfail, desc in rows:
        lines.append(f"{name:<8}{'pass' if ok else 'FAIL':<8}{npass:>8}{nfail:>8}  {desc}")
    passed = sum(1 for r in rows if r[1])
    lines += ["", f"checks_passed: {passed}/{len(rows)}", f"wall_time_ms: {(time.perf_counter() - t0) * 1000:.0f}"]
    _emit("\n".join(lines) + "\n", args.report)
    return EXIT_OK if passed == len(rows) else EXIT_FAIL


def _cmd_search(args, cfg: Config) -> int:
    if cfg.family != args.family:
        raise UsageError(f"--family {args.family} does not match the config family {cfg.family}")
    bits, src = _precision(args, cfg)
    if args.budget < 0:
        raise UsageError("--budget must be >= 0")
    _kernels.set_threads(args.threads if args.threads is not None else cfg.threads)
    hist = open(args.history, "w") if args.history else None
    try:
        state = search_parameters(
            cfg.collection, args.budget, args.seed, PrecisionProfile(args.coarse_bits, bits),
            on_record=(lambda r: hist.write(r.to_json() + "\n")) if hist else None,
        )
    finally:
        if hist:
            hist.close()
    best, margin = state.best
    verdict = next((r.verdict for r in reversed(state.history) if r.accepted), None)
    pairs = [("tool_version", __version__), ("family", cfg.family), ("seed", args.seed), ("budget", args.budget),
             ("coarse_bits", args.coarse_bits), ("precision_bits", bits), ("precision_source", src),
             ("evaluations", state.evaluations), ("history_records", len(state.history)),
             ("accepted_moves", len(state.accepted()))]
    if isinstance(best, ZetaCollection):
        pairs += [("best_m1", best.m1), ("best_m2", best.m2), ("best_deltas", " ".join(map(str, best.deltas)))]
    else:
        pairs += [("best_eta0", best.eta0), ("best_etas", " ".join(map(str, best.etas)))]
    pairs += [("best_margin", "none" if margin is None else f"{float(margin):.12f}"),
              ("verdict", verdict or "not-evaluated")]
    _emit(_kv(pairs), args.report)
    if verdict == PROVEN:
        return EXIT_OK
    return EXIT_INDETERMINATE if verdict == INDETERMINATE else EXIT_FAIL


def _cmd_breakpoints(args, cfg: Config) -> int:
    _kernels.set_threads(args.threads if args.threads is not None else cfg.threads)
    t0 = time.perf_counter()
    matrix = build_floor_matrix(cfg.collection)
    bp = breakpoints_x(matrix)
    prof = interval_profile(matrix)
    lo, hi = bp.gaps()
    pairs = [("tool_version", __version__), ("family", cfg.family), ("rows", matrix.H),
             ("distinct_denominators", len(bp.qs)), ("max_denominator", max(bp.qs, default=0)),
             ("breakpoint_count", len(bp)), ("mid_marker", matrix.mid_marker), ("mid_index", bp.mid_index),
             ("mid_inserted", str(bp.mid_inserted).lower()), ("min_gap", lo), ("max_gap", hi),
             ("nu0_first_interval", int(prof.nu0[0])), ("nu0_min", int(prof.nu0.min())),
             ("nu0_max", int(prof.nu0.max())), ("negative_intervals", int((prof.nu0 < 0).sum())),
             ("backend", _kernels.active_backend()),
             ("wall_time_ms", f"{(time.perf_counter() - t0) * 1000:.0f}")]
    _emit(_kv(pairs), args.report)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if args.command == "verify-zeta":
            return _cmd_verify(args, cfg, "zeta")
        if args.command == "verify-beta":
            return _cmd_verify(args, cfg, "beta")
        if args.command == "desk-check":
            return _cmd_desk(args, cfg)
        if args.command == "search":
            return _cmd_search(args, cfg)
        return _cmd_breakpoints(args, cfg)
    except FileNotFoundError as exc:
        print(f"zetacert: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except ConfigError as exc:
        print(f"zetacert: {exc.source}: {'syntax error' if exc.syntax else 'invalid configuration'}", file=sys.stderr)
        for issue in exc.issues:
            print(f"  {issue}", file=sys.stderr)
        return EXIT_DATA
    except (UsageError, PreconditionError) as exc:
        print(f"zetacert: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleCollectionError, DeskScaleError, DivergentEndpointError) as exc:
        print(f"zetacert: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
