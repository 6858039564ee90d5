"""Command-line entry point: ``sunconj <subcommand> [options]``.

Reports go to stdout as JSON (default) or CSV, progress to stderr. Exit codes:
0 success, 1 invalid arguments, 2 resource limit or factoring timeout,
3 an invariant check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict, is_dataclass
from pathlib import Path

from . import constants, empirics, equidist, phi_mean
from .arith_core import mertens_product, twin_prime_constant
from .errors import DomainError, FactorizationTimeout, InvalidRangeError, ResourceLimitError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_CHECK = 0, 1, 2, 3


def fmt_float(x: float) -> str:
    return format(x, ".12g")


def _plain(obj):
    if is_dataclass(obj):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def emit_json(command: str, report: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, **_plain(report)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# -- subcommands: each returns (json_payload, csv_header, csv_rows, ok) ------


def cmd_chain(args):
    if (args.c_rom is None) == (args.phi is None):
        raise DomainError("chain needs exactly one of --c-rom or --phi")
    if args.c_rom is not None:
        rep = constants.density_chain(args.c_rom, paper_rounding=args.paper_rounding)
        payload = {"density_chain": rep}
        rows = [(k, v) for k, v in asdict(rep).items()]
        return payload, ["quantity", "value"], rows, rep.delta > 0
    cond = constants.conditional_chain(args.phi)
    uncond = constants.unconditional_chain(args.phi)
    payload = {"phi": args.phi, "conditional": cond, "unconditional": uncond}
    rows = [("phi", args.phi), ("conditional", cond), ("unconditional", uncond)]
    return payload, ["quantity", "value"], rows, True


def cmd_romanov(args):
    cache = constants.default_cache()
    if args.factors:
        cache.update_from(args.factors)
    terms = constants.romanov_terms(args.m, cache)
    main = float(sum(terms))
    tail = constants.romanov_tail_bound(args.m) if args.m >= 2 else None
    payload = {
        "M": args.m,
        "main": main,
        "tail_bound": tail,
        "upper": main + tail if tail is not None else None,
        "loaded_exponents": sorted(k for k, s in cache.sources.items() if s == "loaded"),
    }
    running = 0.0
    rows = []
    for k, t in enumerate(terms, 1):
        running += float(t)
        rows.append((k, float(t * k), float(t), running))
    ok = all(t >= 0 for t in terms)
    return payload, ["k", "W", "W_over_k", "cumulative"], rows, ok


def cmd_phi(args):
    if (args.k is None) == (args.n is None):
        raise DomainError("phi needs exactly one of --k or --n")
    K = args.k if args.k is not None else phi_mean.capital_k(args.n)
    rep = phi_mean.phi(K)
    payload = {"N": args.n, "report": rep, "lower_floor": rep.lower_floor, "complete": rep.complete}
    rows = list(phi_mean.phi_rows(K)) if args.format == "csv" else []
    ok = rep.complete and rep.phi >= rep.lower_floor
    return payload, ["k2", "h", "d", "f", "singular_series"], rows, ok


def cmd_equidist(args):
    rep = equidist.fundamental_domain_count(args.p)
    ks = args.k or []
    rows = equidist.rho_rows(args.p, ks)
    rep.rho_values = [(r[1], r[4]) for r in rows]
    payload = {"report": rep, "density": rep.density, "expected_cases": rep.expected_cases}
    ok = rep.solutions == rep.expected and rep.case_counts == rep.expected_cases
    return payload, ["p", "K", "count", "index_size", "rho", "deviation"], rows, ok


def cmd_moments(args):
    rep = empirics.moments(args.n)
    payload = rep.as_dict()
    ok = rep.S2 == rep.S1 + rep.D and rep.cs_bound <= rep.r_star_count
    rows = [(k, v) for k, v in payload.items()]
    return payload, ["quantity", "value"], rows, ok


def cmd_selberg(args):
    rep = empirics.selberg_check(args.n)
    payload = {"N": rep.N, "K": rep.K, "max_ratio": rep.max_ratio}
    rows = [(r.k2, r.h, r.d, r.F, r.bound, r.ratio) for r in rep.rows]
    odd_ok = all(r.F == 0 for r in rep.rows if r.h % 2)
    return payload, ["k2", "h", "d", "F", "bound", "ratio"], rows, odd_ok and rep.max_ratio <= 1.5


def cmd_verify_sun(args):
    if args.format == "csv":
        recs = empirics.sun_witnesses(args.lo, args.hi, args.k_cap)
        rows = [(r.n, r.k_min if not r.capped else "", r.prime_value if not r.capped else "") for r in recs]
        rep = empirics.SunRangeReport(args.lo, args.hi, args.k_cap)
        rep.absorb(recs)
    else:
        rep = empirics.verify_sun_range(args.lo, args.hi, args.k_cap, checkpoint=args.checkpoint)
        rows = []
    if rep.capped:
        print(
            f"note: {len(rep.capped)} n have no witness with k <= {args.k_cap}; rerun with a larger --k-cap",
            file=sys.stderr,
        )
    return rep.to_json(), ["n", "k_min", "prime_value"], rows, not rep.capped


def cmd_constants(args):
    c2 = twin_prime_constant(args.p_cutoff)
    mp = mertens_product(args.p_cutoff)
    payload = {"twin_prime_constant": c2, "inverse_c2": 1 / c2.value, "mertens": mp, "mertens_ratio": mp.ratio}
    rows = [
        ("c2_value", c2.value),
        ("c2_lower", c2.lower),
        ("c2_upper", c2.upper),
        ("mertens_product", mp.product),
        ("mertens_asymptotic", mp.asymptotic),
    ]
    return payload, ["quantity", "value"], rows, c2.lower <= c2.value <= c2.upper


COMMANDS = {
    "chain": cmd_chain,
    "romanov": cmd_romanov,
    "phi": cmd_phi,
    "equidist": cmd_equidist,
    "moments": cmd_moments,
    "selberg-check": cmd_selberg,
    "verify-sun": cmd_verify_sun,
    "constants": cmd_constants,
}


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", type=Path, help="write the report here instead of stdout")
    common.add_argument("--threads", type=_positive, default=1, help="accepted for config parity; output does not depend on it")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="sunconj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chain", parents=[common], help="density constant chains")
    s.add_argument("--c-rom", type=float)
    s.add_argument("--phi", type=float)
    s.add_argument("--paper-rounding", action="store_true")

    s = sub.add_parser("romanov", parents=[common], help="Romanov-type constant main term and tail")
    s.add_argument("--m", type=_positive, default=constants.DEFAULT_M)
    s.add_argument("--factors", type=Path, help=f"factor table for 2^k-1 (also ${constants.FACTOR_TABLE_ENV})")

    s = sub.add_parser("phi", parents=[common], help="mean of the singular series over the index set")
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)

    s = sub.add_parser("equidist", parents=[common], help="residue counts of d(k2,h) modulo p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, action="append", help="K values for rho_p(K); repeatable")

    s = sub.add_parser("moments", parents=[common], help="S1, S2, D and the Cauchy-Schwarz bound")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("selberg-check", parents=[common], help="pair counts against the Selberg bound")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("verify-sun", parents=[common], help="search minimal witnesses 2^k + (n-k) prime")
    s.add_argument("--lo", type=int, default=2)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--k-cap", type=_positive, default=empirics.DEFAULT_K_CAP)
    s.add_argument("--checkpoint", type=Path)

    s = sub.add_parser("constants", parents=[common], help="twin prime constant and Mertens product")
    s.add_argument("--p-cutoff", type=int, default=10**6)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        payload, header, rows, ok = COMMANDS[args.command](args)
    except (ResourceLimitError, FactorizationTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, InvalidRangeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "csv":
        text = emit_csv(header, rows)
    else:
        text = emit_json(args.command, {"ok": ok, **payload})
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not ok:
        print(f"check failed in {args.command}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
