"""``disc-census`` command line."""

from __future__ import annotations

import argparse
import sys
import time

from . import census, ffpoly, fielddisc, lmfdb, sieve
from .errors import BudgetExceeded, DiscCensusError, InvalidInput, NetworkFailure
from .poly_core import MonicIntPoly
from .report import RunConfig, csv_report, json_report, write_output
from .verify import FAIL, verify_paper_vectors

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET, EXIT_NETWORK = 0, 1, 2, 3, 4

GROUP_KEYS = {"squarefree": census.SIGNED, "absolute": census.ABSOLUTE, "disc": census.DISC_VALUE}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def parse_poly(text: str) -> MonicIntPoly:
    """``"1,0,0,0,-2"`` is ``X^4 - 2``: highest degree first, leading 1."""
    try:
        coeffs = [int(c) for c in text.split(",")]
    except ValueError:
        raise InvalidInput(f"cannot parse polynomial {text!r}") from None
    if len(coeffs) < 2:
        raise InvalidInput("polynomial must have degree at least 1")
    return MonicIntPoly.from_highest(coeffs)


def _int_list(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise InvalidInput(f"cannot parse integer list {text!r}") from None


def _census(args, cfg):
    key = GROUP_KEYS[args.group_by]
    table = census.count_by_squarefree_class(args.n, args.height, key, args.workers, args.budget)
    header = ("disc", "count") if key == census.DISC_VALUE else ("u", "count")
    return csv_report(cfg, header, table.rows(), f"key={key} filter=irreducible box=strict")


def _trinomial(args, cfg):
    res = census.trinomial_count(args.n, args.A, args.B, args.C, args.D, args.s, args.source)
    rows = [{"a": a, "count": c} for a, c in sorted(res.per_a.items())]
    return json_report(cfg, {"total": res.total, "max_per_a": res.max_per_a, "per_a": rows},
                       {"max_per_a_over_4": res.max_per_a / 4, "total_over_4A": res.total / (4 * max(args.A, 1))})


def _charsum(args, cfg):
    p, n = args.p, args.n
    if args.mode == "total":
        result = {"total": ffpoly.charsum_disc_total(p, n, args.budget, args.workers)}
        return json_report(cfg, result)
    if args.mode == "mixed":
        if args.lam is None:
            raise InvalidInput("--lam is required for --mode mixed")
        s = ffpoly.mixed_charsum(p, n, _int_list(args.lam), args.budget)
        result = {"counts": list(s.counts), "magnitude": s.magnitude}
        return json_report(cfg, result, {"ratio": s.magnitude / p ** (n - 1)})
    sweep = ffpoly.mixed_charsum_sweep(p, n, args.budget)
    result = {"max_ratio": sweep.max_ratio, "argmax": list(sweep.argmax), "lambdas": sweep.lambdas}
    return json_report(cfg, result, {"constant": ffpoly.CHARSUM_CONSTANT,
                                     "within_constant": sweep.max_ratio <= ffpoly.CHARSUM_CONSTANT})


def _sieve(args, cfg):
    if args.poly is not None:
        if args.z is None:
            raise InvalidInput("--z is required with --poly")
        chk = sieve.sieve_identity_check(parse_poly(args.poly), sieve.make_window(args.z))
        return json_report(cfg, {"lhs": chk.lhs, "rhs": chk.rhs, "equal": chk.equal})
    if args.n is None or args.height is None or args.u is None:
        raise InvalidInput("--n, --height and --u are required without --poly")
    b = sieve.sieve_upper_bound(args.n, args.height, args.u, args.z, args.budget, workers=args.workers)
    result = {
        "value": b.value,
        "value_float": float(b.value),
        "label": b.label,
        "z": float(b.window.z),
        "pi_count": b.window.pi_count,
        "max_divisors_in_window": b.max_divisors_in_window,
        "exact_count": b.exact_count,
        "condition": "pi(z,2z) >= 2 * max #{p in window : p | Disc f}",
    }
    ratio = float(b.value) / b.exact_count if b.exact_count else None
    return json_report(cfg, result, {"bound_over_exact": ratio})


def _fielddisc(args, cfg):
    rep = fielddisc.field_disc(parse_poly(args.poly))
    result = {
        "polynomial": str(rep.polynomial),
        "disc": str(rep.disc),
        "dedekind": [{"p": p, "verdict": v} for p, v in rep.tested_primes],
        "certified_field_disc": None if rep.certified_field_disc is None else str(rep.certified_field_disc),
        "squarefree_u": str(rep.sf_part_of_field_disc.u),
    }
    return json_report(cfg, result)


def _pell(args, cfg):
    res = census.pell_count(args.s, args.M, args.rhs, args.bound)
    return json_report(cfg, {"count": res.count, "divisor_count": res.divisor_count})


def _lmfdb(args, cfg):
    rec = lmfdb.lookup(args.label, offline=args.offline)
    result = {"label": rec.label, "degree": rec.degree, "r2": rec.r2, "disc_abs": str(rec.disc_abs),
              "disc_sign": rec.disc_sign}
    if args.poly is not None:
        cmp = lmfdb.compare_with_polynomial(rec, parse_poly(args.poly))
        result["comparison"] = {k: str(v) if k.endswith("disc") else v for k, v in cmp.items()}
    return json_report(cfg, result)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="disc-census", description="Exact discriminant censuses and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, workers=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--budget", type=int, default=10**7)
        if workers:
            p.add_argument("--workers", type=int, default=1)
        return p

    p = common(sub.add_parser("census", help="T_n(H, u) table over irreducible f with |a_i| < H"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--group-by", choices=sorted(GROUP_KEYS), default="squarefree")

    p = common(sub.add_parser("trinomial", help="(a, b) box counts for Delta_n(a, b) = s r^2"), workers=False)
    for name in ("n", "A", "B", "C", "D", "s"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--source", choices=("closed", "resultant"), default="closed")

    p = common(sub.add_parser("charsum", help="character sums of Disc over F_p"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("total", "mixed", "sweep"), default="sweep")
    p.add_argument("--lam", default=None, help="comma-separated lambda, paired with a_{n-1} first")

    p = common(sub.add_parser("sieve", help="square-sieve majorant, or the identity for one polynomial"))
    p.add_argument("--n", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--poly", default=None)

    p = common(sub.add_parser("fielddisc", help="Dedekind verdicts and field discriminant"), workers=False)
    p.add_argument("--poly", required=True)

    p = common(sub.add_parser("pell", help="solutions of s r^2 - M c^2 = rhs in a box"), workers=False)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--rhs", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("verify", help="recheck the published numeric examples")
    p.add_argument("--slow", action="store_true", help="include the degree-24 example")

    p = common(sub.add_parser("lmfdb", help="number field record by label"), workers=False)
    p.add_argument("--label", required=True)
    p.add_argument("--offline", action="store_true")
    p.add_argument("--poly", default=None, help="compare Disc of this polynomial with the record")
    return parser


HANDLERS = {
    "census": _census,
    "trinomial": _trinomial,
    "charsum": _charsum,
    "sieve": _sieve,
    "fielddisc": _fielddisc,
    "pell": _pell,
    "lmfdb": _lmfdb,
}

_PLUMBING = {"command", "seed", "out", "workers", "offline"}


def _config(args) -> RunConfig:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _PLUMBING}
    return RunConfig(args.command, params, args.seed, getattr(args, "workers", 1), args.out,
                     getattr(args, "offline", False))


def _error(kind: str, exc: Exception, stderr) -> None:
    message = " ".join(str(exc).split())
    stderr.write(f"disc-census: error={kind}: {message}\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            results = verify_paper_vectors(slow=args.slow)
            for r in results:
                stdout.write(f"{r.status}\t{r.name}\t{r.detail}\n")
            return EXIT_FAIL if any(r.status == FAIL for r in results) else EXIT_OK
        if getattr(args, "workers", 1) < 1:
            raise InvalidInput("--workers must be at least 1")
        cfg = _config(args)
        text = HANDLERS[args.command](args, cfg)
        write_output(text, cfg.out, stdout)
        stderr.write(f"disc-census: command={cfg.command} workers={cfg.worker_count} seed={cfg.seed} "
                     f"runtime_s={time.perf_counter() - start:.3f}\n")
        return EXIT_OK
    except InvalidInput as exc:
        _error("invalid-input", exc, stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        _error("budget-exceeded", exc, stderr)
        return EXIT_BUDGET
    except NetworkFailure as exc:
        _error("network", exc, stderr)
        return EXIT_NETWORK
    except DiscCensusError as exc:
        _error(type(exc).__name__, exc, stderr)
        return EXIT_FAIL
    except OSError as exc:
        _error("io", exc, stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
