"""``easy-wg``: command-line access to the partition and Weingarten machinery.

Output is JSON by default; exact rationals are ``"num/den"`` strings and
polynomials in ``t`` are ``{power: coefficient}`` maps.  Exit status is 0 on
success, 1 on a domain error (e.g. a singular Gram matrix) and 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import acceptance, cache
from .categories import CategoryId, enumerate_category, parse_category
from .closure import ClosureSpec, classify, closure, identify, verify_classification
from .exact import RationalMatrix
from .freeprob import (
    Kind,
    MomentSequence,
    bercovici_pata,
    character_moments,
    cumulants_from_moments,
    law_moments,
    parse_law,
    semigroup_verdict,
)
from .haar import estimate_char_moment, estimate_integral
from .partition import (
    DEFAULT_ENUMERATION_BOUND,
    PartitionError,
    format_partition,
    is_noncrossing,
    iter_partitions,
    parse,
)
from .tpoly import TPoly
from .weingarten import (
    SingularGram,
    SingularGramError,
    char_moment_asymptotic,
    char_moment_exact,
    gram,
    integrate,
    weingarten,
)

__all__ = ["main", "run", "Config", "build_parser"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    cache_dir: str | None = None
    bound: int = DEFAULT_ENUMERATION_BOUND
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.bound < 1:
            raise UsageError("--max-points must be positive")
        if self.fmt not in ("json", "text"):
            raise UsageError("--format is json or text")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction(x: Fraction | int) -> str:
    return str(Fraction(x))


def _index(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad multi-index {text!r}; expected e.g. 1,2,1") from None


def _count(text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"bad sample count {text!r}") from None
    if value < 1 or value != int(value):
        raise UsageError(f"sample count must be a positive integer, got {text!r}")
    return int(value)


def _category(text: str) -> CategoryId:
    try:
        return parse_category(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _partition(text: str):
    try:
        return parse(text)
    except PartitionError as exc:
        raise UsageError(str(exc)) from None


def _rational(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


def _poly_json(p: TPoly) -> dict[str, str]:
    return p.to_json()


def _read_moments(raw: str, kind: Kind) -> MomentSequence:
    """``[m_1, m_2, ...]``; entries are rationals (string or int) or
    ``{power: coeff}`` maps."""
    text = Path(raw[1:]).read_text() if raw.startswith("@") else raw
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise UsageError(f"--moments-json is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise UsageError("--moments-json must be a JSON list")
    entries = []
    for entry in data:
        if isinstance(entry, dict):
            coeffs = entry.get("coeffs", entry)
            entries.append(TPoly(tuple((int(p), _rational(c)) for p, c in coeffs.items())))
        else:
            entries.append(TPoly.constant(_rational(entry)))
    return MomentSequence(kind, tuple(entries))


def _wg_payload(data, part: str) -> dict:
    out = {
        "category": data.category.label,
        "k": data.k,
        "n": data.n,
        "basis": [format_partition(p) for p in data.basis],
    }
    if part == "gram":
        out["gram"] = data.gram.to_strings()
    return out


def cmd_enumerate(args, cfg: Config):
    if args.category:
        c = _category(args.category)
        parts = enumerate_category(c, args.k, args.l, bound=cfg.bound)
    else:
        pred = is_noncrossing if args.noncrossing else None
        parts = list(
            iter_partitions(args.k, args.l, pred, max_block=2 if args.pairings else None, bound=cfg.bound)
        )
        if args.pairings:
            parts = [p for p in parts if p.is_pairing]
    words = [format_partition(p) for p in parts]
    if cfg.fmt == "text":
        return "\n".join(words)
    return {"k": args.k, "l": args.l, "count": len(words), "partitions": words}


def cmd_closure(args, cfg: Config):
    gens = tuple(_partition(g) for g in args.generator or [])
    try:
        spec = ClosureSpec(gens, not args.no_crossing, args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = closure(spec)
    out = {
        "generators": [format_partition(g) for g in gens],
        "axiom_set": "without-crossing" if args.no_crossing else "with-crossing",
        "bound": args.bound,
        "closure_size": result.size,
        "truncated": result.truncated,
        "identified_as": [c.label for c in identify(result)],
        "one_line_counts": {str(m): len(result.one_line_members(m)) for m in range(args.bound + 1)},
    }
    if args.list:
        out["one_line_members"] = [
            format_partition(p) for m in range(args.bound + 1) for p in result.one_line_members(m)
        ]
    return out


def cmd_classify(args, cfg: Config):
    crossing = not args.no_crossing
    if args.generator:
        entry = classify(_partition(args.generator), crossing=crossing, point_bound=args.bound)
        return entry.to_json(crossing, args.bound)
    report = verify_classification(args.bound, crossing)
    return {
        "bound": args.bound,
        "axiom_set": "with-crossing" if crossing else "without-crossing",
        "all_identified": report.all_identified,
        "entries": report.to_json(),
    }


def cmd_gram(args, cfg: Config):
    return _wg_payload(gram(_category(args.category), args.k, args.n), "gram")


def cmd_wg(args, cfg: Config):
    data = weingarten(_category(args.category), args.k, args.n)
    if isinstance(data.wg, SingularGram):
        raise SingularGramError(data.wg)
    out = _wg_payload(data, "wg")
    out["wg"] = data.wg.to_strings() if isinstance(data.wg, RationalMatrix) else []
    return out


def cmd_integrate(args, cfg: Config):
    value = integrate(_category(args.category), args.n, _index(args.i), _index(args.j))
    return {"value": _fraction(value)}


def cmd_char_moments(args, cfg: Config):
    c = _category(args.category)
    if args.asymptotic:
        return {"coeffs": _poly_json(char_moment_asymptotic(c, args.k))}
    if args.n is not None:
        s = args.s if args.s is not None else args.n
        return {"value": _fraction(char_moment_exact(c, args.n, s, args.k))}
    if args.s is not None:
        raise UsageError("--s needs --n")
    # full character in the large-n limit: the number of basis partitions
    value = char_moment_asymptotic(c, args.k)(1)
    return {"even" if args.k % 2 == 0 else "odd": _fraction(value)}


def _moment_source(args, kind: Kind) -> MomentSequence:
    given = [x for x in (args.category, args.law, args.moments_json) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --category, --law, --moments-json")
    if args.moments_json:
        return _read_moments(args.moments_json, kind)
    if args.k is None:
        raise UsageError("--k is required with --category or --law")
    if args.category:
        return character_moments(_category(args.category), args.k, kind)
    try:
        law = parse_law(args.law)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return MomentSequence(kind, law_moments(law, args.k).entries)


def cmd_cumulants(args, cfg: Config):
    kind = Kind(args.kind)
    moments = _moment_source(args, kind)
    kappa = cumulants_from_moments(moments).entries
    out = {
        "kind": kind.value,
        "cumulants": [_poly_json(x) for x in kappa],
        "linear_in_t": all(x.is_linear_homogeneous() for x in kappa),
    }
    if args.category and args.verdict:
        out["verdict"] = semigroup_verdict(_category(args.category), len(kappa)).to_json()
    return out


def cmd_bp(args, cfg: Config):
    moments = _moment_source(args, Kind.CLASSICAL)
    free = bercovici_pata(moments)
    return {
        "classical_moments": [_poly_json(x) for x in moments.entries],
        "free_moments": [_poly_json(x) for x in free.entries],
    }


def cmd_laws(args, cfg: Config):
    try:
        law = parse_law(args.law)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    t = _rational(args.t) if args.t is not None else None
    seq = law_moments(law, args.k, t)
    if t is None:
        moments = [_poly_json(x) for x in seq.entries]
    else:
        moments = [_fraction(x(0)) for x in seq.entries]
    return {"law": law.symbol, "kind": law.kind.value, "t": None if t is None else _fraction(t), "moments": moments}


def cmd_mc_check(args, cfg: Config):
    g = _category(args.group)
    seed = cfg.seed if args.mc_seed is None else args.mc_seed
    samples = _count(args.samples)
    if args.s is not None or args.k is not None:
        if args.s is None or args.k is None:
            raise UsageError("character moments need both --s and --k")
        exact = char_moment_exact(g, args.n, args.s, args.k)
        est = estimate_char_moment(g, args.n, args.s, args.k, samples, seed, workers=args.workers)
    else:
        if args.i is None or args.j is None:
            raise UsageError("give --i and --j (or --s and --k)")
        i, j = _index(args.i), _index(args.j)
        exact = integrate(g, args.n, i, j)
        est = estimate_integral(g, args.n, i, j, samples, seed, workers=args.workers)
    sig = est.sigmas(exact)
    return {
        "mean": est.mean,
        "stderr": est.stderr,
        "samples": est.samples,
        "exact": _fraction(exact),
        "sigmas": sig if sig != float("inf") else "inf",
    }


def cmd_verify(args, cfg: Config):
    only = [int(x) for x in args.only.split(",")] if args.only else None
    if only and any(x not in acceptance.CRITERIA for x in only):
        raise UsageError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    results = acceptance.run_all(cfg.seed, only)
    ok = all(r.passed for r in results)
    if cfg.fmt == "text":
        return "\n".join(r.line() for r in results), (0 if ok else 1)
    return {"passed": ok, "criteria": [r.to_json() for r in results]}, (0 if ok else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="easy-wg", description=__doc__.split("\n\n")[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--cache-dir", help=f"Weingarten cache directory (default ${cache.CACHE_ENV})")
    parser.add_argument(
        "--max-points", type=int, default=DEFAULT_ENUMERATION_BOUND, help="enumeration point bound"
    )
    parser.add_argument("--seed", type=int, default=0)
    # repeated on every subcommand so the flags may follow it
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("enumerate", help="list partitions of P(k,l)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--category")
    p.add_argument("--noncrossing", action="store_true")
    p.add_argument("--pairings", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    for name, func in (("closure", cmd_closure), ("classify", cmd_classify)):
        p = sub.add_parser(name, help="bounded category generation")
        if name == "closure":
            p.add_argument("--generator", action="append")
            p.add_argument("--list", action="store_true", help="list the one-line members")
        else:
            p.add_argument("--generator")
        p.add_argument("--no-crossing", action="store_true")
        p.add_argument("--bound", type=int, default=6)
        p.set_defaults(func=func)

    for name, func in (("gram", cmd_gram), ("wg", cmd_wg)):
        p = sub.add_parser(name, help=f"{name} matrix over the category basis")
        p.add_argument("--category", required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("integrate", help="exact Haar integral of a coordinate monomial")
    p.add_argument("--category", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", required=True)
    p.add_argument("--j", required=True)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("char-moments", help="moments of the truncated character")
    p.add_argument("--category", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_char_moments)

    for name, func in (("cumulants", cmd_cumulants), ("bp", cmd_bp)):
        p = sub.add_parser(name)
        if name == "cumulants":
            p.add_argument("--kind", choices=("classical", "free"), default="classical")
            p.add_argument("--verdict", action="store_true", help="add the semigroup verdict")
        p.add_argument("--k", type=int)
        p.add_argument("--category")
        p.add_argument("--law")
        p.add_argument("--moments-json", help="JSON list of moments, or @file")
        p.set_defaults(func=func)

    p = sub.add_parser("laws", help="moments of a limit law")
    p.add_argument("--law", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("mc-check", help="Monte Carlo estimate against the exact value")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i")
    p.add_argument("--j")
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--samples", default="100000")
    p.add_argument("--seed", type=int, dest="mc_seed")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mc_check)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(payload, fmt: str, stream) -> None:
    if isinstance(payload, str):
        print(payload, file=stream)
    elif fmt == "json":
        print(json.dumps(payload, ensure_ascii=False), file=stream)
    else:
        for key, value in payload.items():
            print(f"{key}: {value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)}", file=stream)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        cfg = Config(args.cache_dir, args.max_points, args.format, args.seed)
        if cfg.cache_dir is not None:
            os.environ[cache.CACHE_ENV] = cfg.cache_dir
        result = args.func(args, cfg)
        code = 0
        if isinstance(result, tuple):
            result, code = result
        _emit(result, fmt, stdout)
        return code
    except UsageError as exc:
        _emit({"error": str(exc), "kind": "usage"}, fmt, stdout)
        return 2
    except SingularGramError as exc:
        m = exc.marker
        _emit(
            {"error": str(exc), "kind": "singular-gram", "category": m.category.label, "k": m.k, "n": m.n},
            fmt,
            stdout,
        )
        return 1
    except (ArithmeticError, ValueError) as exc:
        _emit({"error": str(exc), "kind": "domain"}, fmt, stdout)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
