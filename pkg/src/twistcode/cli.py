"""Command-line entry point: ``twistcode <subcommand> ...``.

Exit status: 0 success, 1 domain error (or a failed verification), 2 usage
error or malformed input.  JSON output uses a fixed key order and carries
no timings, so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import config
from .bounds import bounds_report
from .census import CensusBudgetError, run_census, verify_named_examples
from .code import BudgetExceeded, NotACodeword, UncorrectableError, code_build
from .families import (
    all_ones,
    an_matrix,
    bad_prime_scan,
    bn_matrix,
    cycle_perm,
    ones_plus_id,
    sylvester,
    unit,
)
from .field import FieldError, gf
from .matrix import Mat, MatrixFormatError, format_matrix, matrix_to_json, parse_matrix, vec
from .suite import run_suite
from . import symmetry

FAMILIES = ("J", "E", "JI", "H", "An", "Bn", "cycle")


class UsageError(Exception):
    pass


_FLAT_ARRAY = re.compile(r"\[([\s\d,\-]*)\]")


def _dump(obj) -> str:
    """Indented JSON with numeric arrays kept on one line."""
    text = json.dumps(obj, indent=2)
    text = _FLAT_ARRAY.sub(lambda m: "[" + ", ".join(m.group(1).split()).replace(",,", ",") + "]", text)
    return text + "\n"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path: str) -> Mat:
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        from .matrix import matrix_from_json

        return matrix_from_json(text)
    return parse_matrix(text)


def build_family(name: str, n: int, q: int, i: int | None = None, j: int | None = None) -> Mat:
    F = gf(q)
    if n < 1:
        raise UsageError("--n must be positive")
    if name == "J":
        return all_ones(n, F)
    if name == "JI":
        return ones_plus_id(n, F)
    if name == "E":
        if i is None or j is None:
            raise UsageError("--family E needs --i and --j")
        return unit(i, j, n, F)
    if name == "H":
        k = n.bit_length() - 1
        if n != 1 << k or k < 1:
            raise UsageError("--family H needs --n a power of two, at least 2")
        return sylvester(k, F)
    if name == "An":
        return an_matrix(n, F)
    if name == "Bn":
        return bn_matrix(n, F)
    if name == "cycle":
        return cycle_perm(n, F)
    raise UsageError(f"unknown family {name!r}")


def _source_matrix(args) -> Mat:
    path = getattr(args, "matrix", None) or getattr(args, "code", None)
    if path and args.family:
        raise UsageError("give either a matrix file or --family, not both")
    if path:
        return _load_matrix(path)
    if args.family:
        if args.n is None or args.q is None:
            raise UsageError("--family needs --n and --q")
        return build_family(args.family, args.n, args.q, args.i, args.j)
    raise UsageError("a matrix file or --family is required")


def _square(A: Mat) -> Mat:
    if not A.is_square():
        raise UsageError(f"matrix must be square, got {A.rows}x{A.cols}")
    return A


def _add_source(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("matrix", nargs="?", help="matrix file in text or JSON format ('-' for stdin)")
    p.add_argument("--family", choices=FAMILIES, help="build A from a named family instead of a file")
    p.add_argument("--n", type=int, help="matrix size for --family")
    p.add_argument("--q", type=int, help="field order for --family")
    p.add_argument("--i", type=int, help="row of E_ij (1-based)")
    p.add_argument("--j", type=int, help="column of E_ij (1-based)")
    p.add_argument("--a", type=int, required=True, help="twist scalar; negative values mean additive inverses")


# -- subcommands ---------------------------------------------------------------------


def cmd_analyze(args) -> int:
    A = _square(_source_matrix(args))
    F = A.field
    a = F(args.a)
    code = code_build(A, a)
    params = code.min_distance(config.distance_budget(args.budget), seed=args.seed)
    out = {
        "q": F.q,
        "n": A.rows,
        "a": a,
        "dim": code.k,
        "d": params.d,
        "d_status": params.status,
    }
    if args.basis:
        out["basis"] = [B.tolist() for B in code.basis]
    out["H_rank"] = code.rank_H
    out["bounds"] = bounds_report(A, a).to_dict()
    sys.stdout.write(_dump(out))
    return 0


def cmd_construct(args) -> int:
    A = build_family(args.family, args.n, args.q, args.i, args.j)
    sys.stdout.write(_dump(matrix_to_json(A)) if args.json else format_matrix(A))
    return 0


def cmd_census(args) -> int:
    budget = 1 << 62 if args.override else config.DEFAULT_CENSUS_BUDGET
    report = run_census(args.q, args.n, args.a, jobs=args.jobs, budget=budget)
    payload = _dump(report.to_json(witnesses=not args.no_witness))
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return 0


def cmd_symmetry(args) -> int:
    A = _square(_source_matrix(args))
    code = code_build(A, A.field(args.a))
    n = A.rows
    perms = symmetry.commuting_permutations(A) if n <= 8 else None
    if args.sigma:
        sigma = symmetry.parse_cycles(args.sigma, n)
    else:
        sigma = next((s for s in perms or () if symmetry.is_semiregular(s)), None)
    qc = None
    if sigma is not None:
        rep = symmetry.quasicyclic_report(code, sigma, side=args.side)
        qc = {"sigma": symmetry.format_cycles(sigma), **rep.to_dict()}
    out = {
        "commuting_count": None if perms is None else len(perms),
        "quasicyclic": qc,
        "transpose_invariant": symmetry.transposition_invariance(code),
    }
    sys.stdout.write(_dump(out))
    return 0


def _parse_message(text: str, F) -> list[int]:
    try:
        return [F(int(t)) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"message must be integers, got {text.strip()!r}") from None


def cmd_encode(args) -> int:
    A = _square(_source_matrix(args))
    code = code_build(A, A.field(args.a))
    if (args.message is None) == (args.message_file is None):
        raise UsageError("give exactly one of --message or --message-file")
    text = args.message if args.message is not None else _read_text(args.message_file)
    msg = _parse_message(text, A.field)
    if len(msg) != code.k:
        raise ValueError(f"message has {len(msg)} symbols, the code has dimension {code.k}")
    sys.stdout.write(format_matrix(code.encode(msg)))
    return 0


def cmd_decode(args) -> int:
    A = _square(_source_matrix(args))
    F = A.field
    code = code_build(A, F(args.a))
    R = _load_matrix(args.received)
    if R.field.q != F.q or R.shape != A.shape:
        raise UsageError(f"received matrix must be {A.rows}x{A.cols} over GF({F.q})")
    R = Mat(F, R.data, check=False)
    if args.coset:
        decoder = code.coset_leader_decoder()
    else:
        decoder = code.single_error_decoder()
        if not decoder:
            raise ValueError(f"single-error decoding impossible: {decoder.reason} {decoder.pair}")
    C, E = decoder.decode(R)
    out = {
        "codeword": C.tolist(),
        "error": E.tolist(),
        "error_weight": int((vec(E) != 0).sum()),
        "message": [int(x) for x in code.decode_to_message(C)],
    }
    sys.stdout.write(_dump(out))
    return 0


def cmd_verify(args) -> int:
    named = verify_named_examples()
    suite = [] if args.named_only else run_suite(seed=args.seed, trials=args.trials, sweeps=not args.no_sweeps)
    ok = all(r["pass"] for r in named) and all(r["pass"] for r in suite)
    sys.stdout.write(_dump({"named_examples": named, "suite": suite, "pass": ok}))
    return 0 if ok else 1


def cmd_badprimes(args) -> int:
    rep = bad_prime_scan(args.n, args.bound, jobs=args.jobs)
    sys.stdout.write(_dump(rep.to_dict()))
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistcode", description="Twisted centralizer codes C(A, a) = {B : AB = aBA}.")
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="seed for all sampling (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="dimension, distance and bounds of C(A, a)")
    _add_source(s)
    s.add_argument("--basis", action="store_true", help="include the basis matrices")
    s.add_argument("--budget", type=int, help="distance enumeration budget (default 2^24 or $TWISTCODE_BUDGET)")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", help="print a named matrix")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--i", type=int)
    s.add_argument("--j", type=int)
    s.add_argument("--json", action="store_true", help="JSON instead of the text format")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("census", help="tally (k, d) over every n x n matrix over GF(q)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="write the JSON report here instead of stdout")
    s.add_argument("--csv", help="also write a CSV summary here")
    s.add_argument("--no-witness", action="store_true", help="omit witness matrices")
    s.add_argument("--override", action="store_true", help="lift the matrix-space budget (hours-scale runs)")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("symmetry", help="commuting permutations, quasicyclic form, transposition")
    _add_source(s)
    s.add_argument("--code", help="matrix file (same as the positional argument)")
    s.add_argument("--sigma", help="semiregular permutation in 1-based cycle notation, e.g. '(1 2)(3 4)'")
    s.add_argument("--side", choices=("rows", "columns"), default="rows")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("encode", help="message symbols -> codeword matrix")
    _add_source(s)
    s.add_argument("--message", help="space-separated field elements")
    s.add_argument("--message-file")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="received matrix -> codeword, error and message")
    _add_source(s)
    s.add_argument("--received", required=True, help="received matrix file")
    s.add_argument("--coset", action="store_true", help="use a coset-leader table instead of single-error decoding")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("verify", help="named examples plus the property suite")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--no-sweeps", action="store_true")
    s.add_argument("--named-only", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("badprimes", help="primes p with dim C(A_n, -1) > 1 over GF(p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bound", type=int, default=10**4)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_badprimes)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, MatrixFormatError) as exc:
        parser.print_usage(sys.stderr)
        print(f"twistcode: error: {exc}", file=sys.stderr)
        return 2
    except (FieldError, CensusBudgetError, BudgetExceeded, NotACodeword, UncorrectableError, ValueError) as exc:
        print(f"twistcode: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
