"""Command-line entry point: ``leibhom {algebra,invariants,cohomology,verify-paper}``.

Exit codes: 0 success, 1 configuration error, 2 a check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cohomology import DEFAULT_SEED, CohomologyReport
from .errors import LeibhomError

EXIT_OK, EXIT_CONFIG, EXIT_FAILED = 0, 1, 2

COMPLEXES = ("leibniz-adjoint", "leibniz-trivial", "ce-adjoint", "ce-trivial", "ce-so-trivial",
             "invariant-homology", "cr", "crel")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leibhom", description="Cohomology of the affine orthogonal algebras h(p,q).",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--output", type=Path, help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = sub.add_parser("algebra", help="dump structure constants as JSON")
    common(sp)
    sp.add_argument("--which", choices=("h", "so", "translations"), default="h")

    sp = sub.add_parser("invariants", help="invariant dimension tables")
    common(sp)
    sp.add_argument("--emit", choices=("dims", "named"), default="dims",
                    help="dimension table or the named classes with their invariance status")

    sp = sub.add_parser("cohomology", help="cohomology dimensions of one complex")
    common(sp)
    sp.add_argument("--complex", choices=COMPLEXES, default="leibniz-adjoint")
    sp.add_argument("--min-degree", type=int, default=0)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--mode", choices=("exact", "probabilistic"))
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--dump-matrices", type=Path, metavar="DIR",
                    help="write each differential block as MatrixMarket")

    sp = sub.add_parser("verify-paper", help="run every structural check for h(p,q)")
    common(sp)
    sp.add_argument("--skip-extension", action="store_true",
                    help="omit the completion test of the product classes")
    return parser


def _validate(args) -> None:
    if args.p < 0 or args.q < 0 or args.p + args.q < 1:
        raise ConfigError(f"need p, q >= 0 and p+q >= 1, got ({args.p},{args.q})")
    if getattr(args, "max_degree", 0) < 0 or getattr(args, "min_degree", 0) < 0:
        raise ConfigError("degrees must be non-negative")
    if getattr(args, "min_degree", 0) > getattr(args, "max_degree", 0):
        raise ConfigError("--min-degree exceeds --max-degree")
    n = args.p + args.q
    if args.command == "verify-paper" and n < 4:
        raise ConfigError("verify-paper needs p+q >= 4")
    if args.command == "invariants" and n < 2:
        raise ConfigError("invariants need p+q >= 2")
    if args.command == "cohomology" and args.complex in ("cr", "crel", "invariant-homology") and n < 4:
        raise ConfigError(f"--complex {args.complex} needs p+q >= 4")
    threads = os.environ.get("LEIBHOM_THREADS")
    if threads is not None and (not threads.isdigit() or int(threads) < 1):
        raise ConfigError(f"LEIBHOM_THREADS must be a positive integer, got {threads!r}")


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        output.write_bytes(text.encode())


def _cmd_algebra(args) -> int:
    from .algebra import build_h, build_so, build_translations
    alg = {"h": build_h, "so": build_so, "translations": build_translations}[args.which](args.p, args.q)
    _emit(alg.to_json(), args.output)
    return EXIT_OK


def _cmd_invariants(args) -> int:
    from .invariants import (NAMES, expected_invariant_dims, invariant_dims_table,
                             make_named, verify_invariance)
    p, q = args.p, args.q
    n = p + q
    if args.emit == "dims":
        table = invariant_dims_table(p, q)
        table["expected"] = expected_invariant_dims(n) if n >= 4 else None
        _emit(json.dumps({"p": p, "q": q, "dims": table}, indent=2, sort_keys=True), args.output)
        return EXIT_OK
    rows = []
    for nm in NAMES:
        try:
            cls = make_named(nm, p, q)
        except ValueError:
            continue
        row = {"name": nm, "kind": cls.kind, "degree": cls.degree}
        for under in ("so", "h"):
            rep = verify_invariance(cls, under)
            row[f"{under}_invariant"] = rep.passed
            row[f"{under}_violating_generator"] = rep.violating_generator
        rows.append(row)
    _emit(json.dumps({"p": p, "q": q, "classes": rows}, indent=2, sort_keys=True), args.output)
    return EXIT_OK


def _make_complex(kind: str, p: int, q: int):
    from .algebra import adjoint, build_h, build_so, build_translations, restricted, trivial
    from .cohomology import _RelativeAdapter, ce_trivial, euler_weights_of, leibniz_adjoint
    from .complexes import CEComplex, LeibnizComplex, LieHomologyComplex, RelativeComplex, SubComplex
    h = build_h(p, q)
    w = euler_weights_of(h)
    if kind == "leibniz-adjoint":
        return leibniz_adjoint(p, q)
    if kind == "leibniz-trivial":
        return LeibnizComplex(h, trivial(h), f"CL(h({p},{q}); R)", w, [0])
    if kind == "ce-adjoint":
        return CEComplex(h, adjoint(h), f"CE(h({p},{q}); h)", w, w)
    if kind == "ce-trivial":
        return ce_trivial(h, graded=True)
    if kind == "ce-so-trivial":
        return ce_trivial(build_so(p, q))
    if kind == "cr":
        return _RelativeAdapter(RelativeComplex("CR", trivial(h), alg_weights=w))
    if kind == "crel":
        return _RelativeAdapter(RelativeComplex("Crel", adjoint(h), alg_weights=w, mod_weights=w))
    from .cohomology import cochain_terms
    from .invariants import invariant_subspace, translation_action
    from .multilinear import WEDGE, MultiBasis
    I = build_translations(p, q)
    ho = LieHomologyComplex(I, restricted(I, h))
    on_I, on_h, _ = translation_action(p, q, "so")
    n = p + q
    bases = {k: [cochain_terms(c) for c in invariant_subspace(on_I, MultiBasis(n, WEDGE, k), on_h)]
             for k in range(n + 1)}
    return SubComplex(ho, bases, f"invariant chains of h({p},{q})")


def _dump_matrices(cx, degrees, directory: Path, stem: str) -> None:
    from .cohomology import _RankCache
    from .complexes import SubComplex
    directory.mkdir(parents=True, exist_ok=True)
    rc = _RankCache(cx, None, 0, None)
    for k in degrees:
        for i, b in enumerate(rc.blocks(k)):
            if not rc.key_needed(k, b):
                continue
            if isinstance(cx, SubComplex):
                A = cx.differential(k)
            elif b is None:
                A = cx.differential(k)[0]
            else:
                A = cx.differential(k, b)[0]
            suffix = "" if b is None else f"_w{i}"
            (directory / f"{stem}_d{k}{suffix}.mtx").write_bytes(A.to_matrix_market().encode())


def _cmd_cohomology(args) -> int:
    from .cohomology import cohomology_dims, hl_dims
    degrees = range(args.min_degree, args.max_degree + 1)
    if args.complex == "leibniz-adjoint" and args.p + args.q >= 2:
        report = hl_dims(args.p, args.q, degrees, args.mode, args.seed)
    else:
        cx = _make_complex(args.complex, args.p, args.q)
        report = cohomology_dims(cx, degrees, args.mode, args.seed)
    if args.dump_matrices is not None:
        cx = _make_complex(args.complex, args.p, args.q)
        _dump_matrices(cx, degrees, args.dump_matrices, args.complex.replace("-", "_"))
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .checks import first_failure, verify_paper
    report: CohomologyReport = verify_paper(args.p, args.q, args.seed, not args.skip_extension)
    _emit(report.to_json(), args.output)
    bad = first_failure(report)
    if bad is not None:
        print(f"first failed check: {bad.name}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {"algebra": _cmd_algebra, "invariants": _cmd_invariants,
            "cohomology": _cmd_cohomology, "verify-paper": _cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
    except ConfigError as exc:
        print(f"leibhom: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except LeibhomError as exc:
        print(f"leibhom: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
