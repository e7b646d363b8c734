"""Command-line interface.

Exit codes: 0 all checks pass, 1 a checked property fails, 2 input or usage
error.  Reports go to standard output as sorted-key JSON.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .constructions import (
    CATALOG_KEYS,
    NotMorphismError,
    catalog_algebra,
    catalog_twists,
    random_weighted_algebra,
    skew_closure,
    yau_twist,
)
from .identities import DEFAULT_MAX_VIOLATIONS, REGISTRY, VerificationReport, check_identities
from .superalgebra import (
    AlgebraError,
    EvenMap,
    check_multiplicativity,
    check_super_anticommutativity,
    to_fraction,
)
from .verifier import (
    COVERAGE_FIXTURE,
    EQUIVALENCE_TRIPLE,
    classify,
    equivalence_record,
    equivalence_scan,
    lemma_suite,
    random_specs,
    summarize,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    text, source = _read(path)
    return formats.load_algebra(text, source)


def _emit(obj) -> None:
    sys.stdout.write(formats.dumps_report(obj))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _dims(text: str) -> tuple[int, ...]:
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}")
    return tuple(range(lo, hi + 1))


def _lambdas(text: str) -> tuple[Fraction, ...]:
    try:
        vals = tuple(to_fraction(p.strip()) for p in text.split(","))
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if any(v == 0 for v in vals):
        raise argparse.ArgumentTypeError("lambda must be nonzero")
    return vals


def _parities(text: str):
    if text in ("mixed", "even", "odd"):
        return text
    if text and set(text) <= {"0", "1"}:
        return tuple(int(c) for c in text)
    raise argparse.ArgumentTypeError("expected mixed, even, odd or a 0/1 string")


# -- check / classify -------------------------------------------------------------


def _premises_report(A) -> dict:
    skew = check_super_anticommutativity(A)
    mult = check_multiplicativity(A)

    def entry(name, defects, total):
        return {
            "id": name,
            "status": "fails" if defects else "holds",
            "holds": not defects,
            "tuples_checked": total,
            "total_violations": len(defects),
            "violations": [
                {"tuple": [i, j], "defect": formats.element_strs(d)} for i, j, d in defects
            ],
        }

    return {
        "anticommutativity": entry("ANTICOMMUTATIVITY", skew, A.dim * A.dim),
        "multiplicativity": entry("MULTIPLICATIVITY", mult, A.dim * A.dim),
    }


def cmd_check(args) -> int:
    A = _load(args.file)
    if args.assume_skew:
        A = skew_closure(A)
    sel = args.identity.upper()
    premises = _premises_report(A)
    if sel == "PREMISES":
        results = list(premises.values())
        for r in results:
            r["violations"] = r["violations"][: args.max_violations]
    else:
        keys = list(REGISTRY) if sel == "ALL" else [sel]
        if sel != "ALL" and sel not in REGISTRY:
            raise UsageError(f"unknown identity {args.identity!r}; known: {', '.join(REGISTRY)}, all, premises")
        res = check_identities(A, keys, args.max_violations, args.workers)
        results = [formats.result_dict(r) for r in res.values()]
    ok = all(r["holds"] for r in results)
    _emit({"algebra": A.name, "holds": ok, "results": results})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    A = _load(args.file)
    if args.assume_skew:
        A = skew_closure(A)
    sc = classify(A)
    _emit(
        {
            "algebra": A.name,
            "alpha_is_identity": A.alpha.is_identity(),
            "class": sc.label(A.alpha.is_identity()),
            "flags": sc.as_dict(),
        }
    )
    return EXIT_OK


def cmd_lemmas(args) -> int:
    A = _load(args.file)
    report: VerificationReport = lemma_suite(A, args.max_violations)
    _emit(formats.report_dict(report))
    return EXIT_OK if report.holds else EXIT_FAIL


# -- twist ---------------------------------------------------------------------------


def _parse_map(spec: str, dim: int) -> EvenMap:
    if spec == "identity":
        return EvenMap.identity(dim)
    if spec.startswith("diag:"):
        parts = spec[5:].split(",")
        if len(parts) != dim:
            raise UsageError(f"diag map needs {dim} entries, got {len(parts)}")
        try:
            return EvenMap.diagonal([to_fraction(p.strip()) for p in parts])
        except (AlgebraError, ValueError) as exc:
            raise UsageError(f"bad diag entry: {exc}") from None
    text, source = _read(spec)
    return formats.load_map(text, dim, source)


def cmd_twist(args) -> int:
    A = _load(args.file)
    beta = _parse_map(args.map, A.dim)
    try:
        B = yau_twist(A, beta, name=args.name or A.name)
    except NotMorphismError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {list(exc.witness)}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(formats.dump_algebra(B))
    return EXIT_OK


# -- scan ------------------------------------------------------------------------------


def _record_dict(r) -> dict:
    return {
        "source": r.source,
        "index": r.index,
        "seed": r.seed,
        "hom_malcev": r.hom_malcev,
        "s1": r.s1_holds,
        "ident_c": r.ident_c_holds,
        "agreement": r.agreement,
    }


def cmd_scan(args) -> int:
    if args.catalog:
        algebras = [B for key in CATALOG_KEYS for B in catalog_twists(key)]
        algebras.append(random_weighted_algebra(COVERAGE_FIXTURE))
        records = [equivalence_record(B, i) for i, B in enumerate(algebras)]
    else:
        specs = random_specs(
            args.trials,
            args.seed,
            dims=args.dim,
            parities=args.parities,
            lambdas=args.lam,
            bound=args.bound,
        )
        records = equivalence_scan(specs, 1, args.workers)
    summary = summarize(records)
    if summary.disagreements:
        verdict = "disagreement found"
    elif not summary.covered:
        verdict = "coverage insufficient"
    else:
        verdict = "ok"
    _emit(
        {
            "predicates": list(EQUIVALENCE_TRIPLE),
            "records": [_record_dict(r) for r in records],
            "summary": {
                "records": summary.records,
                "disagreements": summary.disagreements,
                "all_true": summary.all_true,
                "all_false": summary.all_false,
                "verdict": verdict,
            },
        }
    )
    if verdict == "disagreement found":
        print(
            f"disagreement found: {summary.disagreements} of {summary.records} algebras "
            "split the three predicates",
            file=sys.stderr,
        )
        return EXIT_FAIL
    if verdict == "coverage insufficient":
        print(
            f"coverage insufficient: all-true {summary.all_true}, all-false {summary.all_false}; "
            "both must be positive",
            file=sys.stderr,
        )
        return EXIT_FAIL
    return EXIT_OK


# -- catalog / registry --------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        for key in CATALOG_KEYS:
            e = catalog_algebra(key)
            print(f"{key}\tdim={e.algebra.dim}\t{e.expected_class}")
        return EXIT_OK
    if not args.key:
        raise UsageError("catalog emit needs a KEY")
    entry = catalog_algebra(args.key)
    sys.stdout.write(formats.dump_algebra(entry.algebra))
    return EXIT_OK


def cmd_registry(args) -> int:
    for d in REGISTRY.values():
        print(f"{d.id}\tarity={d.arity}\tpremise={d.premise}")
        for term in d.form.terms:
            print(f"    {term}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="homalcev", description="Exact identity checks for Hom-Malcev superalgebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, skew=True):
        sp.add_argument("file", help="algebra JSON file, or - for stdin")
        if skew:
            sp.add_argument("--assume-skew", action="store_true", help="fill C[j][i] from C[i][j] before checking")
        sp.add_argument("--max-violations", type=_nonneg_int, default=DEFAULT_MAX_VIOLATIONS)

    c = sub.add_parser("check", help="check identities on an algebra file")
    common(c)
    c.add_argument("--identity", default="all", help="registry id, 'all' or 'premises'")
    c.add_argument("--workers", type=_positive_int, default=1)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="structure flags of an algebra file")
    common(c)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("lemmas", help="premise-gated lemma identities")
    common(c, skew=False)
    c.set_defaults(func=cmd_lemmas)

    c = sub.add_parser("twist", help="twist along an even morphism")
    c.add_argument("file")
    c.add_argument("--map", required=True, help="identity, diag:a,b,... or a JSON matrix file")
    c.add_argument("--name", default=None)
    c.set_defaults(func=cmd_twist)

    c = sub.add_parser("scan", help="equivalence scan over seeded random algebras")
    c.add_argument("--dim", type=_dims, default=(2, 3, 4), help="N or LO-HI (default 2-4)")
    c.add_argument("--trials", type=_nonneg_int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--parities", type=_parities, default="mixed")
    c.add_argument("--lambda", dest="lam", type=_lambdas, default=(Fraction(1), Fraction(2)))
    c.add_argument("--bound", type=_nonneg_int, default=3)
    c.add_argument("--catalog", action="store_true", help="scan catalog twists plus a non-Malcev fixture")
    c.add_argument("--workers", type=_positive_int, default=1)
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("catalog", help="list or emit catalog algebras")
    c.add_argument("action", choices=("list", "emit"))
    c.add_argument("key", nargs="?")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("registry", help="print every identity term by term")
    c.set_defaults(func=cmd_registry)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
