"""Command-line interface: JSON on stdout, a short summary on stderr.

Exit codes: 0 success, 1 mathematical failure (a check or crosscheck did
not pass), 2 input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .charclass import FixedDataError, GradedClass, evaluate_formula, polynomial_presentation, two_forms_identity_check
from .config import IdentityCheckConfig, NumericsConfig
from .harness import FixtureError, corpus_paths, dumps, load_fixture, run_corpus, run_crosscheck
from .ih import compute_ih, ih_ranks, witt_check
from .pairing import PairingError, g_signature_direct, intersection_form, signature
from .simplicial import InvalidComplexError

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def precision() -> int:
    """Bits used for float renderings; WITTSIG_PRECISION overrides the default."""
    try:
        return NumericsConfig.from_env().precision
    except ValueError as exc:
        raise FixtureError(str(exc)) from None


def _space(fx):
    if fx.space is None:
        raise FixtureError(f"{fx.name}: fixture has no complex")
    return fx.space


def cmd_ih(args):
    fx = load_fixture(args.file)
    X = _space(fx)
    if args.degree is None:
        ranks = ih_ranks(X, args.perversity)
        out = {"name": fx.name, "perversity": args.perversity, "ranks": ranks}
        summary = f"{fx.name}: IH ranks ({args.perversity}) {ranks}"
    else:
        g = compute_ih(X, args.perversity, args.degree)
        out = {"name": fx.name, "perversity": args.perversity, "degree": args.degree, "rank": g.rank}
        summary = f"{fx.name}: IH_{args.degree} ({args.perversity}) has rank {g.rank}"
    return out, summary, 0


def cmd_witt(args):
    fx = load_fixture(args.file)
    w = witt_check(_space(fx))
    out = dict(w.to_json(), name=fx.name)
    return out, f"{fx.name}: Witt = {w.is_witt} ({len(w.witnesses)} witnesses)", 0


def cmd_sign(args):
    fx = load_fixture(args.file)
    X = _space(fx)
    form = intersection_form(X)
    sig = signature(X)
    out = {"name": fx.name, "signature": sig, "form": form.to_json()}
    return out, f"{fx.name}: signature {sig}", 0


def cmd_gsign(args):
    fx = load_fixture(args.file)
    if fx.action is None:
        raise FixtureError(f"{fx.name}: fixture has no action")
    rep = g_signature_direct(_space(fx), fx.action, args.power)
    out = dict(rep.to_json(), name=fx.name)
    out["sign_g"] = rep.value.to_json(precision())
    return out, f"{fx.name}: Sign(g^{args.power}) = {rep.value}", 0


def cmd_formula(args):
    fx = load_fixture(args.file)
    if not fx.has_fixed_data:
        raise FixtureError(f"{fx.name}: fixture has no fixed_data")
    val = evaluate_formula(fx.components, fx.fixed_order)
    out = {"name": fx.name, "formula": val.to_json(precision())}
    return out, f"{fx.name}: formula = {val}", 0


def cmd_crosscheck(args):
    if args.corpus:
        rep = run_corpus(jobs=args.jobs)
        failed = [r["name"] for r in rep["fixtures"] if not r["pass"]]
        summary = f"corpus: {rep['count'] - len(failed)}/{rep['count']} fixtures pass"
        if failed:
            summary += " (failed: " + ", ".join(failed) + ")"
        return rep, summary, 0 if rep["pass"] else 1
    if not args.file:
        raise FixtureError("crosscheck needs a fixture file or --corpus")
    fx = load_fixture(args.file)
    rep = run_crosscheck(fx)
    ok = rep.passed and rep.inverse_passed
    return rep.to_json(), f"{fx.name}: crosscheck {'pass' if ok else 'FAIL'}", 0 if ok else 1


def identity_check(cfg: IdentityCheckConfig) -> dict:
    """Random rational Chern data; every residual must vanish exactly."""
    rng = random.Random(cfg.seed)
    failures, count = [], 0
    for rank in range(1, cfg.max_rank + 1):
        pres = polynomial_presentation([2 * k for k in range(1, rank + 1)], cfg.max_degree)
        for t in range(cfg.trials):
            vec = [Fraction(0)] * pres.size
            vec[0] = Fraction(1)
            for k, d in enumerate(pres.degrees):
                if 0 < d <= 2 * rank:
                    vec[k] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            chern = GradedClass.from_vector(pres, 1, vec)
            for a, N in cfg.angles:
                count += 1
                if not two_forms_identity_check(a, N, chern, rank).is_zero():
                    failures.append({"rank": rank, "trial": t, "angle": [a, N]})
    return {
        "checks": count,
        "datasets": cfg.max_rank * cfg.trials,
        "failures": failures,
        "pass": not failures,
        "max_rank": cfg.max_rank,
        "max_degree": cfg.max_degree,
        "trials": cfg.trials,
        "seed": cfg.seed,
    }


def cmd_identity(args):
    try:
        cfg = IdentityCheckConfig(args.max_rank, args.max_degree, args.trials, args.seed)
    except ValueError as exc:
        raise FixtureError(str(exc)) from None
    rep = identity_check(cfg)
    return rep, f"identity check: {rep['checks']} cases, {len(rep['failures'])} nonzero residuals", 0 if rep["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wittsig", description="Equivariant signatures of Witt pseudomanifolds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("ih", help="intersection homology ranks")
    p.add_argument("file")
    p.add_argument("--degree", type=int)
    p.add_argument("--perversity", choices=["lower", "upper"], default="lower")
    p.set_defaults(func=cmd_ih)
    p = sub.add_parser("witt", help="Witt condition with witnesses")
    p.add_argument("file")
    p.set_defaults(func=cmd_witt)
    p = sub.add_parser("sign", help="intersection form and signature")
    p.add_argument("file")
    p.set_defaults(func=cmd_sign)
    p = sub.add_parser("gsign", help="equivariant signature from intersection homology")
    p.add_argument("file")
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_gsign)
    p = sub.add_parser("formula", help="fixed-point formula from characteristic-class data")
    p.add_argument("file")
    p.set_defaults(func=cmd_formula)
    p = sub.add_parser("crosscheck", help="compare the direct value with the formula")
    p.add_argument("file", nargs="?")
    p.add_argument("--corpus", action="store_true", help="run every shipped fixture")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --corpus")
    p.set_defaults(func=cmd_crosscheck)
    p = sub.add_parser("identity-check", help="verify the two forms of the normal-bundle factor")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_identity)
    p = sub.add_parser("corpus", help="list the shipped fixture files")
    p.set_defaults(func=lambda a: ({"fixtures": [x.name for x in corpus_paths()]}, "corpus listing", 0))
    return ap


def cli_dispatch(argv) -> int:
    """Parse ``argv`` (without the program name), run the subcommand, return the exit code."""
    args = build_parser().parse_args(argv)
    try:
        out, summary, code = args.func(args)
    except (FixtureError, FixedDataError, InvalidComplexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PairingError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps(out))
    print(summary, file=sys.stderr)
    return code


def main(argv=None) -> int:
    return cli_dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
