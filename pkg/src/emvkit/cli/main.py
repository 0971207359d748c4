"""``emvkit`` command line: axiom checks, morphism operations and the acceptance battery.

Exit codes: 0 when no report fails, 1 when a check fails (the report
carries a witness), 2 for input that does not decode or does not fit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .. import __version__
from ..bounds import resolve
from ..category import check_product_universal, mediating_morphism, similar_both
from ..congruence import is_congruence, kernel, natural_projection, quotient
from ..emv import (DirectSumEMV, Pomonoid, UnitizedMV, check_alt_axioms, check_emv_axioms,
                   check_lambda_identities, is_ideal, is_maximal_ideal, unitize)
from ..errors import BoundExhausted, EMVError, InvalidInput, PreconditionViolation, Unsupported
from ..free import LiftTarget, free_lift, mk_free_mv, sim_commutes, strict_commutes, weakly_free_lift
from ..morphism import compose, is_standard, similar, validate_morphism
from ..mv import check_mv_axioms
from ..suite import CRITERION_IDS, MUTANTS, run_criteria
from ..verdict import FAIL, FAIL_BOUNDED, Verdict, passed
from . import docs

FAILING = {FAIL, FAIL_BOUNDED}


class Reporter:
    """Collects reports and prints them as text lines or JSON objects, one per line."""

    def __init__(self, as_json: bool, timing: bool, out=None):
        self.as_json, self.timing = as_json, timing
        self.out = out or sys.stdout
        self.failed = False
        self._t = time.perf_counter()

    def emit(self, check: str, v: Verdict, bound: int | None = None, **extra):
        if v.status in FAILING:
            self.failed = True
        if self.as_json:
            rec = {"check": check, "verdict": v.status, "clause": v.clause,
                   "witness": docs.jsonable(v.witness), "bound": v.bound if v.bound is not None else bound}
            if v.detail:
                rec["detail"] = v.detail
            if extra:
                rec["data"] = docs.jsonable(extra)
            if self.timing:
                rec["wall_time"] = round(time.perf_counter() - self._t, 3)
            print(json.dumps(rec, sort_keys=True), file=self.out)
            return
        line = f"{check}: {v.status}"
        if v.clause:
            line += f" clause={v.clause}"
        if v.witness and not v.ok:
            line += " witness=" + json.dumps(docs.jsonable(v.witness), sort_keys=True)
        b = v.bound if v.bound is not None else bound
        if b is not None and v.status != "pass":
            line += f" bound={b}"
        if v.detail:
            line += f" ({v.detail})"
        print(line, file=self.out)
        for k, val in extra.items():
            print(f"  {k}: {json.dumps(docs.jsonable(val), sort_keys=True)}", file=self.out)

    def info(self, check: str, **data):
        self.emit(check, passed(check), **data)

    def raw(self, obj: dict, line: str):
        print(json.dumps(obj, sort_keys=True) if self.as_json else line, file=self.out)


def _write(path: str | None, doc) -> None:
    if path is None:
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(docs.dump(doc))
    except OSError as e:
        raise docs.DocError(path, f"cannot write ({e.strerror})") from None


def _algebra(path: str):
    return docs.decode_algebra(docs.load(path), path)


def _morphism(path: str, bound: int):
    return docs.decode_morphism(docs.load(path), path, bound)


# ---------------------------------------------------------------- commands


def cmd_check(args, rep: Reporter):
    doc = docs.load(args.algebra)
    M = docs.decode_algebra(doc, args.algebra)
    b = args.bound
    if isinstance(M, Pomonoid):
        r = check_alt_axioms(M, b)
        for k, v in r.clauses.items():
            rep.emit(f"alt-{k}", v, b)
        rep.emit("alt-axioms", r.alt, b)
        rep.emit("emv-axioms", r.emv, b)
        if not r.agree:
            rep.emit("alt-agreement", Verdict("alt-agreement", FAIL, "divergence", {}, b))
        return
    if docs.is_mv_doc(doc):
        rep.emit("mv-axioms", check_mv_axioms(M.origin[1]))
    if isinstance(M, UnitizedMV):
        for k in range(min(b, 3) + 1):
            mv, _ = M.slice_mv(k)
            rep.emit(f"mv-axioms[slice {k}]", check_mv_axioms(mv))
        return
    v = check_emv_axioms(M, b)
    rep.emit("emv-axioms", v, b)
    if v.ok:
        rep.emit("lambda-identities", check_lambda_identities(M, b), b)


def _validated(rep: Reporter, f, b, check="morphism"):
    v = validate_morphism(f, b)
    rep.emit(check, v, b)
    return v


def cmd_morphism(args, rep: Reporter):
    f = _morphism(args.morphism, args.bound)
    v = _validated(rep, f, args.bound)
    if v.ok:
        rep.emit("standard", is_standard(f, args.bound), args.bound)
    _write(args.output, docs.encode_morphism(f, args.bound))


def _same_ends(f, g):
    if f.source != g.source or f.target != g.target:
        raise InvalidInput("the two morphisms have different sources or targets")


def cmd_similar(args, rep: Reporter):
    f, g = _morphism(args.f, args.bound), _morphism(args.g, args.bound)
    _same_ends(f, g)
    rep.emit("similar", similar(f, g, args.bound), args.bound)
    if args.both:
        rep.emit("similar-converse", similar(g, f, args.bound), args.bound)


def cmd_compose(args, rep: Reporter):
    h, f = _morphism(args.outer, args.bound), _morphism(args.inner, args.bound)
    if f.target != h.source:
        raise InvalidInput("the target of the inner morphism is not the source of the outer one")
    c = compose(h, f, args.bound)
    _validated(rep, c, args.bound)
    if c.finite and c.source.finite_intervals():
        doc = docs.encode_family(c, args.bound)
    else:
        doc = {"kind": "composite", "outer": h.meta["doc"], "inner": f.meta["doc"]}
    _write(args.output, doc)


def cmd_kernel(args, rep: Reporter):
    f = _morphism(args.morphism, args.bound)
    b = args.bound
    if not _validated(rep, f, b).ok:
        return
    k = kernel(f, b)
    rep.emit("congruence", is_congruence(f.source, k, b), b, blocks=k.blocks(b))
    _write(args.output, docs.encode_partition(f.source, k, b))


def cmd_quotient(args, rep: Reporter):
    M = _algebra(args.algebra)
    b = args.bound
    theta = docs.decode_congruence(docs.load(args.congruence), M, args.congruence, b)
    v = is_congruence(M, theta, b)
    rep.emit("congruence", v, b)
    if not v.ok:
        return
    q = quotient(M, theta, b, check=False)
    p = natural_projection(M, theta, b)
    rep.emit("natural-projection", validate_morphism(p, b), b, classes=q.classes)
    rep.emit("quotient-emv-axioms", check_emv_axioms(q.algebra), size=q.algebra.n)
    _write(args.output, docs.encode_algebra(q.algebra))


def cmd_product(args, rep: Reporter):
    b = args.bound
    fs = [_morphism(p, b) for p in args.components]
    M = fs[0].source
    if any(f.source != M for f in fs):
        raise InvalidInput("all components must have the same source")
    g = mediating_morphism(M, fs, b)
    _validated(rep, g, b, "mediating")
    P = g.target
    for i, f in enumerate(fs):
        rep.emit(f"projection[{i}]", similar_both(compose(P.projection(i), g, b, distinct=True), f, b), b)
    if args.candidate:
        h = _morphism(args.candidate, b)
        rep.emit("universal", check_product_universal(M, fs, h, b), b)
    _write(args.output, {"kind": "mediating", "source": docs.encode_algebra(M),
                         "components": [f.meta["doc"] for f in fs]})


def _parse_assign(items, M) -> dict:
    out = {}
    for item in items:
        name, sep, val = item.partition("=")
        if not sep or not name:
            raise docs.DocError("--assign", f"expected name=value, got {item!r}")
        try:
            v = json.loads(val)
        except json.JSONDecodeError:
            v = val
        if isinstance(v, (int, float)) and not isinstance(v, bool) and getattr(M, "labels", None) \
                and val in M.labels:
            v = val
        out[name] = docs.decode_element(M, v, f"--assign {name}")
    return out


def cmd_free_lift(args, rep: Reporter):
    b = args.bound
    gens = [g for g in args.gens.split(",") if g]
    F = mk_free_mv(gens)
    tdoc = docs.load(args.target)
    M = docs.decode_algebra(tdoc, args.target)
    f = _parse_assign(args.assign, M)
    weak = args.weak or not M.has_top
    if weak and not isinstance(M, DirectSumEMV) and not M.has_top:
        raise Unsupported("weakly free lifts need a direct-sum target or a target with a top")
    phi = weakly_free_lift(F, M, f, b) if weak else free_lift(F, LiftTarget(M, f), b)
    _validated(rep, phi, b)
    rep.emit("sim-commutes", sim_commutes(phi, F.tau, f, b), b)
    strict = strict_commutes(phi, F.tau, f, b)
    if weak:
        rep.raw({"check": "strict-commutes", "verdict": strict.status, "informational": True,
                 "witness": docs.jsonable(strict.witness)},
                f"strict-commutes: {strict.status} (informational)")
    else:
        rep.emit("strict-commutes", strict, b)
    terms = args.term or list(gens)
    values = {}
    for e in phi.entries(b):
        values[json.dumps(docs.jsonable(e.key))] = {t: docs.encode_element(M, e(F.element(t))) for t in terms}
    rep.info("lift", entries=values)
    doc = {"kind": "weakly_free_lift" if weak else "free_lift", "generators": gens, "target": tdoc,
           "assign": {k: docs.encode_element(M, v) for k, v in f.items()}}
    _write(args.output, doc)


def cmd_unitize(args, rep: Reporter):
    M = _algebra(args.algebra)
    if not isinstance(M, DirectSumEMV):
        raise InvalidInput("unitize needs a direct_sum algebra")
    b = min(args.bound, 3)
    N, _ = unitize(M)
    for k in range(b + 1):
        mv, _ = N.slice_mv(k)
        rep.emit(f"mv-axioms[slice {k}]", check_mv_axioms(mv), size=mv.size)

    def low(x):
        return not x.high

    rep.emit("low-ideal", is_ideal(N, low, b), b)
    rep.emit("low-maximal", is_maximal_ideal(N, low, b), b)
    _write(args.output, docs.encode_algebra(N))


def cmd_suite(args, rep: Reporter):
    ids = None
    if args.only:
        ids = [c.strip() for c in args.only.split(",") if c.strip()]
        bad = [c for c in ids if c not in CRITERION_IDS]
        if bad:
            raise InvalidInput(f"unknown criteria {bad}; known: {CRITERION_IDS}")
    if args.inject_mutant and args.inject_mutant not in MUTANTS:
        raise InvalidInput(f"unknown mutant {args.inject_mutant!r}")
    for r in run_criteria(ids, level=args.level, bound=args.bound, mutant=args.inject_mutant):
        if r.verdict.status in FAILING or r.verdict.clause == "error":
            rep.failed = True
        rep.raw(r.to_json(args.timing), r.line(args.timing))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="search bound for infinite algebras (default: EMVKIT_BOUND or 4)")
    common.add_argument("--json", action="store_true", help="one JSON report object per line")
    common.add_argument("--timing", action="store_true", help="add wall times to reports")
    common.add_argument("-o", "--output", default=None, help="write the result document here")

    p = argparse.ArgumentParser(prog="emvkit", description="Checks for EMV-algebras and their morphisms.")
    p.add_argument("--version", action="version", version=f"emvkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="axiom checks for an algebra document")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("morphism", parents=[common], help="validate a morphism document")
    s.add_argument("morphism")
    s.set_defaults(func=cmd_morphism)

    s = sub.add_parser("similar", parents=[common], help="is F similar to G")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--both", action="store_true", help="also check G similar to F")
    s.set_defaults(func=cmd_similar)

    s = sub.add_parser("compose", parents=[common], help="OUTER o INNER")
    s.add_argument("outer")
    s.add_argument("inner")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("kernel", parents=[common], help="kernel congruence of a morphism")
    s.add_argument("morphism")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("quotient", parents=[common], help="quotient of a finite algebra")
    s.add_argument("algebra")
    s.add_argument("congruence", help="partition or generated congruence document")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("product", parents=[common], help="mediating morphism into a product")
    s.add_argument("components", nargs="+")
    s.add_argument("--candidate", default=None, help="a competitor to test against the mediating morphism")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("free-lift", parents=[common], help="lift an assignment of generators")
    s.add_argument("--gens", required=True, help="comma-separated generator names")
    s.add_argument("--target", required=True)
    s.add_argument("--assign", action="append", default=[], help="name=value (label, index or JSON)")
    s.add_argument("--term", action="append", default=None, help="term to evaluate in every entry")
    s.add_argument("--weak", action="store_true", help="weakly free lift (forced for topless targets)")
    s.set_defaults(func=cmd_free_lift)

    s = sub.add_parser("unitize", parents=[common], help="unitization of a direct sum")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_unitize)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--level", choices=("quick", "full"), default="full")
    s.add_argument("--only", default=None, help="comma-separated criterion ids")
    s.add_argument("--inject-mutant", default=None, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        args.bound = resolve(args.bound)
        if args.bound < 0:
            raise InvalidInput("--bound must be >= 0")
    except InvalidInput as e:
        print(f"emvkit: error: {e}", file=sys.stderr)
        return 2
    rep = Reporter(args.json, args.timing)
    try:
        args.func(args, rep)
    except (InvalidInput, Unsupported) as e:
        print(f"emvkit: error: {e}", file=sys.stderr)
        return 2
    except (BoundExhausted, PreconditionViolation) as e:
        print(f"emvkit: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except EMVError as e:
        print(f"emvkit: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 1 if rep.failed else 0


if __name__ == "__main__":
    sys.exit(main())
