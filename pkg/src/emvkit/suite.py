"""The acceptance battery: thirteen criteria, each reduced to one verdict.

``run_criteria`` runs a selection at ``quick`` or ``full`` scale.  Quick
scale shrinks the samples and the bounds so the battery fits in a few
seconds; full scale uses the sizes the criteria ask for.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .bounds import resolve
from .builtins import (clause_iii_breach, coordinatewise_morphism, missing_directedness,
                       non_full_example, setminus_morphism)
from .category import law_suite, mediating_morphism, check_product_universal, ProductEMV
from .congruence import (all_pairs, diagonal, generate_congruence, is_congruence, kernel,
                         natural_projection, same_relation)
from .emv import (DirectSumEMV, FinSetBooleanEMV, Pomonoid, TableEMV, check_alt_axioms,
                  check_emv_axioms, check_lambda_identities, is_ideal, is_maximal_ideal, odot,
                  unitize)
from .emv.backends import FinSuppVector
from .errors import EMVError
from .free import (LiftTarget, check_free_uniqueness, check_tau_injective, free_lift, mk_free_mv,
                   oracle_agreement, proof_competitor, sim_commutes, strict_commutes, weakly_free_lift)
from .morphism import (compose, is_approx_isomorphism, similar, validate_morphism)
from .mv import FiniteMVAlgebra, check_mv_axioms, mk_chain, mk_product
from .pools import (chain, competitors, direct_sum_pool, finite_mv_fixtures, finite_pool, finset_pool,
                    product_instances)
from .verdict import FAIL, PASS, Verdict, combine, failed, passed

LEVELS = ("quick", "full")


@dataclass
class CriterionResult:
    cid: str
    title: str
    verdict: Verdict
    counts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict.ok

    def line(self, timing: bool = False) -> str:
        v = self.verdict
        s = f"{self.cid} {v.status:<16} {self.title}"
        if not v.ok:
            s += f" [clause={v.clause}]"
            if v.witness:
                s += f" witness={v.witness}"
        if timing:
            s += f" ({self.seconds:.2f}s)"
        return s

    def to_json(self, timing: bool = False) -> dict:
        v = self.verdict
        out = {"suite": self.cid, "title": self.title, "verdict": v.status, "clause": v.clause,
               "witness": {k: repr(w) for k, w in sorted(v.witness.items())}, "bound": v.bound,
               "counts": dict(sorted(self.counts.items()))}
        if timing:
            out["wall_time"] = round(self.seconds, 3)
        return out


class _WrongLambdaSum(DirectSumEMV):
    """Test-hook backend: lambda_b keeps coordinate 0 of ``b`` no matter what ``x`` is."""

    def _lam(self, b, x):
        z = dict(super()._lam(b, x))
        db = dict(b)
        if 0 in db:
            z[0] = db[0]
        return FinSuppVector(sorted(z.items()))


MUTANTS = {
    "direct-sum-lambda": "direct sums compute lambda_b wrongly at coordinate 0",
}


class _Run:
    """Shared state of one battery run (scale, bound, injected mutant, cached law reports)."""

    def __init__(self, level: str, bound: int | None, mutant: str | None):
        if level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}")
        if mutant is not None and mutant not in MUTANTS:
            raise ValueError(f"unknown mutant {mutant!r}; known: {sorted(MUTANTS)}")
        self.quick = level == "quick"
        self.bound = resolve(bound)
        self.mutant = mutant
        self._laws: dict = {}

    def small(self, full, quick):
        return quick if self.quick else full

    def direct_sum(self, pattern) -> DirectSumEMV:
        cls = _WrongLambdaSum if self.mutant == "direct-sum-lambda" else DirectSumEMV
        return cls(pattern)

    def laws(self) -> dict:
        if not self._laws:
            b = self.bound
            self._laws["finite"] = law_suite(finite_pool(), 2, max_checks=self.small(400, 120))
            lv = min(b, self.small(4, 2))
            self._laws["finset"] = law_suite(finset_pool(lv), lv, max_checks=self.small(60, 20))
            lv = min(b, self.small(2, 1))
            self._laws["direct-sum"] = law_suite(direct_sum_pool(lv), lv, max_checks=self.small(30, 10))
        return self._laws


def _all(check: str, vs, bound=None) -> Verdict:
    return combine(check, list(vs), bound=bound)


# ---------------------------------------------------------------- criteria


def c01(run: _Run):
    vs, counts = [], {"fixtures": 0, "mutations": 0, "caught": 0}
    fixtures = finite_mv_fixtures()
    for name, M in fixtures:
        counts["fixtures"] += 1
        vs.append(check_mv_axioms(M))
        vs.append(check_emv_axioms(TableEMV.from_mv(M)))
    rng = random.Random(1)
    for _ in range(20):
        name, M = rng.choice([fx for fx in fixtures if fx[1].size > 1])
        n = M.size
        if rng.random() < 0.25:
            x = rng.randrange(n)
            v = rng.choice([u for u in range(n) if u != M.neg[x]])
            neg = list(M.neg)
            neg[x] = v
            mutant = FiniteMVAlgebra(M.oplus, neg, M.zero, M.one, M.labels)
            where = ("neg", x, v)
        else:
            x, y = rng.randrange(n), rng.randrange(n)
            v = rng.choice([u for u in range(n) if u != M.oplus[x][y]])
            table = [list(r) for r in M.oplus]
            table[x][y] = v
            mutant = FiniteMVAlgebra(table, M.neg, M.zero, M.one, M.labels)
            where = ("oplus", x, y, v)
        counts["mutations"] += 1
        r = check_mv_axioms(mutant)
        if r.ok or not r.witness:
            vs.append(failed("mutation", "uncaught", fixture=name, mutation=where))
        else:
            counts["caught"] += 1
    return _all("mv-emv-axioms", vs), counts


def c02(run: _Run):
    b = max(run.bound, 4)
    vs = [check_lambda_identities(TableEMV.from_mv(M)) for _, M in finite_mv_fixtures()]
    infinite = [run.direct_sum([mk_chain(2)]), run.direct_sum([mk_chain(3), mk_chain(2)]), FinSetBooleanEMV()]
    vs += [check_lambda_identities(M, b) for M in infinite]
    return _all("lambda-identities", vs, b), {"finite": len(vs) - len(infinite), "infinite": len(infinite),
                                               "bound": b}


def c03(run: _Run):
    n = run.small(1000, 200)
    rng = random.Random(3)
    backends = [("boolean3", TableEMV.from_mv(mk_product([mk_chain(2)] * 3))),
                ("L3xL3", TableEMV.from_mv(mk_product([mk_chain(3), mk_chain(3)]))),
                ("direct-sum", DirectSumEMV([mk_chain(4), mk_chain(2)])),
                ("finset", FinSetBooleanEMV())]
    vs, counts = [], {}
    for name, M in backends:
        E = M.elements(4)
        idem = M.idempotents(5)
        done = 0
        while done < n:
            x, y = rng.choice(E), rng.choice(E)
            ups = [a for a in idem if M.leq(M.join(x, y), a)]
            if len(ups) < 2:
                continue
            a1, a2 = rng.sample(ups, 2)
            done += 1
            if odot(M, x, y, a1) != odot(M, x, y, a2):
                vs.append(failed("odot", "depends-on-a", backend=name, x=x, y=y, a=a1, b=a2))
                break
        counts[name] = done
    return _all("odot-independent", vs), counts


def c04(run: _Run):
    b = run.bound
    D = DirectSumEMV([mk_chain(3)])
    worked = [setminus_morphism(), coordinatewise_morphism(D, D, [[0, 1, 2]])]
    vs = [validate_morphism(f, b) for f in worked]
    expect = [(non_full_example(), "i"), (clause_iii_breach(), "iii"), (missing_directedness(), "iv")]
    for f, clause in expect:
        r = validate_morphism(f, b)
        if r.ok or r.clause != clause:
            vs.append(failed("violation", "wrong-clause", morphism=f.name, expected=clause, got=r.clause))
    return _all("morphism-validation", vs, b), {"worked": len(worked), "violations": len(expect)}


_C05 = ("equivalence", "identity", "compatibility", "associativity")
_C06 = ("standard-closure", "standard-invariance", "F-strong", "F-well-defined", "HF", "FH")


def _laws(run: _Run, names, check):
    vs, counts = [], {}
    for pool, rep in run.laws().items():
        for name, v in rep.results:
            if name in names:
                vs.append(Verdict(check, v.status, f"{pool}:{v.clause or name}", v.witness, v.bound, v.path,
                                  v.detail) if not v.ok else v)
        counts[pool] = {k: rep.counts[k] for k in ("morphisms", "pairs", "triples", "compatibility")
                        if k in rep.counts}
    if run.laws()["finite"].counts.get("triples", 0) < 100:
        vs.append(failed(check, "too-few-triples", triples=run.laws()["finite"].counts.get("triples")))
    return _all(check, vs), counts


def c05(run: _Run):
    return _laws(run, _C05, "similarity-laws")


def c06(run: _Run):
    return _laws(run, _C06, "standard-calculus")


def c07(run: _Run):
    vs, counts = [], {"kernels": 0, "projections": 0}
    pools = [(finite_pool(), 2)]
    lv = min(run.bound, run.small(3, 2))
    pools += [(finset_pool(lv), lv), (direct_sum_pool(min(lv, 2)), min(lv, 2))]
    for pool, lv in pools:
        for name, f in pool.morphisms:
            counts["kernels"] += 1
            vs.append(is_congruence(f.source, kernel(f, lv), lv))
    for name, mv in finite_mv_fixtures():
        if mv.size > 8:
            continue
        M = TableEMV.from_mv(mv)
        E = M.elements(0)
        thetas = [diagonal(M), all_pairs(M)]
        thetas += [generate_congruence(M, [(x, y)]) for i, x in enumerate(E) for y in E[i + 1:]]
        seen = set()
        for th in thetas:
            key = frozenset(map(tuple, th.blocks()))
            if key in seen:
                continue
            seen.add(key)
            counts["projections"] += 1
            p = natural_projection(M, th)
            vs.append(same_relation(M, kernel(p), th))
    return _all("kernels-quotients", vs), counts


def c08(run: _Run):
    vs, counts = [], {"instances": 0, "competitors": 0}
    for name, M, fs in product_instances():
        lv = 2 if M.is_exhaustive(0) else min(run.bound, run.small(3, 2))
        counts["instances"] += 1
        g = mediating_morphism(M, fs, lv)
        vs.append(validate_morphism(g, lv))
        P = g.target
        for i, f in enumerate(fs):
            vs.append(combine("projection", [similar(compose(P.projection(i), g, lv, distinct=True), f, lv),
                                             similar(f, compose(P.projection(i), g, lv, distinct=True), lv)],
                              bound=lv))
        for cname, h in competitors(M, g, lv):
            counts["competitors"] += 1
            vs.append(check_product_universal(M, fs, h, lv))
    return _all("products", vs), counts


def _assignments(M, gens):
    E = M.elements(0)
    out = [{}]
    for g in gens:
        out = [dict(a, **{g: x}) for a in out for x in E]
    return out


def c09(run: _Run):
    lv = min(run.bound, 3)
    vs, counts = [], {"lifts": 0}
    targets = [chain(2), chain(3), chain(4), TableEMV.from_mv(mk_product([mk_chain(2), mk_chain(3)]))]
    if not run.quick:
        targets.append(ProductEMV([chain(2), chain(3)]))
    rng = random.Random(9)
    for gens in (("x",), ("x", "y")):
        F = mk_free_mv(gens)
        for M in targets:
            asg = _assignments(M, gens)
            if len(asg) > 6:
                asg = rng.sample(asg, run.small(6, 3))
            for f in asg:
                counts["lifts"] += 1
                T = LiftTarget(M, f)
                phi = free_lift(F, T, lv)
                vs.append(validate_morphism(phi, lv))
                vs.append(strict_commutes(phi, F.tau, f, lv))
                vs.append(check_free_uniqueness(F, T, phi, lv))
                vs.append(check_free_uniqueness(F, T, proof_competitor(F, T, lv), lv))
    return _all("free", vs, lv), counts


def c10(run: _Run):
    lv = min(run.bound, 3)
    D = DirectSumEMV([mk_chain(2)])
    vs, counts = [], {}
    gap = []
    for gens, f in ((("x",), {"x": D.unit(0)}), (("x", "y"), {"x": D.unit(0), "y": D.unit(1)})):
        F = mk_free_mv(gens)
        beta = weakly_free_lift(F, D, f, lv)
        vs.append(validate_morphism(beta, lv))
        vs.append(sim_commutes(beta, F.tau, f, lv))
        strict = strict_commutes(beta, F.tau, f, lv)
        if not strict.ok:
            gap.append(strict.witness)
        vs.append(check_tau_injective(F))
    if not gap:
        vs.append(failed("weakly-free", "no-gap", detail="strict commutation never failed"))
    counts["gap-witnesses"] = len(gap)
    # two labelings of the same generators
    F = mk_free_mv(("x", "y"))
    swap = {"x": F.tau("y"), "y": F.tau("x")}
    there = free_lift(F, LiftTarget(F, swap), lv)
    back = free_lift(F, LiftTarget(F, swap), lv)
    vs.append(is_approx_isomorphism(there, back, lv))
    return _all("weakly-free", vs, lv), counts


def c11(run: _Run):
    b = min(run.bound, 3)
    vs, counts = [], {"slices": 0}
    for pattern in ([mk_chain(2)], [mk_chain(3), mk_chain(2)]):
        N, _ = unitize(DirectSumEMV(pattern))
        for k in range(b + 1):
            mv, _ = N.slice_mv(k)
            counts["slices"] += 1
            vs.append(check_mv_axioms(mv))
        low = lambda x: not x.high  # noqa: E731
        vs.append(is_ideal(N, low, b))
        vs.append(is_maximal_ideal(N, low, b))
    return _all("unitization", vs, b), counts


def alt_fixtures() -> list[tuple[str, object, bool]]:
    """Ten structures for the alternative axioms, with whether each is an EMV-algebra."""
    L3 = mk_chain(3)
    n3 = range(3)
    chain_leq = [[x <= y for y in n3] for x in n3]
    return [
        ("L3", chain(3), True),
        ("L4", chain(4), True),
        ("B4", TableEMV.from_mv(mk_product([mk_chain(2)] * 2)), True),
        ("L2xL3", TableEMV.from_mv(mk_product([mk_chain(2), L3])), True),
        ("direct-sum", DirectSumEMV([mk_chain(2)]), True),
        ("finset", FinSetBooleanEMV(), True),
        ("L3-as-pomonoid", Pomonoid.from_tables(L3.oplus, chain_leq, 0), True),
        ("max-monoid", Pomonoid.from_tables([[max(x, y) for y in n3] for x in n3], chain_leq, 0), False),
        ("L3-discrete", Pomonoid.from_tables(L3.oplus, [[x == y for y in n3] for x in n3], 0), False),
        ("Z3-chain", Pomonoid.from_tables([[(x + y) % 3 for y in n3] for x in n3], chain_leq, 0), False),
    ]


def c12(run: _Run):
    b = min(run.bound, 3)
    vs, counts = [], {"fixtures": 0, "emv": 0}
    for name, P, is_emv in alt_fixtures():
        counts["fixtures"] += 1
        r = check_alt_axioms(P, b)
        counts["emv"] += r.emv.ok
        if not r.agree:
            vs.append(failed("alt-axioms", "divergence", fixture=name, alt=r.alt.status, emv=r.emv.status))
        elif r.emv.ok != is_emv:
            vs.append(failed("alt-axioms", "fixture-misclassified", fixture=name, emv=r.emv.status))
        else:
            exact = r.alt.status in (PASS, FAIL) and r.emv.status in (PASS, FAIL)
            vs.append(passed("alt-axioms", exact, bound=b))
    return _all("alt-axioms", vs, b), counts


def c13(run: _Run):
    n = run.small(500, 100)
    v = oracle_agreement(n_pairs=n, max_depth=6, seed=13)
    return v, {"pairs": n}


CRITERIA: list[tuple[str, str, Callable]] = [
    ("c01", "MV and EMV axioms on finite fixtures; 20 table mutations caught", c01),
    ("c02", "local negation identities on finite fixtures and infinite backends", c02),
    ("c03", "odot independent of the dominating idempotent", c03),
    ("c04", "morphism validation: worked examples pass, violations name their clause", c04),
    ("c05", "similarity is an equivalence compatible with composition", c05),
    ("c06", "standard morphisms and strong homomorphisms", c06),
    ("c07", "kernels are congruences; kernels of natural projections", c07),
    ("c08", "products and mediating morphisms", c08),
    ("c09", "free lifts on finite generator sets", c09),
    ("c10", "weakly free lifts on a proper target", c10),
    ("c11", "unitization slices and the Low ideal", c11),
    ("c12", "alternative axioms agree with the EMV axioms", c12),
    ("c13", "term equality oracles agree", c13),
]
CRITERION_IDS = [c for c, _, _ in CRITERIA]


def run_criteria(ids=None, level: str = "full", bound: int | None = None,
                 mutant: str | None = None) -> list[CriterionResult]:
    """Run the selected criteria (all by default) in order.

    An exception inside a criterion becomes a failing verdict with clause
    ``error`` so one broken check cannot hide the others.
    """
    run = _Run(level, bound, mutant)
    wanted = CRITERION_IDS if ids is None else list(ids)
    unknown = [c for c in wanted if c not in CRITERION_IDS]
    if unknown:
        raise ValueError(f"unknown criteria {unknown}; known: {CRITERION_IDS}")
    out = []
    for cid, title, fn in CRITERIA:
        if cid not in wanted:
            continue
        t = time.perf_counter()
        try:
            verdict, counts = fn(run)
        except EMVError as e:
            verdict, counts = Verdict(cid, FAIL, "error", {"error": f"{type(e).__name__}: {e}"}), {}
        out.append(CriterionResult(cid, title, verdict, counts, time.perf_counter() - t))
    return out


__all__ = ["run_criteria", "CriterionResult", "CRITERIA", "CRITERION_IDS", "MUTANTS", "alt_fixtures"]
