"""Derived operations and axiom checks for EMV-algebras."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Collection

from ..bounds import SLACK, resolve
from ..errors import DomainError, EMVError
from ..mv import FiniteMVAlgebra, check_mv_axioms
from ..verdict import FAIL_BOUNDED, Verdict, combine, failed, passed
from .backends import TableEMV
from .base import EMVAlgebra, interval_mv, lam_by_scan


def lam(M: EMVAlgebra, b, x):
    return M.lam(b, x)


def odot(M: EMVAlgebra, x, y, a=None):
    """Lukasiewicz product computed inside ``[0, a]``.

    ``a`` defaults to the backend's dominating idempotent of ``x v y``; any
    other idempotent above both gives the same value.
    """
    if a is None:
        a = M.dominating(M.join(x, y))
        if a is None:
            raise DomainError("no idempotent dominates the operands")
    elif not M.is_idempotent(a) or not (M.leq(x, a) and M.leq(y, a)):
        raise DomainError(f"{M.show(a)} is not an idempotent above both operands")
    return M.lam(a, M.oplus(M.lam(a, x), M.lam(a, y)))


def power(M: EMVAlgebra, x, n: int):
    if n < 0:
        raise DomainError("negative exponent")
    if n == 0:
        if not M.has_top:
            raise DomainError("x^0 needs a top element")
        return M.top
    r = x
    for _ in range(n - 1):
        r = odot(M, r, x)
    return r


def idempotents(M: EMVAlgebra, level: int | None = None) -> list:
    return M.idempotents(resolve(level))


def _fail(check, clause, exhaustive, bound, path="exhaustive", detail="", **witness) -> Verdict:
    v = failed(check, clause, bound=bound, path=path, detail=detail, **witness)
    if exhaustive:
        return v
    return Verdict(check, FAIL_BOUNDED, clause, v.witness, bound, path, detail)


Members = Collection | Callable[[Any], bool]


def _member(S: Members) -> Callable[[Any], bool]:
    if callable(S) and not isinstance(S, (set, frozenset, list, tuple, dict)):
        return S
    pool = set(S)
    return pool.__contains__


def is_full(M: EMVAlgebra, S, level: int | None = None) -> Verdict:
    """Is every idempotent below some member of ``S``?

    ``S`` is a finite collection or an enumerator ``level -> iterable``.
    """
    level = resolve(level)
    finite_S = not callable(S)
    pool = list(S) if finite_S else list(S(level + SLACK))
    for a in pool:
        if not M.is_idempotent(a):
            raise DomainError(f"is_full: {M.show(a)} is not idempotent")
    for b in M.idempotents(level):
        if not any(M.leq(b, a) for a in pool):
            exhaustive = finite_S and M.is_exhaustive(level)
            return _fail("full", "full", exhaustive, level, path="search", b=b)
    exhaustive = finite_S and M.is_exhaustive(level)
    return passed("full", exhaustive, bound=None if exhaustive else level,
                  path="exhaustive" if exhaustive else "search")


def check_emv_axioms(M: EMVAlgebra, level: int | None = None) -> Verdict:
    """EMV1 to EMV4 plus natural order, on all elements up to ``level``.

    Clause ids: ``EMV1`` (distributive lattice with least element 0),
    ``EMV2`` (commutative ordered monoid), ``EMV3`` (lambda exists and every
    interval is an MV-algebra), ``EMV4`` (dominating idempotents),
    ``natural-order`` and, on finite algebras, ``finite-top``.
    """
    level = resolve(level)
    check = "emv-axioms"
    exhaustive = M.is_exhaustive(level)
    E = M.elements(level)
    J, Mt, O, L = M.join, M.meet, M.oplus, M.leq

    def bad(clause, detail="", **w):
        return _fail(check, clause, exhaustive, level, detail=detail, **w)

    # EMV1
    for x in E:
        if not L(M.zero, x):
            return bad("EMV1", "zero is not least", x=x)
        for y in E:
            if J(x, y) != J(y, x) or Mt(x, y) != Mt(y, x):
                return bad("EMV1", "not commutative", x=x, y=y)
            if J(x, Mt(x, y)) != x or Mt(x, J(x, y)) != x:
                return bad("EMV1", "absorption fails", x=x, y=y)
    for x in E:
        for y in E:
            for z in E:
                if J(J(x, y), z) != J(x, J(y, z)) or Mt(Mt(x, y), z) != Mt(x, Mt(y, z)):
                    return bad("EMV1", "not associative", x=x, y=y, z=z)
                if Mt(x, J(y, z)) != J(Mt(x, y), Mt(x, z)):
                    return bad("EMV1", "not distributive", x=x, y=y, z=z)
    # EMV2
    for x in E:
        if O(x, M.zero) != x:
            return bad("EMV2", "zero is not neutral", x=x)
        for y in E:
            if O(x, y) != O(y, x):
                return bad("EMV2", "oplus not commutative", x=x, y=y)
    for x in E:
        for y in E:
            xy = O(x, y)
            le = L(x, y)
            for z in E:
                if O(xy, z) != O(x, O(y, z)):
                    return bad("EMV2", "oplus not associative", x=x, y=y, z=z)
                if le and not L(O(x, z), O(y, z)):
                    return bad("EMV2", "oplus not monotone", x=x, y=y, z=z)
    # EMV3
    idem = M.idempotents(level)
    for b in idem:
        for x in M.below(b):
            z = lam_by_scan(M, b, x)
            if z is None:
                return bad("EMV3", "lambda has no unique minimum", b=b, x=x)
            try:
                fast = M.lam(b, x)
            except EMVError as e:
                return bad("EMV3", f"lambda failed: {e}", b=b, x=x)
            if fast != z:
                return bad("EMV3", "backend lambda disagrees with the minimum", b=b, x=x)
        try:
            iv = interval_mv(M, b)
        except EMVError as e:
            return bad("EMV3", f"interval not closed: {e}", b=b)
        sub = check_mv_axioms(iv.mv)
        if not sub.ok:
            w = {k: iv.to_ambient(v) for k, v in sub.witness.items()}
            return bad("EMV3", f"interval is not an MV-algebra ({sub.clause})", b=b, **w)
    # EMV4
    for x in E:
        d = M.dominating(x)
        if d is None or not M.is_idempotent(d) or not L(x, d):
            return bad("EMV4", "no dominating idempotent", x=x)
    # natural order: x <= y iff x + z = y for some z (necessarily z <= y)
    for x in E:
        for y in E:
            d = M.dominating(y)
            found = any(O(x, z) == y for z in M.below(d))
            if found != L(x, y):
                return bad("natural-order", x=x, y=y)
    if exhaustive and idem:
        t = idem[0]
        for a in idem[1:]:
            t = J(t, a)
        if not M.is_idempotent(t) or not all(L(x, t) for x in E):
            return bad("finite-top", "join of idempotents is not a top", t=t)
    return passed(check, exhaustive, bound=None if exhaustive else level)


def check_lambda_identities(M: EMVAlgebra, level: int | None = None) -> Verdict:
    """For idempotents a <= b and x <= a: the four lambda identities.

    Clause ids: ``meet`` (lambda_a(x) = lambda_b(x) ^ a), ``sum``
    (lambda_b(x) = lambda_a(x) + lambda_b(a)), ``idempotent``
    (lambda_b(a) is idempotent) and ``self`` (lambda_a(a) = 0).
    """
    level = resolve(level)
    check = "lambda-identities"
    exhaustive = M.is_exhaustive(level)
    idem = M.idempotents(level)
    for a in idem:
        if M.lam(a, a) != M.zero:
            return _fail(check, "self", exhaustive, level, a=a)
        for b in idem:
            if not M.leq(a, b):
                continue
            lba = M.lam(b, a)
            if not M.is_idempotent(lba):
                return _fail(check, "idempotent", exhaustive, level, a=a, b=b)
            for x in M.below(a):
                la, lb = M.lam(a, x), M.lam(b, x)
                if la != M.meet(lb, a):
                    return _fail(check, "meet", exhaustive, level, a=a, b=b, x=x)
                if lb != M.oplus(la, lba):
                    return _fail(check, "sum", exhaustive, level, a=a, b=b, x=x)
    return passed(check, exhaustive, bound=None if exhaustive else level)


# ---------------------------------------------------------------- alt axioms


@dataclass(eq=False)
class Pomonoid:
    """A commutative monoid with a separately given partial order."""
    plus: Callable[[Any, Any], Any]
    zero: Any
    leq: Callable[[Any, Any], bool]
    elements: Callable[[int], list]
    exhaustive: Callable[[int], bool]
    below: Callable[[Any], list] | None = None
    show: Callable[[Any], str] = repr
    source: EMVAlgebra | None = None
    tables: tuple | None = None

    @classmethod
    def from_tables(cls, plus, leq, zero: int, labels=None) -> "Pomonoid":
        plus = tuple(tuple(r) for r in plus)
        leq = tuple(tuple(bool(v) for v in r) for r in leq)
        n = len(plus)
        show = (lambda x: labels[x]) if labels else str
        return cls(lambda x, y: plus[x][y], zero, lambda x, y: leq[x][y],
                   lambda level: list(range(n)), lambda level: True, show=show,
                   tables=(plus, leq, labels))

    @classmethod
    def from_emv(cls, M: EMVAlgebra) -> "Pomonoid":
        return cls(M.oplus, M.zero, M.leq, M.elements, M.is_exhaustive, below=M.below,
                   show=M.show, source=M)

    def idempotents(self, level: int) -> list:
        return [x for x in self.elements(level) if self.plus(x, x) == x]

    def interval(self, b, level: int) -> list:
        if self.below is not None:
            return self.below(b)
        return [x for x in self.elements(level) if self.leq(x, b)]


@dataclass
class AltReport:
    clauses: dict[str, Verdict]
    alt: Verdict
    emv: Verdict

    @property
    def agree(self) -> bool:
        return self.alt.ok == self.emv.ok

    @property
    def failing(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v.ok]


def _alt_lambda(P: Pomonoid, b, x, seg):
    cands = [z for z in seg if P.plus(x, z) == b]
    least = [z for z in cands if all(P.leq(z, w) for w in cands)]
    return least[0] if len(least) == 1 else None


def check_alt_axioms(P: Pomonoid | EMVAlgebra, level: int | None = None) -> AltReport:
    """Conditions (i) to (iv) on a pomonoid, alongside the EMV axioms it should imply.

    Each condition is evaluated independently so a structure that breaks
    several of them lists all of them in ``AltReport.failing``.
    """
    if isinstance(P, EMVAlgebra):
        P = Pomonoid.from_emv(P)
    level = resolve(level)
    exhaustive = P.exhaustive(level)
    E = P.elements(level)
    out: dict[str, Verdict] = {}

    def bad(clause, detail="", **w):
        return _fail("alt-" + clause, clause, exhaustive, level, detail=detail, **w)

    def ok(clause):
        return passed("alt-" + clause, exhaustive, bound=None if exhaustive else level)

    out["monoid"] = ok("monoid")
    for x in E:
        if P.plus(x, P.zero) != x:
            out["monoid"] = bad("monoid", "zero not neutral", x=x)
            break
        for y in E:
            if P.plus(x, y) != P.plus(y, x):
                out["monoid"] = bad("monoid", "not commutative", x=x, y=y)
                break
            if any(P.plus(P.plus(x, y), z) != P.plus(x, P.plus(y, z)) for z in E):
                z = next(z for z in E if P.plus(P.plus(x, y), z) != P.plus(x, P.plus(y, z)))
                out["monoid"] = bad("monoid", "not associative", x=x, y=y, z=z)
                break
        if not out["monoid"].ok:
            break

    out["i"] = ok("i")
    for x in E:
        if not P.leq(x, x):
            out["i"] = bad("i", "not reflexive", x=x)
            break
        if not P.leq(P.zero, x):
            out["i"] = bad("i", "zero not least", x=x)
            break
        hit = None
        for y in E:
            if x != y and P.leq(x, y) and P.leq(y, x):
                hit = bad("i", "not antisymmetric", x=x, y=y)
            elif P.leq(x, y):
                z = next((z for z in E if P.leq(y, z) and not P.leq(x, z)), None)
                if z is not None:
                    hit = bad("i", "not transitive", x=x, y=y, z=z)
            if hit:
                break
        if hit:
            out["i"] = hit
            break

    out["ii"] = ok("ii")
    wide = P.idempotents(level + SLACK)
    for x in E:
        for y in E:
            if not any(P.leq(x, a) and P.leq(y, a) for a in wide):
                out["ii"] = bad("ii", "no common idempotent upper bound", x=x, y=y)
                break
        if not out["ii"].ok:
            break

    out["iii"] = ok("iii")
    out["iv"] = ok("iv")
    for b in P.idempotents(level):
        seg = P.interval(b, level)
        index = {x: i for i, x in enumerate(seg)}
        lam_b = {}
        for x in seg:
            z = _alt_lambda(P, b, x, seg)
            if z is None and out["iii"].ok:
                out["iii"] = bad("iii", "lambda has no minimum", b=b, x=x)
            lam_b[x] = z
        if out["iii"].ok and P.zero not in index:
            out["iii"] = bad("iii", "interval does not contain 0", b=b)
        if out["iii"].ok:
            try:
                table = [[index[P.plus(x, y)] for y in seg] for x in seg]
            except KeyError:
                x, y = next((x, y) for x in seg for y in seg if P.plus(x, y) not in index)
                out["iii"] = bad("iii", "interval not closed under +", b=b, x=x, y=y)
            else:
                mv = FiniteMVAlgebra(table, [index[lam_b[x]] for x in seg], index[P.zero], index[b])
                sub = check_mv_axioms(mv)
                if not sub.ok:
                    w = {k: seg[v] for k, v in sub.witness.items()}
                    out["iii"] = bad("iii", f"interval is not an MV-algebra ({sub.clause})", b=b, **w)
        if out["iv"].ok:
            for x in seg:
                if lam_b[x] is None:
                    continue
                for y in seg:
                    if P.leq(x, y) != (P.plus(lam_b[x], y) == b):
                        out["iv"] = bad("iv", b=b, x=x, y=y)
                        break
                if not out["iv"].ok:
                    break
    alt = combine("alt-axioms", [out[k] for k in ("monoid", "i", "ii", "iii", "iv")],
                  bound=None if exhaustive else level)
    return AltReport(out, alt, _emv_of(P, level))


def _emv_of(P: Pomonoid, level: int) -> Verdict:
    if P.source is not None:
        return check_emv_axioms(P.source, level)
    plus, leq, labels = P.tables
    n = len(plus)
    join, meet = [], []
    for x in range(n):
        jr, mr = [], []
        for y in range(n):
            ups = [u for u in range(n) if leq[x][u] and leq[y][u]]
            lub = [u for u in ups if all(leq[u][v] for v in ups)]
            downs = [d for d in range(n) if leq[d][x] and leq[d][y]]
            glb = [d for d in downs if all(leq[v][d] for v in downs)]
            if len(lub) != 1 or len(glb) != 1:
                return failed("emv-axioms", "EMV1", detail="order has no join or meet", x=x, y=y)
            jr.append(lub[0])
            mr.append(glb[0])
        join.append(jr)
        meet.append(mr)
    return check_emv_axioms(TableEMV(join, meet, plus, P.zero, labels))


# ---------------------------------------------------------------- subsets


def is_full_subalgebra(M: EMVAlgebra, A: Members, level: int | None = None) -> Verdict:
    """Closure under +, v, ^ and 0, a full set of idempotents, and lambda-closed intervals."""
    level = resolve(level)
    check = "full-subalgebra"
    member = _member(A)
    exhaustive = M.is_exhaustive(level)
    inside = [x for x in M.elements(level) if member(x)]
    if not member(M.zero):
        return _fail(check, "zero", True, level)
    for x in inside:
        for y in inside:
            for op in (M.oplus, M.join, M.meet):
                if not member(op(x, y)):
                    return _fail(check, "closure", True, level, x=x, y=y, op=op.__name__)
    wide = [a for a in M.idempotents(level + SLACK) if member(a)]
    for b in M.idempotents(level):
        if not any(M.leq(b, a) for a in wide):
            return _fail(check, "full", exhaustive, level, path="search", b=b)
    for a in inside:
        if not M.is_idempotent(a):
            continue
        for x in M.below(a):
            if member(x) and not member(M.lam(a, x)):
                return _fail(check, "interval", True, level, a=a, x=x)
    return passed(check, exhaustive, bound=None if exhaustive else level)


def is_ideal(M: EMVAlgebra, I: Members, level: int | None = None) -> Verdict:
    level = resolve(level)
    check = "ideal"
    member = _member(I)
    exhaustive = M.is_exhaustive(level)
    if not member(M.zero):
        return _fail(check, "nonempty", True, level)
    inside = [x for x in M.elements(level) if member(x)]
    for x in inside:
        for y in M.below(M.dominating(x)):
            if M.leq(y, x) and not member(y):
                return _fail(check, "down-closed", True, level, x=x, y=y)
        for y in inside:
            if not member(M.oplus(x, y)):
                return _fail(check, "oplus-closed", True, level, x=x, y=y)
    return passed(check, exhaustive, bound=None if exhaustive else level)


def _multiple(M: EMVAlgebra, y, n: int):
    r = M.zero
    for _ in range(n):
        r = M.oplus(r, y)
    return r


def is_maximal_ideal(M: EMVAlgebra, I: Members, level: int | None = None,
                     max_multiple: int = 8) -> Verdict:
    """An ideal that is proper and becomes everything once any outside element is added.

    The ideal generated by ``I`` and ``y`` is ``{z : z <= i + n.y}``; on
    algebras with a top it suffices that the top is reached.
    """
    level = resolve(level)
    check = "maximal-ideal"
    base = is_ideal(M, I, level)
    if not base.ok:
        return Verdict(check, base.status, base.clause, base.witness, base.bound, base.path, base.detail)
    member = _member(I)
    exhaustive = M.is_exhaustive(level)
    wide = M.elements(level + SLACK)
    if all(member(x) for x in wide):
        return _fail(check, "proper", exhaustive, level, path="search")
    gens = [i for i in wide if member(i)]
    if exhaustive:
        # n.y is increasing, so it stabilizes within |M| steps
        max_multiple = max(max_multiple, len(wide))
    for y in M.elements(level):
        if member(y):
            continue
        multiples = [_multiple(M, y, n) for n in range(1, max_multiple + 1)]
        reach = [M.oplus(i, m) for i in gens for m in multiples]
        targets = [M.top] if M.has_top else M.elements(level)
        for z in targets:
            if not any(M.leq(z, r) for r in reach):
                return _fail(check, "maximal", exhaustive, level, path="search", y=y, z=z)
    return passed(check, exhaustive, bound=None if exhaustive else level,
                  path="exhaustive" if exhaustive else "search")
