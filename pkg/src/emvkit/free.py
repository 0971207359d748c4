"""Free MV-algebras on small generator sets, lifts into EMV-algebras, and the weak variant.

Elements of ``F(X)`` are MV terms compared by evaluation: a term's chain
signature lists its values at every point of ``L_k^X`` for ``2 <= k <= K``.
Two terms with equal signatures are treated as equal; a differing entry
proves inequality.  An independent oracle evaluates on the rational grid of
denominators up to ``D`` in exact integer arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .bounds import SLACK, resolve
from .emv.backends import DirectSumEMV
from .emv.base import EMVAlgebra
from .emv.unitization import Low, unitize
from .errors import BoundExhausted, InvalidInput, Unsupported
from .morphism import EMVMorphism, Entry, similar
from .terms import ONE, ZERO, MVTerm, Neg, Oplus, Var, depth, fold, parse_term, show, variables, vee, wedge
from .verdict import FAIL, NOT_COMPETITOR, Verdict, combine, failed, passed

MAX_GENERATORS = 2
CHAIN_BOUND = 8
GRID_BOUND = 12


def _chain_points(nvars: int, K: int):
    tops, cols = [], [[] for _ in range(nvars)]
    for k in range(2, K + 1):
        for combo in itertools.product(range(k), repeat=nvars):
            tops.append(k - 1)
            for c, v in zip(cols, combo):
                c.append(v)
    return np.array(tops, dtype=np.int64), [np.array(c, dtype=np.int64) for c in cols]


def _grid_points(nvars: int, D: int):
    scale = math.lcm(*range(1, D + 1))
    ticks = sorted({Fraction(p, q) for q in range(1, D + 1) for p in range(q + 1)})
    ints = [int(t * scale) for t in ticks]
    cols = [[] for _ in range(nvars)]
    for combo in itertools.product(ints, repeat=nvars):
        for c, v in zip(cols, combo):
            c.append(v)
    n = len(ints) ** nvars
    return np.full(n, scale, dtype=np.int64), [np.array(c, dtype=np.int64) for c in cols]


def _evaluate(t: MVTerm, names: Sequence[str], tops: np.ndarray, cols) -> np.ndarray:
    return fold(t, dict(zip(names, cols)), zero=np.zeros_like(tops), one=tops,
                oplus=lambda a, b: np.minimum(a + b, tops), neg=lambda a: tops - a)


class FreeElement:
    """A term of ``F(X)`` with its chain signature; equality is signature equality."""

    __slots__ = ("algebra", "term", "sig", "_hash")

    def __init__(self, algebra: "FreeMV", term: MVTerm, sig: np.ndarray):
        self.algebra, self.term, self.sig = algebra, term, sig
        self.sig.setflags(write=False)
        self._hash = hash(sig.tobytes())

    def __eq__(self, other):
        return (isinstance(other, FreeElement) and other.algebra == self.algebra
                and np.array_equal(self.sig, other.sig))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{show(self.term)}>"


class FreeMV(EMVAlgebra):
    """``F(X)`` for a finite generator list ``X`` of at most ``MAX_GENERATORS`` names."""

    kind = "free"

    def __init__(self, generators: Sequence[str] = ("x",), K: int = CHAIN_BOUND, D: int = GRID_BOUND,
                 max_generators: int = MAX_GENERATORS):
        super().__init__()
        gens = tuple(generators)
        if len(gens) > max_generators:
            raise Unsupported(f"free algebras support at most {max_generators} generators")
        if len(set(gens)) != len(gens):
            raise InvalidInput("duplicate generator names")
        for g in gens:
            if not isinstance(g, str) or not g or not (g[0].isalpha() or g[0] == "_"):
                raise InvalidInput(f"bad generator name {g!r}")
        if K < 2 or D < 1:
            raise InvalidInput("oracle bounds must be K >= 2 and D >= 1")
        self.generators, self.K, self.D = gens, K, D
        self._tops, self._cols = _chain_points(len(gens), K)
        self._grid = None
        self._elements: list[FreeElement] | None = None

    def __repr__(self):
        return f"FreeMV<{','.join(self.generators)}>"

    def __eq__(self, other):
        return isinstance(other, FreeMV) and (self.generators, self.K) == (other.generators, other.K)

    def __hash__(self):
        return hash(("free", self.generators, self.K))

    # construction
    def element(self, t: MVTerm | str) -> FreeElement:
        if isinstance(t, str):
            t = parse_term(t)
        extra = variables(t) - set(self.generators)
        if extra:
            raise InvalidInput(f"term uses variables outside the generators: {sorted(extra)}")
        return FreeElement(self, t, _evaluate(t, self.generators, self._tops, self._cols))

    def tau(self, name: str) -> FreeElement:
        if name not in self.generators:
            raise InvalidInput(f"{name!r} is not a generator")
        return self.element(Var(name))

    def _make(self, term, sig) -> FreeElement:
        return FreeElement(self, term, sig)

    # oracles
    def chain_equal(self, s: MVTerm, t: MVTerm) -> bool:
        return self.element(s) == self.element(t)

    def grid_signature(self, t: MVTerm) -> np.ndarray:
        if self._grid is None:
            self._grid = _grid_points(len(self.generators), self.D)
        tops, cols = self._grid
        return _evaluate(t, self.generators, tops, cols)

    def grid_equal(self, s: MVTerm, t: MVTerm) -> bool:
        return bool(np.array_equal(self.grid_signature(s), self.grid_signature(t)))

    def distinguishing_point(self, s: MVTerm, t: MVTerm):
        """A chain ``L_k`` and assignment where ``s`` and ``t`` differ, as fractions; None if none."""
        a, b = self.element(s).sig, self.element(t).sig
        diff = np.nonzero(a != b)[0]
        if not len(diff):
            return None
        p = int(diff[0])
        n = int(self._tops[p])
        point = {g: Fraction(int(c[p]), n) for g, c in zip(self.generators, self._cols)}
        return {"k": n + 1, "point": point, "values": (Fraction(int(a[p]), n), Fraction(int(b[p]), n))}

    # EMV interface
    def join(self, x, y):
        return self._make(vee(x.term, y.term), np.maximum(x.sig, y.sig))

    def meet(self, x, y):
        return self._make(wedge(x.term, y.term), np.minimum(x.sig, y.sig))

    def oplus(self, x, y):
        return self._make(Oplus(x.term, y.term), np.minimum(x.sig + y.sig, self._tops))

    def neg(self, x):
        return self._make(Neg(x.term), self._tops - x.sig)

    @property
    def zero(self):
        return self._make(ZERO, np.zeros_like(self._tops))

    @property
    def has_top(self):
        return True

    @property
    def top(self):
        return self._make(ONE, self._tops.copy())

    def contains(self, x):
        return isinstance(x, FreeElement) and x.algebra == self

    def leq(self, x, y):
        return bool(np.all(x.sig <= y.sig))

    def is_idempotent(self, x):
        return bool(np.all((x.sig == 0) | (x.sig == self._tops)))

    def dominating(self, x):
        return self.top

    def _lam(self, b, x):
        return self.meet(b, self.neg(x))

    def key(self, x):
        return (depth(x.term), show(x.term))

    def idempotents(self, level=0):
        # McNaughton functions on a connected cube taking only the values 0, 1 are constant
        return [self.zero, self.top]

    def below(self, a):
        raise Unsupported("intervals of a free MV-algebra are infinite")

    def finite_intervals(self):
        return False

    def elements(self, level):
        """Breadth-first sample: constants, generators, then + and negation, deduplicated."""
        cap = 4 * level + 6
        if self._elements is None or len(self._elements) < cap:
            seen: dict[FreeElement, None] = {}
            frontier = [self.zero, self.top] + [self.tau(g) for g in self.generators]
            for e in frontier:
                seen.setdefault(e)
            while len(seen) < cap:
                cur = list(seen)
                new = [self.neg(x) for x in cur] + [self.oplus(x, y) for x, y in itertools.combinations_with_replacement(cur, 2)]
                grew = False
                for e in new:
                    if e not in seen:
                        seen[e] = None
                        grew = True
                        if len(seen) >= cap:
                            break
                if not grew:
                    break
            self._elements = list(seen)
        return self._elements[:cap]

    def show(self, x):
        return show(x.term)


def mk_free_mv(generators: Sequence[str] = ("x",), K: int = CHAIN_BOUND, D: int = GRID_BOUND) -> FreeMV:
    return FreeMV(generators, K, D)


def evaluate_in(M: EMVAlgebra, t: MVTerm, assign: Mapping[str, object], a) -> object:
    """Value of ``t`` in the MV-algebra ``[0, a]`` of ``M``."""
    return fold(t, assign, zero=M.zero, one=a, oplus=M.oplus, neg=lambda v: M.lam(a, v))


@dataclass
class LiftTarget:
    """An EMV-algebra ``M`` with an assignment of the generators."""
    M: EMVAlgebra
    f: dict

    def J(self, level: int) -> list:
        """Idempotents above every ``f(x)``."""
        return [a for a in self.M.idempotents(level) if all(self.M.leq(v, a) for v in self.f.values())]


def _check_assignment(F: FreeMV, M: EMVAlgebra, f: Mapping) -> dict:
    f = dict(f)
    if set(f) != set(F.generators):
        raise InvalidInput(f"assignment must cover exactly the generators {list(F.generators)}")
    for k, v in f.items():
        if not M.contains(v):
            raise InvalidInput(f"f({k}) = {v!r} is not an element of {M!r}")
    return f


def free_lift(F: FreeMV, T: LiftTarget, level: int | None = None) -> EMVMorphism:
    """``phi = {phi_a : a in J}``: ``phi_a`` evaluates terms in ``[0, a]`` with ``x -> f(x)``."""
    level = resolve(level)
    M = T.M
    T.f = _check_assignment(F, M, T.f)
    if not T.J(level + SLACK):
        raise BoundExhausted(f"no idempotent above the assigned values up to level {level + SLACK}")

    def make(a) -> Entry:
        if not M.is_idempotent(a) or not all(M.leq(v, a) for v in T.f.values()):
            raise InvalidInput(f"free_lift: {M.show(a)} is not in J")
        return Entry(a, F.top, lambda t: evaluate_in(M, t.term, T.f, a), origin=("phi", a))

    def source_full(b):
        return M.dominating(_join_all(M, T.f.values()))

    def directed(i, j):
        return M.join(i, j)

    g = EMVMorphism(F, M, keys=T.J, make=make, name="phi", source_full=source_full, directed=directed,
                    finite=False)
    g.meta["assignment"] = T.f
    return g


def _join_all(M, vals):
    out = M.zero
    for v in vals:
        out = M.join(out, v)
    return out


def sim_commutes(phi: EMVMorphism, tau: Callable | Mapping, f: Mapping, level: int | None = None) -> Verdict:
    """``phi o tau ~ f``: ``f(x) ^ phi_i(a_i) = phi_i(tau(x))`` whenever ``tau(x) <= a_i``."""
    level = resolve(level)
    S, T = phi.source, phi.target
    tau_of = tau if callable(tau) else tau.__getitem__
    for x in sorted(f):
        tx = tau_of(x)
        for e in phi.entries(level):
            if S.leq(tx, e.a) and T.meet(f[x], e.b) != e(tx):
                return Verdict("sim-commutes", FAIL, "sim", {"x": x, "i": e.key}, level, "search")
    return passed("sim-commutes", False, bound=level)


def strict_commutes(phi: EMVMorphism, tau: Callable | Mapping, f: Mapping, level: int | None = None) -> Verdict:
    """``phi_i(tau(x)) = f(x)`` for every entry with ``tau(x) <= a_i``."""
    level = resolve(level)
    S = phi.source
    tau_of = tau if callable(tau) else tau.__getitem__
    for x in sorted(f):
        tx = tau_of(x)
        for e in phi.entries(level):
            if S.leq(tx, e.a) and e(tx) != f[x]:
                return Verdict("strict-commutes", FAIL, "strict", {"x": x, "i": e.key}, level, "search")
    return passed("strict-commutes", False, bound=level)


def weakly_free_lift(F: FreeMV, M: EMVAlgebra, f: Mapping, level: int | None = None) -> EMVMorphism:
    """``beta = {z -> phi(z) ^ a : a in I(M)}``.

    For a direct sum ``phi`` evaluates in its unitization with
    ``x -> Low(f(x))``; for an algebra with a top it evaluates in ``M``.
    """
    level = resolve(level)
    f = _check_assignment(F, M, f)
    if isinstance(M, DirectSumEMV):
        N, emb = unitize(M)
        assign = {k: emb(v) for k, v in f.items()}

        def phi(t):
            return evaluate_in(N, t.term, assign, N.top)

        def cut(z, a):
            return N.meet(z, Low(a)).vec
    elif M.has_top:
        def phi(t):
            return evaluate_in(M, t.term, f, M.top)

        def cut(z, a):
            return M.meet(z, a)
    else:
        raise Unsupported("weakly free lifts need a direct-sum target or a target with a top")

    def make(a) -> Entry:
        if not M.is_idempotent(a):
            raise InvalidInput(f"weakly_free_lift: {M.show(a)} is not idempotent")
        return Entry(a, F.top, lambda t: cut(phi(t), a), origin=("beta", a))

    g = EMVMorphism(F, M, keys=lambda lv: M.idempotents(lv), make=make, name="beta",
                    source_full=lambda b: M.zero, target_full=lambda c: c,
                    directed=lambda i, j: M.join(i, j), finite=False)
    g.meta["assignment"] = f
    return g


def subfamily(f: EMVMorphism, keep: Callable[[object], bool], name: str = "") -> EMVMorphism:
    """The entries of ``f`` whose keys satisfy ``keep``, with the same witnesses where they stay valid."""
    return EMVMorphism(f.source, f.target, keys=lambda lv: [k for k in f.keys(lv) if keep(k)],
                       make=f.entry, name=name or f"{f.name}'", directed=f.directed, finite=f.finite)


def check_free_uniqueness(F: FreeMV, T: LiftTarget, h: EMVMorphism, level: int | None = None,
                          mode: str = "free") -> Verdict:
    """A competitor ``h`` commuting with the assignment must be similar to the lift.

    ``mode="free"`` demands strict commutation and compares with
    :func:`free_lift`; it also checks that the subfamily of entries with
    ``a_i = 1`` is similar to ``h``.  ``mode="weak"`` demands the relaxed
    commutation and compares with :func:`weakly_free_lift`.
    """
    level = resolve(level)
    if mode not in ("free", "weak"):
        raise InvalidInput(f"unknown mode {mode!r}")
    f = _check_assignment(F, T.M, T.f)
    pre = (strict_commutes if mode == "free" else sim_commutes)(h, F.tau, f, level)
    if not pre.ok:
        return Verdict("free-uniqueness", NOT_COMPETITOR, "premise", pre.witness, level, "search",
                       f"candidate does not satisfy the {mode} commutation")
    lift = free_lift(F, T, level) if mode == "free" else weakly_free_lift(F, T.M, f, level)
    checks = [similar(h, lift, level), similar(lift, h, level)]
    if mode == "free":
        one = F.top
        top_part = subfamily(h, lambda k: h.entry(k).a == one, name="K'")
        if not top_part.keys(level + SLACK):
            checks.append(failed("free-uniqueness", "normalization", bound=level))
        else:
            checks += [similar(top_part, h, level), similar(h, top_part, level)]
    v = combine("free-uniqueness", checks, bound=level)
    return Verdict("free-uniqueness", v.status, v.clause, v.witness, v.bound, v.path,
                   "only the supplied competitor was tested")


def proof_competitor(F: FreeMV, T: LiftTarget, level: int | None = None) -> EMVMorphism:
    """``{phi_b ^ c : c in J}`` with ``b = c v extra`` a strictly larger member of ``J`` when available."""
    level = resolve(level)
    phi = free_lift(F, T, level)
    M = T.M

    def bigger(c):
        for b in T.J(max(level, M.level_of(c)) + SLACK):
            if M.leq(c, b) and b != c:
                return b
        return c

    def make(c) -> Entry:
        e = phi.entry(bigger(c))
        return Entry(c, F.top, lambda t: M.meet(e(t), c), origin=("phi_b^c", e.key))

    return EMVMorphism(F, M, keys=T.J, make=make, name="phi_b^c", directed=lambda i, j: M.join(i, j))


def check_tau_injective(F: FreeMV) -> Verdict:
    gens = F.generators
    for x, y in itertools.combinations(gens, 2):
        if F.tau(x) == F.tau(y):
            return failed("tau-injective", "injective", x=x, y=y)
    return passed("tau-injective", False, bound=F.K)


def check_generator_lemma(M: EMVAlgebra, G: Sequence) -> Verdict:
    """Least full subalgebra containing ``G`` in a finite algebra: all of ``M`` or a proper witness.

    Passes when the closure is the whole carrier; otherwise fails with the
    proper full subalgebra as ``witness["subalgebra"]``.
    """
    if not M.is_exhaustive(0):
        raise Unsupported("the generator lemma check needs a finite algebra")
    E = M.elements(0)
    idem = M.idempotents(0)
    maximal = [b for b in idem if all(M.leq(c, b) for c in idem)]
    S = set(G) | {M.zero} | set(maximal)
    changed = True
    while changed:
        changed = False
        cur = list(S)
        for x in cur:
            for y in cur:
                for v in (M.join(x, y), M.meet(x, y), M.oplus(x, y)):
                    if v not in S:
                        S.add(v)
                        changed = True
            for b in cur:
                if M.is_idempotent(b) and M.leq(x, b):
                    v = M.lam(b, x)
                    if v not in S:
                        S.add(v)
                        changed = True
    if len(S) == len(E):
        return passed("generator-lemma")
    return failed("generator-lemma", "proper", subalgebra=M.sort(S))


def random_term(rng, generators: Sequence[str], max_depth: int) -> MVTerm:
    """A random term of depth at most ``max_depth`` drawn with ``rng`` (a ``random.Random``).

    Depth is that of the expanded term: v costs 4 levels and ^ costs 6.
    """
    leaves = [ZERO, ONE] + [Var(g) for g in generators]
    if max_depth <= 0 or rng.random() < 0.2:
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.3:
        return Neg(random_term(rng, generators, max_depth - 1))
    if r >= 0.85 and max_depth >= 6:
        return wedge(random_term(rng, generators, max_depth - 6), random_term(rng, generators, max_depth - 6))
    if r >= 0.7 and max_depth >= 4:
        return vee(random_term(rng, generators, max_depth - 4), random_term(rng, generators, max_depth - 4))
    return Oplus(random_term(rng, generators, max_depth - 1), random_term(rng, generators, max_depth - 1))


def _rewrite_once(rng, t: MVTerm) -> MVTerm:
    """Apply one MV law at a random position."""
    laws = [
        lambda u: Neg(Neg(u)),
        lambda u: Oplus(u, ZERO),
        lambda u: Oplus(u.right, u.left) if isinstance(u, Oplus) else u,
        lambda u: u.arg.arg if isinstance(u, Neg) and isinstance(u.arg, Neg) else u,
        lambda u: wedge(u, ONE),
        lambda u: vee(u, u),
        lambda u: vee(u, ZERO),
        lambda u: Oplus(Oplus(u.left.left, u.left.right), u.right) if isinstance(u, Oplus) and isinstance(u.left, Oplus) else u,
    ]

    def go(u):
        kids = []
        if isinstance(u, Oplus):
            kids = ["left", "right"]
        elif isinstance(u, Neg):
            kids = ["arg"]
        if kids and rng.random() < 0.6:
            k = rng.choice(kids)
            if k == "left":
                return Oplus(go(u.left), u.right)
            if k == "right":
                return Oplus(u.left, go(u.right))
            return Neg(go(u.arg))
        return rng.choice(laws)(u)

    return go(t)


def random_term_pair(rng, generators: Sequence[str], max_depth: int = 6) -> tuple[MVTerm, MVTerm]:
    """Half the time an unrelated pair, otherwise a term and a law-preserving rewrite of it."""
    if rng.random() < 0.5:
        return random_term(rng, generators, max_depth), random_term(rng, generators, max_depth)
    # leave room for the rewrites; a rewrite that overshoots the depth is dropped
    s = random_term(rng, generators, max(0, max_depth - 3))
    t = s
    for _ in range(rng.randint(1, 3)):
        u = _rewrite_once(rng, t)
        if depth(u) <= max_depth:
            t = u
    return s, t


def oracle_agreement(n_pairs: int = 500, max_depth: int = 6, seed: int = 0, K: int = CHAIN_BOUND,
                     D: int = GRID_BOUND) -> Verdict:
    """Chain and grid equality oracles on random term pairs over one and two generators."""
    import random
    rng = random.Random(seed)
    algebras = [FreeMV(("x",), K, D), FreeMV(("x", "y"), K, D)]
    eq = 0
    for n in range(n_pairs):
        F = algebras[n % 2]
        s, t = random_term_pair(rng, F.generators, max_depth)
        a, b = F.chain_equal(s, t), F.grid_equal(s, t)
        if a != b:
            return failed("oracle-agreement", "disagree", pair=n, s=show(s), t=show(t), chain=a, grid=b)
        eq += a
    return passed("oracle-agreement", False, bound=K, detail=f"{n_pairs} pairs, {eq} equal")
