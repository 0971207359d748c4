"""MV terms over a finite set of variable names.

Only ``Zero``, ``One``, ``Var``, ``Oplus`` and ``Neg`` are primitive; the
lattice operations and the product are expanded by their usual definitions,
so every evaluator only has to know two operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, TypeVar

from .errors import InvalidInput

T = TypeVar("T")


class MVTerm:
    __slots__ = ()

    def __add__(self, other: "MVTerm") -> "MVTerm":
        return Oplus(self, other)

    def __invert__(self) -> "MVTerm":
        return Neg(self)

    def __or__(self, other: "MVTerm") -> "MVTerm":
        return vee(self, other)

    def __and__(self, other: "MVTerm") -> "MVTerm":
        return wedge(self, other)

    def __mul__(self, other: "MVTerm") -> "MVTerm":
        return odot(self, other)


@dataclass(frozen=True, repr=False)
class Zero(MVTerm):
    def __repr__(self):
        return "0"


@dataclass(frozen=True, repr=False)
class One(MVTerm):
    def __repr__(self):
        return "1"


@dataclass(frozen=True, repr=False)
class Var(MVTerm):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Oplus(MVTerm):
    left: MVTerm
    right: MVTerm

    def __repr__(self):
        return f"({self.left!r} + {self.right!r})"


@dataclass(frozen=True, repr=False)
class Neg(MVTerm):
    arg: MVTerm

    def __repr__(self):
        return f"~{self.arg!r}"


ZERO = Zero()
ONE = One()


def vee(t: MVTerm, s: MVTerm) -> MVTerm:
    # x v y = (x' + y)' + y
    return Oplus(Neg(Oplus(Neg(t), s)), s)


def wedge(t: MVTerm, s: MVTerm) -> MVTerm:
    return Neg(vee(Neg(t), Neg(s)))


def odot(t: MVTerm, s: MVTerm) -> MVTerm:
    return Neg(Oplus(Neg(t), Neg(s)))


def variables(t: MVTerm) -> frozenset[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, Oplus):
            stack += [u.left, u.right]
        elif isinstance(u, Neg):
            stack.append(u.arg)
    return frozenset(out)


def depth(t: MVTerm) -> int:
    if isinstance(t, Oplus):
        return 1 + max(depth(t.left), depth(t.right))
    if isinstance(t, Neg):
        return 1 + depth(t.arg)
    return 0


def fold(t: MVTerm, assign: Mapping[str, T], *, zero: T, one: T,
         oplus: Callable[[T, T], T], neg: Callable[[T], T]) -> T:
    """Evaluate ``t`` with the given interpretation of the primitives.

    Shared subterms are evaluated once (memo keyed by node identity).
    """
    memo: dict[int, T] = {}

    def go(u: MVTerm) -> T:
        k = id(u)
        if k in memo:
            return memo[k]
        if isinstance(u, Oplus):
            v = oplus(go(u.left), go(u.right))
        elif isinstance(u, Neg):
            v = neg(go(u.arg))
        elif isinstance(u, Var):
            try:
                v = assign[u.name]
            except KeyError:
                raise InvalidInput(f"unbound variable {u.name!r}") from None
        elif isinstance(u, Zero):
            v = zero
        elif isinstance(u, One):
            v = one
        else:
            raise InvalidInput(f"not an MV term: {u!r}")
        memo[k] = v
        return v

    return go(t)


def eval_term(t: MVTerm, assign: Mapping[str, int], M) -> int:
    """Evaluate ``t`` in the finite MV-algebra ``M`` (elements are indices)."""
    for name in variables(t):
        if name not in assign:
            raise InvalidInput(f"unbound variable {name!r}")
        if not 0 <= assign[name] < M.size:
            raise InvalidInput(f"value for {name!r} outside the carrier")
    o, n = M.oplus, M.neg
    return fold(t, assign, zero=M.zero, one=M.one,
                oplus=lambda a, b: o[a][b], neg=lambda a: n[a])


def substitute(t: MVTerm, mapping: Mapping[str, MVTerm]) -> MVTerm:
    return fold(t, {v: mapping.get(v, Var(v)) for v in variables(t)},
                zero=ZERO, one=ONE, oplus=Oplus, neg=Neg)


def parse_term(text: str) -> MVTerm:
    """Parse a small infix syntax: ``0 1 x + ~ & | *`` and parentheses.

    Precedence from loose to tight: ``|``, ``&``, ``+``, ``*``, prefix ``~``.
    """
    import re

    tokens = re.findall(r"[A-Za-z_][A-Za-z_0-9]*|[01]|[-+~&|*()]", text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise InvalidInput(f"cannot tokenize term {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(tok=None):
        nonlocal pos
        cur = peek()
        if cur is None or (tok is not None and cur != tok):
            raise InvalidInput(f"term {text!r}: expected {tok or 'a token'} at token {pos}")
        pos += 1
        return cur

    def binary(ops, sub):
        def parse():
            left = sub()
            while peek() in ops:
                op = take()
                left = ops[op](left, sub())
            return left
        return parse

    def atom():
        tok = peek()
        if tok in ("~", "-"):
            take()
            return Neg(atom())
        if tok == "(":
            take("(")
            t = expr()
            take(")")
            return t
        take()
        if tok == "0":
            return ZERO
        if tok == "1":
            return ONE
        if tok is not None and (tok[0].isalpha() or tok[0] == "_"):
            return Var(tok)
        raise InvalidInput(f"term {text!r}: unexpected {tok!r}")

    prod = binary({"*": odot}, atom)
    summ = binary({"+": Oplus}, prod)
    conj = binary({"&": wedge}, summ)
    expr = binary({"|": vee}, conj)
    t = expr()
    if pos != len(tokens):
        raise InvalidInput(f"term {text!r}: trailing input at token {pos}")
    return t


def show(t: MVTerm) -> str:
    """Render in the syntax accepted by :func:`parse_term`."""
    if isinstance(t, Oplus):
        return f"({show(t.left)} + {show(t.right)})"
    if isinstance(t, Neg):
        return f"~{show(t.arg)}"
    return repr(t)
