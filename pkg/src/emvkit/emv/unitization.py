"""Unitization of a direct sum: eventually-0 and eventually-1 sequences.

``Low(v)`` is the finitely supported vector ``v`` itself; ``High(v)`` is the
sequence whose coordinate ``i`` is the negation of ``v_i`` (so it is 1 almost
everywhere).  Together they form an MV-algebra in which the original direct
sum sits as the maximal ideal of Low elements.
"""
from __future__ import annotations

import itertools
from typing import Callable, NamedTuple

from ..errors import InvalidInput, Unsupported
from ..mv import FiniteMVAlgebra, mk_chain
from .backends import DirectSumEMV, FinSuppVector
from .base import EMVAlgebra

# the {0, 1} part shared by every factor; used to compute the tail
_TAIL = mk_chain(2)


class UElem(NamedTuple):
    high: bool
    vec: FinSuppVector

    def __repr__(self):
        return f"{'High' if self.high else 'Low'}({self.vec!r})"


def Low(v) -> UElem:
    return UElem(False, FinSuppVector(v))


def High(v) -> UElem:
    return UElem(True, FinSuppVector(v))


class UnitizedMV(EMVAlgebra):
    kind = "unitized"

    def __init__(self, base: DirectSumEMV):
        super().__init__()
        if not isinstance(base, DirectSumEMV):
            raise InvalidInput("unitize needs a direct-sum algebra")
        self.base = base

    def __repr__(self):
        return f"UnitizedMV<{self.base!r}>"

    def __eq__(self, other):
        return isinstance(other, UnitizedMV) and self.base == other.base

    def __hash__(self):
        return hash(("unitized", self.base))

    def contains(self, x) -> bool:
        return isinstance(x, UElem) and self.base.contains(x.vec)

    def value(self, x: UElem, i: int) -> int:
        F = self.base.factor(i)
        v = x.vec.get(i, F.zero)
        return F.neg[v] if x.high else v

    def _lift(self, op: Callable, *args: UElem) -> UElem:
        support = sorted(set().union(*(a.vec.support for a in args)))
        tail = op(_TAIL, *(1 if a.high else 0 for a in args))
        out = []
        for i in support:
            F = self.base.factor(i)
            v = op(F, *(self.value(a, i) for a in args))
            stored = F.neg[v] if tail else v
            if stored != F.zero:
                out.append((i, stored))
        return UElem(bool(tail), FinSuppVector(out))

    def oplus(self, x, y):
        return self._lift(lambda F, a, b: F.oplus[a][b], x, y)

    def neg(self, x):
        return UElem(not x.high, x.vec)

    def join(self, x, y):
        return self._lift(lambda F, a, b: F.join(a, b), x, y)

    def meet(self, x, y):
        return self._lift(lambda F, a, b: F.meet(a, b), x, y)

    @property
    def zero(self):
        return Low(())

    @property
    def has_top(self):
        return True

    @property
    def top(self):
        return High(())

    def leq(self, x, y):
        return self.oplus(self.neg(x), y) == self.top

    def dominating(self, x):
        return self._lift(lambda F, a: F.cover(a), x)

    def _lam(self, b, x):
        return self.meet(b, self.neg(x))

    def elements(self, level):
        coords = list(self.base.coords(level))
        out = []
        for high in (False, True):
            for combo in itertools.product(*(self.base.factor(i).elements for i in coords)):
                vec = FinSuppVector((i, v) for i, v in zip(coords, combo) if v != self.base.factor(i).zero)
                out.append(UElem(high, vec))
        return self.sort(out)

    def idempotents(self, level):
        return [x for x in self.elements(level) if self.is_idempotent(x)]

    def below(self, a):
        if a.high:
            raise Unsupported("intervals below a High element are infinite")
        return [Low(v) for v in self.base.below(self.base.dominating(a.vec))
                if self.base.leq(v, a.vec)]

    def finite_intervals(self) -> bool:
        return False

    def level_of(self, x):
        return self.base.level_of(x.vec)

    def show(self, x):
        return f"{'High' if x.high else 'Low'}{self.base.show(x.vec)}"

    def embed(self, v: FinSuppVector) -> UElem:
        """The embedding of the direct sum as the Low part."""
        return Low(v)

    def slice_mv(self, k: int) -> tuple[FiniteMVAlgebra, list[UElem]]:
        """Elements with support inside ``range(k)`` as a finite MV-algebra."""
        elems = self.elements(k)
        index = {e: i for i, e in enumerate(elems)}
        oplus = [[index[self.oplus(x, y)] for y in elems] for x in elems]
        neg = [index[self.neg(x)] for x in elems]
        labels = tuple(self.show(e) for e in elems)
        mv = FiniteMVAlgebra(oplus, neg, index[self.zero], index[self.top], labels, ("unitized-slice", k))
        return mv, elems


def unitize(M: DirectSumEMV) -> tuple[UnitizedMV, Callable[[FinSuppVector], UElem]]:
    N = UnitizedMV(M)
    return N, N.embed
