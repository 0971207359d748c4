"""Concrete EMV-algebras: explicit tables, finitely supported direct sums and finite sets."""
from __future__ import annotations

import functools
import itertools
from typing import Iterable, Mapping, Sequence

from ..errors import DomainError, InvalidInput
from ..mv import FiniteMVAlgebra
from .base import EMVAlgebra, lam_by_scan


class TableEMV(EMVAlgebra):
    """A finite EMV-algebra given by join, meet and oplus tables over ``0..n-1``."""

    kind = "table"

    def __init__(self, join, meet, oplus, zero: int, labels=None, origin=None):
        super().__init__()
        self.join_t = tuple(tuple(int(v) for v in r) for r in join)
        self.meet_t = tuple(tuple(int(v) for v in r) for r in meet)
        self.oplus_t = tuple(tuple(int(v) for v in r) for r in oplus)
        self.zero_ = int(zero)
        self.n = len(self.oplus_t)
        self.labels = tuple(labels) if labels is not None else None
        self.origin = origin
        for name, t in (("join", self.join_t), ("meet", self.meet_t), ("oplus", self.oplus_t)):
            if len(t) != self.n or any(len(r) != self.n for r in t):
                raise InvalidInput(f"{name} table is not {self.n}x{self.n}")
            if any(not 0 <= v < self.n for r in t for v in r):
                raise InvalidInput(f"{name} table entry out of range")
        if not 0 <= self.zero_ < self.n:
            raise InvalidInput("zero out of range")

    @classmethod
    def from_mv(cls, M: FiniteMVAlgebra) -> "TableEMV":
        return cls(M.join_table, M.meet_table, M.oplus, M.zero, M.labels, ("mv", M))

    def __repr__(self):
        tag = self.origin[1] if self.origin and self.origin[0] == "mv" else f"n={self.n}"
        return f"TableEMV<{tag}>"

    def __eq__(self, other):
        return (isinstance(other, TableEMV) and self.oplus_t == other.oplus_t
                and self.join_t == other.join_t and self.meet_t == other.meet_t
                and self.zero_ == other.zero_)

    def __hash__(self):
        return hash((self.oplus_t, self.zero_))

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n

    def join(self, x, y):
        return self.join_t[x][y]

    def meet(self, x, y):
        return self.meet_t[x][y]

    def oplus(self, x, y):
        return self.oplus_t[x][y]

    @property
    def zero(self):
        return self.zero_

    def elements(self, level=0):
        return list(range(self.n))

    def idempotents(self, level=0):
        return [x for x in range(self.n) if self.oplus_t[x][x] == x]

    def below(self, a):
        return [x for x in range(self.n) if self.join_t[x][a] == a]

    def dominating(self, x):
        ups = [b for b in self.idempotents() if self.leq(x, b)]
        if not ups:
            return None
        least = [b for b in ups if all(self.leq(b, c) for c in ups)]
        return least[0] if least else ups[0]

    def is_exhaustive(self, level=0):
        return True

    @property
    def has_top(self):
        return self._top is not None

    @property
    def top(self):
        if self._top is None:
            raise DomainError("table has no top element")
        return self._top

    @property
    def _top(self):
        for t in range(self.n):
            if all(self.join_t[x][t] == t for x in range(self.n)):
                return t
        return None

    def show(self, x):
        return self.labels[x] if self.labels and 0 <= x < len(self.labels) else str(x)

    def _lam(self, b, x):
        z = lam_by_scan(self, b, x)
        if z is None:
            raise DomainError(f"EMV3: lambda_{self.show(b)}({self.show(x)}) has no unique minimum")
        return z

    def to_mv(self) -> FiniteMVAlgebra:
        """The MV-algebra on the whole carrier (requires a top)."""
        t = self.top
        neg = [self.lam(t, x) for x in range(self.n)]
        return FiniteMVAlgebra(self.oplus_t, neg, self.zero_, t, self.labels)


class FinSuppVector(tuple):
    """Finitely supported vector as sorted ``(index, value)`` pairs with no zero entries."""

    __slots__ = ()

    def get(self, i: int, default: int = 0) -> int:
        for j, v in self:
            if j == i:
                return v
        return default

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self)

    def as_dict(self) -> dict[int, int]:
        return dict(self)

    def __repr__(self):
        return "{" + ", ".join(f"{i}: {v}" for i, v in self) + "}"


class DirectSumEMV(EMVAlgebra):
    """Finitely supported elements of a product of finite MV-algebras.

    The factor at coordinate ``i`` is ``pattern[i % len(pattern)]`` when
    ``repeat`` is set (an infinite, topless algebra) and ``pattern[i]``
    otherwise (a finite product).
    """

    kind = "direct_sum"

    def __init__(self, pattern: Sequence[FiniteMVAlgebra], repeat: bool = True):
        super().__init__()
        self.pattern = tuple(pattern)
        self.repeat = bool(repeat)
        if not self.pattern:
            raise InvalidInput("direct sum needs a nonempty factor pattern")
        if any(F.size < 2 for F in self.pattern):
            raise InvalidInput("direct-sum factors must have at least two elements")

    def __repr__(self):
        names = ",".join(f"{F.origin[0]}{F.origin[1]}" if F.origin and F.origin[0] in ("chain", "boolean")
                         else f"n{F.size}" for F in self.pattern)
        return f"DirectSumEMV<[{names}]{'*' if self.repeat else ''}>"

    def __eq__(self, other):
        return isinstance(other, DirectSumEMV) and (self.pattern, self.repeat) == (other.pattern, other.repeat)

    def __hash__(self):
        return hash((self.pattern, self.repeat))

    def factor(self, i: int) -> FiniteMVAlgebra:
        if self.repeat:
            return self.pattern[i % len(self.pattern)]
        if 0 <= i < len(self.pattern):
            return self.pattern[i]
        raise DomainError(f"coordinate {i} outside the finite direct sum")

    def coords(self, level: int) -> range:
        return range(level) if self.repeat else range(min(level, len(self.pattern)))

    def vec(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> FinSuppVector:
        items = entries.items() if isinstance(entries, Mapping) else entries
        out = {}
        for i, v in items:
            i, v = int(i), int(v)
            if i < 0:
                raise InvalidInput(f"negative coordinate {i}")
            if not self.repeat and i >= len(self.pattern):
                raise InvalidInput(f"coordinate {i} outside the finite direct sum")
            F = self.factor(i)
            if not 0 <= v < F.size:
                raise InvalidInput(f"value {v} out of range at coordinate {i}")
            if v != F.zero:
                out[i] = v
        return FinSuppVector(sorted(out.items()))

    def unit(self, i: int, value: int | None = None) -> FinSuppVector:
        """``e_i``: the top of factor ``i`` (or ``value``) at coordinate ``i``."""
        F = self.factor(i)
        return self.vec({i: F.one if value is None else value})

    def indicator(self, idx: Iterable[int]) -> FinSuppVector:
        return self.vec({i: self.factor(i).one for i in idx})

    def contains(self, x) -> bool:
        if not isinstance(x, FinSuppVector):
            return False
        try:
            return self.vec(x) == x
        except (InvalidInput, DomainError):
            return False

    def _combine(self, x, y, op) -> FinSuppVector:
        dx, dy = dict(x), dict(y)
        out = []
        for i in sorted(dx.keys() | dy.keys()):
            F = self.factor(i)
            v = op(F, dx.get(i, F.zero), dy.get(i, F.zero))
            if v != F.zero:
                out.append((i, v))
        return FinSuppVector(out)

    def join(self, x, y):
        return self._combine(x, y, lambda F, a, b: F.join(a, b))

    def meet(self, x, y):
        return self._combine(x, y, lambda F, a, b: F.meet(a, b))

    def oplus(self, x, y):
        return self._combine(x, y, lambda F, a, b: F.oplus[a][b])

    @property
    def zero(self):
        return FinSuppVector()

    def leq(self, x, y):
        dy = dict(y)
        return all(self.factor(i).leq(v, dy.get(i, self.factor(i).zero)) for i, v in x)

    def is_idempotent(self, x):
        return all(self.factor(i).oplus[v][v] == v for i, v in x)

    def dominating(self, x):
        return FinSuppVector((i, self.factor(i).one) for i, _ in x)

    def _vectors(self, choices: list[tuple[int, Sequence[int]]]) -> list[FinSuppVector]:
        out = []
        for combo in itertools.product(*(vals for _, vals in choices)):
            out.append(FinSuppVector((i, v) for (i, _), v in zip(choices, combo)
                                     if v != self.factor(i).zero))
        return sorted(out)

    def elements(self, level):
        return self._vectors([(i, self.factor(i).elements) for i in self.coords(level)])

    def idempotents(self, level):
        return self._vectors([(i, self.factor(i).idempotents) for i in self.coords(level)])

    def below(self, a):
        memo = self.__dict__.setdefault("_below_memo", {})
        if a not in memo:
            choices = []
            for i, av in a:
                F = self.factor(i)
                choices.append((i, [v for v in F.elements if F.leq(v, av)]))
            memo[a] = self._vectors(choices)
        return list(memo[a])

    def _lam(self, b, x):
        dx = dict(x)
        out = []
        for i, bv in b:
            F = self.factor(i)
            v = F.meet(bv, F.neg[dx.get(i, F.zero)])
            if v != F.zero:
                out.append((i, v))
        return FinSuppVector(out)

    def level_of(self, x):
        return x[-1][0] + 1 if x else 0

    def is_exhaustive(self, level):
        return not self.repeat and level >= len(self.pattern)

    @property
    def has_top(self):
        return not self.repeat

    @property
    def top(self):
        if self.repeat:
            raise DomainError(f"{self!r} has no top element")
        return self.indicator(range(len(self.pattern)))

    def show(self, x):
        return "{" + ", ".join(f"{i}: {self.factor(i).label(v)}" for i, v in x) + "}"


@functools.lru_cache(maxsize=256)
def _finset_subsets(base: tuple) -> tuple:
    out = [frozenset(c) for r in range(len(base) + 1) for c in itertools.combinations(base, r)]
    return tuple(sorted(out, key=lambda x: (max(x, default=0), tuple(sorted(x)))))


class FinSetBooleanEMV(EMVAlgebra):
    """Finite subsets of {1, 2, ...}: a generalized Boolean algebra without top."""

    kind = "finset_boolean"

    def __repr__(self):
        return "FinSetBooleanEMV"

    def __eq__(self, other):
        return isinstance(other, FinSetBooleanEMV)

    def __hash__(self):
        return hash("finset_boolean")

    @staticmethod
    def A(i: int) -> frozenset:
        """``A_i = {1, ..., i}``."""
        return frozenset(range(1, i + 1))

    @staticmethod
    def set(xs: Iterable[int]) -> frozenset:
        s = frozenset(int(v) for v in xs)
        if any(v < 1 for v in s):
            raise InvalidInput("finite-set elements must be positive integers")
        return s

    def contains(self, x) -> bool:
        return isinstance(x, frozenset) and all(isinstance(v, int) and v >= 1 for v in x)

    def join(self, x, y):
        return x | y

    def meet(self, x, y):
        return x & y

    def oplus(self, x, y):
        return x | y

    @property
    def zero(self):
        return frozenset()

    def leq(self, x, y):
        return x <= y

    def is_idempotent(self, x):
        return True

    def dominating(self, x):
        return x

    def key(self, x):
        return (max(x, default=0), tuple(sorted(x)))

    def _subsets(self, base) -> list[frozenset]:
        return list(_finset_subsets(tuple(sorted(base))))

    def elements(self, level):
        return self._subsets(range(1, level + 1))

    def idempotents(self, level):
        return self.elements(level)

    def below(self, a):
        return self._subsets(a)

    def _lam(self, b, x):
        return b - x

    def level_of(self, x):
        return max(x, default=0)

    def show(self, x):
        return "{" + ",".join(str(v) for v in sorted(x)) + "}"
