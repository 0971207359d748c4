"""The abstract EMV-algebra interface and interval extraction."""
from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Iterable

from ..errors import DomainError, Unsupported
from ..mv import FiniteMVAlgebra


class EMVAlgebra(ABC):
    """Operations every backend provides.

    Elements are plain hashable values chosen by the backend.  ``level`` is
    the enumeration bound: finite backends ignore it, infinite ones return
    the elements whose support lies in the first ``level`` coordinates.
    """

    kind = "emv"

    def __init__(self):
        self._interval_cache: dict[Hashable, "Interval"] = {}
        self._interval_lock = threading.Lock()

    @abstractmethod
    def join(self, x, y): ...

    @abstractmethod
    def meet(self, x, y): ...

    @abstractmethod
    def oplus(self, x, y): ...

    @property
    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def elements(self, level: int) -> list: ...

    @abstractmethod
    def below(self, a) -> list:
        """All elements of ``[0, a]`` for an idempotent ``a`` (a finite set)."""

    @abstractmethod
    def dominating(self, x):
        """An idempotent above ``x`` (the backend's canonical choice), or None."""

    def idempotents(self, level: int) -> list:
        return [x for x in self.elements(level) if self.is_idempotent(x)]

    def contains(self, x) -> bool:
        return True

    def leq(self, x, y) -> bool:
        return self.join(x, y) == y

    def is_idempotent(self, x) -> bool:
        return self.oplus(x, x) == x

    def key(self, x):
        return x

    def sort(self, xs: Iterable) -> list:
        return sorted(xs, key=self.key)

    def level_of(self, x) -> int:
        return 0

    def is_exhaustive(self, level: int) -> bool:
        return False

    @property
    def has_top(self) -> bool:
        return False

    @property
    def top(self):
        raise DomainError(f"{self!r} has no top element")

    def show(self, x) -> str:
        return repr(x)

    def lam(self, b, x):
        """lambda_b(x): the least z <= b with x + z = b."""
        if not self.is_idempotent(b):
            raise DomainError(f"lambda: {self.show(b)} is not idempotent")
        if not self.leq(x, b):
            raise DomainError(f"lambda: {self.show(x)} is not below {self.show(b)}")
        return self._lam(b, x)

    def _lam(self, b, x):
        z = lam_by_scan(self, b, x)
        if z is None:
            raise DomainError(f"lambda_{self.show(b)}({self.show(x)}) has no unique minimum")
        return z

    def finite_intervals(self) -> bool:
        return True


def lam_by_scan(M: EMVAlgebra, b, x):
    """Minimum of {z in [0,b] : x + z = b} by brute force, or None if absent or not unique."""
    cands = [z for z in M.below(b) if M.oplus(x, z) == b]
    least = [z for z in cands if all(M.leq(z, w) for w in cands)]
    return least[0] if len(least) == 1 else None


@dataclass(frozen=True, eq=False)
class Interval:
    """``[0, a]`` as an explicit finite MV-algebra with translations both ways."""
    algebra: EMVAlgebra
    top: Any
    mv: FiniteMVAlgebra
    elems: tuple
    index: dict

    def to_local(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise DomainError(f"{self.algebra.show(x)} is not below {self.algebra.show(self.top)}") from None

    def to_ambient(self, i: int):
        return self.elems[i]

    def __contains__(self, x) -> bool:
        return x in self.index

    def __len__(self) -> int:
        return len(self.elems)


def interval_mv(M: EMVAlgebra, a) -> Interval:
    """The MV-algebra ``([0,a]; +, lambda_a, 0, a)`` as a table; cached per algebra."""
    cache = M._interval_cache
    if a in cache:
        return cache[a]
    if not M.is_idempotent(a):
        raise DomainError(f"interval_mv: {M.show(a)} is not idempotent")
    if not M.finite_intervals():
        raise Unsupported(f"intervals of {M!r} are infinite")
    elems = tuple(M.sort(M.below(a)))
    index = {x: i for i, x in enumerate(elems)}
    oplus = []
    for x in elems:
        row = []
        for y in elems:
            s = M.oplus(x, y)
            if s not in index:
                raise DomainError(f"{M.show(x)} + {M.show(y)} leaves [0, {M.show(a)}]")
            row.append(index[s])
        oplus.append(row)
    neg = [index[M.lam(a, x)] for x in elems]
    labels = tuple(M.show(x) for x in elems)
    mv = FiniteMVAlgebra(oplus, neg, index[M.zero], index[a], labels, ("interval", a))
    iv = Interval(M, a, mv, elems, index)
    with M._interval_lock:
        cache.setdefault(a, iv)
    return cache[a]
