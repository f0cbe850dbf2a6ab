"""Combinatorics of monomial ideals.

Everything here is exact integer arithmetic on exponent tuples.  Extended
naturals (a value or infinity) are represented with ``math.inf``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .poly import GREVLEX, Monomial, mono_divides

INF = math.inf


class RecursionDepthError(RuntimeError):
    pass


def canonical_key(m: Monomial) -> tuple[int, ...]:
    """Ascending degree, then descending grevlex within a degree."""
    return (sum(m),) + tuple(reversed(m))


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # sorting by degree first means a divisor is always seen before its multiples
    out: list[Monomial] = []
    for m in sorted(set(map(tuple, gens)), key=canonical_key):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    gens: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        for g in self.gens:
            if len(g) != self.nvars:
                raise ValueError(f"generator {g} not in a ring of dimension {self.nvars}")
        object.__setattr__(self, "gens", _minimal(self.gens))

    @classmethod
    def zero(cls, d: int) -> MonomialIdeal:
        return cls(d, ())

    @classmethod
    def maximal(cls, d: int) -> MonomialIdeal:
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.nvars != self.nvars:
            raise ValueError("dimension mismatch")
        return MonomialIdeal(self.nvars, self.gens + other.gens)

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def min_degree(self) -> int:
        return min((sum(g) for g in self.gens), default=0)

    def degree_part(self, t: int) -> set[Monomial]:
        """Monomials of degree ``t`` lying in the ideal."""
        from .poly import monomials_of_degree

        return {m for m in monomials_of_degree(self.nvars, t) if m in self}

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series(self)

    def hilbert_function(self, t: int) -> int:
        return hilbert_series(self).value(t)

    def format(self, names: Sequence[str] | None = None) -> str:
        from .poly import format_monomial

        if names is None:
            names = [f"x{i}" for i in range(1, self.nvars + 1)]
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, names) for g in self.gens) + ")"

    def __str__(self) -> str:
        return self.format()


def minimalize(gens: Iterable[Monomial], nvars: int | None = None) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required for an empty generator list")
        nvars = len(gens[0])
    return MonomialIdeal(nvars, tuple(gens))


def colon_by_variable(J: MonomialIdeal, i: int) -> MonomialIdeal:
    """``(J : x_i)`` for a 1-based variable index ``i``."""
    if not 1 <= i <= J.nvars:
        raise ValueError(f"variable index {i} out of range")
    k = i - 1
    gens = [g[:k] + (g[k] - 1,) + g[k + 1:] if g[k] else g for g in J.gens]
    return MonomialIdeal(J.nvars, tuple(gens))


def adjoin_trailing_variables(J: MonomialIdeal, i: int) -> MonomialIdeal:
    """``J + (x_{i+1}, ..., x_d)``."""
    d = J.nvars
    if not 0 <= i <= d:
        raise ValueError(f"index {i} out of range")
    extra = tuple(tuple(int(j == k) for j in range(d)) for k in range(i, d))
    return MonomialIdeal(d, J.gens + extra)


# --- Hilbert series ----------------------------------------------------------


def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _shift(a: list[int], k: int) -> list[int]:
    if a == [0]:
        return a
    return [0] * k + a


@lru_cache(maxsize=65536)
def _numerator(gens: tuple[Monomial, ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    counts: Counter = Counter()
    for g in gens:
        for k, e in enumerate(g):
            if e:
                counts[k] += 1
    var, most = counts.most_common(1)[0]
    if most == 1:
        # supports pairwise disjoint: a complete intersection of monomials
        num = [1]
        for g in gens:
            num = _pmul(num, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(num)
    d = len(gens[0])
    x = tuple(int(k == var) for k in range(d))
    plus = _minimal([g for g in gens if not g[var]] + [x])
    colon = _minimal([g[:var] + (g[var] - 1,) + g[var + 1:] if g[var] else g for g in gens])
    a = list(_numerator(plus))
    b = list(_numerator(colon))
    return tuple(_padd(a, _shift(b, 1)))


@dataclass(frozen=True)
class HilbertSeries:
    """The series ``numerator(t) / (1 - t)^nvars`` of ``R/J``."""

    numerator: tuple[int, ...]
    nvars: int

    def value(self, t: int) -> int:
        """Coefficient of ``t^k`` in the expansion, i.e. ``H(R/J)(t)``."""
        if t < 0:
            return 0
        d = self.nvars
        total = 0
        for k, c in enumerate(self.numerator):
            if c and k <= t:
                total += c * (comb(t - k + d - 1, d - 1) if d else int(t == k))
        return total

    def values(self, t_max: int) -> list[int]:
        return [self.value(t) for t in range(t_max + 1)]

    def reduced(self) -> tuple[tuple[int, ...], int]:
        """Cancel common factors of ``1 - t``: returns ``(h, dim)`` with series ``h / (1-t)^dim``."""
        num = list(self.numerator)
        dim = self.nvars
        while dim > 0 and any(num) and sum(num) == 0:
            num = _divide_one_minus_t(num)
            dim -= 1
        return tuple(num), dim

    @property
    def krull_dimension(self) -> int:
        if not any(self.numerator):
            return -1
        return self.reduced()[1]


def _divide_one_minus_t(num: Sequence[int]) -> list[int]:
    # synthetic division of num by (1 - t); caller guarantees exactness
    q = []
    acc = 0
    for c in num[:-1]:
        acc += c
        q.append(acc)
    if acc + num[-1] != 0:
        raise ArithmeticError("not divisible by 1 - t")
    return q or [0]


def divide_by_one_minus_t_power(num: Sequence[int], k: int) -> list[int] | None:
    """Exact quotient of ``num`` by ``(1 - t)^k``, or None when it does not divide."""
    out = list(num)
    for _ in range(k):
        if not any(out):
            return [0]
        if sum(out) != 0:
            return None
        out = _divide_one_minus_t(out)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def hilbert_series(J: MonomialIdeal) -> HilbertSeries:
    try:
        num = list(_numerator(J.gens))
    except RecursionError:
        raise RecursionDepthError("Hilbert series recursion too deep") from None
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertSeries(tuple(num), J.nvars)


# --- invariants of monomial ideals -------------------------------------------


def partial_degree(m: Monomial, i: int) -> int:
    """Sum of the exponents of ``x_1, ..., x_i``."""
    return sum(m[:i])


def partial_degree_bound(J: MonomialIdeal, i: int) -> int:
    """Largest ``i``-th partial degree of a minimal generator."""
    if not 1 <= i <= J.nvars:
        raise ValueError(f"index {i} out of range")
    if J.is_zero():
        raise ValueError("partial degree bound of the zero ideal")
    return max(partial_degree(g, i) for g in J.gens)


def pure_power_degree(J: MonomialIdeal, i: int) -> int | float:
    """Least ``j`` with ``x_i^j`` in ``J``; ``inf`` when no power of ``x_i`` lies in ``J``."""
    if not 1 <= i <= J.nvars:
        raise ValueError(f"index {i} out of range")
    k = i - 1
    best = INF
    for g in J.gens:
        if all(e == 0 for j, e in enumerate(g) if j != k):
            best = min(best, g[k])
    return best


def stable_height(J: MonomialIdeal) -> int:
    """Number of variables with a pure power in ``J``; these must be ``x_1, ..., x_c``."""
    finite = [i for i in range(1, J.nvars + 1) if pure_power_degree(J, i) != INF]
    c = len(finite)
    if finite != list(range(1, c + 1)):
        raise ValueError(f"pure powers at non-contiguous indices {finite}; ideal is not Borel-fixed")
    return c


def max_index(m: Monomial) -> int:
    """Largest 1-based index of a variable dividing ``m`` (0 for the unit monomial)."""
    for k in range(len(m) - 1, -1, -1):
        if m[k]:
            return k + 1
    return 0


def is_strongly_stable(J: MonomialIdeal) -> bool:
    for u in J.gens:
        for j in range(len(u)):
            if not u[j]:
                continue
            for i in range(j):
                v = list(u)
                v[j] -= 1
                v[i] += 1
                if tuple(v) not in J:
                    return False
    return True


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers: ``table[(i, j)] = beta_{i, i+j}(R/J)``."""

    nvars: int
    table: dict

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.table.get(key, 0)

    def row(self, j: int) -> list[int]:
        return [self[(i, j)] for i in range(self.nvars + 1)]

    @property
    def max_twist(self) -> int:
        return max((j for (_, j), v in self.table.items() if v), default=0)

    def regularity(self) -> int:
        """Regularity of ``R/J``."""
        return self.max_twist

    def euler_numerator(self) -> list[int]:
        """``sum (-1)^i beta_{i,i+j} t^{i+j}``, which must equal the Hilbert numerator."""
        size = max((i + j for (i, j) in self.table), default=0) + 1
        out = [0] * size
        for (i, j), v in self.table.items():
            out[i + j] += (-1) ** i * v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out


def ek_betti(J: MonomialIdeal) -> BettiTable:
    """Betti numbers of ``R/J`` from the Eliahou-Kervaire resolution."""
    if not is_strongly_stable(J):
        raise ValueError("Eliahou-Kervaire formula needs a strongly stable ideal")
    table: dict = {(0, 0): 1}
    if J.is_unit():
        return BettiTable(J.nvars, {})
    for u in J.gens:
        j = sum(u) - 1
        mx = max_index(u)
        for i in range(1, mx + 1):
            table[(i, j)] = table.get((i, j), 0) + comb(mx - 1, i - 1)
    return BettiTable(J.nvars, {k: v for k, v in table.items() if v})


def grevlex_sorted(ms: Iterable[Monomial]) -> list[Monomial]:
    return sorted(ms, key=GREVLEX.key, reverse=True)
