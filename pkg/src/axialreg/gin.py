"""Reverse-lexicographic generic initial ideals by random changes of coordinates.

Genericity is certified Monte Carlo style: independent random changes must
produce the same initial ideal, and that ideal must be Borel-fixed.
"""

from __future__ import annotations

import logging
import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import buchberger
from .monideal import MonomialIdeal, is_strongly_stable
from .poly import GREVLEX, FieldSpec, Ideal, LinearChange, Polynomial, apply_change, determinant

log = logging.getLogger(__name__)

DEFAULT_BOUND = 10**4
MAX_ESCALATIONS = 3
MAX_DRAWS = 100


class GinError(RuntimeError):
    pass


class SmallFieldWarning(UserWarning):
    pass


def random_change(d: int, field: FieldSpec, seed: int, bound: int = DEFAULT_BOUND) -> LinearChange:
    """A random invertible ``d x d`` matrix, deterministic in ``seed``.

    Over Q entries are uniform in ``{-bound, ..., bound} \\ {0}``; over F_p they
    are uniform in F_p.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rng = random.Random(seed)
    p = field.characteristic
    for _ in range(MAX_DRAWS):
        if p:
            rows = [[rng.randrange(p) for _ in range(d)] for _ in range(d)]
        else:
            rows = [[rng.choice((-1, 1)) * rng.randint(1, bound) for _ in range(d)] for _ in range(d)]
        if determinant(rows, field):
            return LinearChange(tuple(map(tuple, rows)), field, seed)
    raise GinError(f"no invertible matrix after {MAX_DRAWS} draws")


def _binomial_nonzero_mod_p(a: int, t: int, p: int) -> bool:
    # Lucas: C(a, t) != 0 mod p iff every base-p digit of t is at most that of a
    while t:
        if t % p > a % p:
            return False
        a //= p
        t //= p
    return True


def is_borel_fixed(J: MonomialIdeal, field: FieldSpec) -> bool:
    """Whether ``J`` is fixed by upper triangular changes of coordinates."""
    p = field.characteristic
    if p == 0:
        return is_strongly_stable(J)
    for u in J.gens:
        for j in range(len(u)):
            a = u[j]
            if not a:
                continue
            for i in range(j):
                for t in range(1, a + 1):
                    if not _binomial_nonzero_mod_p(a, t, p):
                        continue
                    v = list(u)
                    v[j] -= t
                    v[i] += t
                    if tuple(v) not in J:
                        return False
    return True


@dataclass(frozen=True)
class Trial:
    seed: int
    change: LinearChange
    initial: MonomialIdeal
    agrees: bool


@dataclass(frozen=True)
class GinResult:
    ideal: MonomialIdeal
    trials: tuple[Trial, ...]
    certified: bool
    borel_fixed: bool
    strongly_stable: bool
    bound: int
    small_field: bool = False
    diagnostics: tuple[str, ...] = field(default=())

    def certified_changes(self) -> list[LinearChange]:
        return [t.change for t in self.trials if t.agrees]

    def to_json(self) -> dict:
        return {
            "ideal": [list(g) for g in self.ideal.gens],
            "certified": self.certified,
            "borel_fixed": self.borel_fixed,
            "strongly_stable": self.strongly_stable,
            "bound": self.bound,
            "small_field": self.small_field,
            "seeds": [t.seed for t in self.trials],
            "agreement": [t.agrees for t in self.trials],
            "diagnostics": list(self.diagnostics),
        }


def trial_seed(seed: int, k: int) -> int:
    """Seed of the ``k``-th independent draw derived from a base seed."""
    return random.Random(f"{seed}:{k}").getrandbits(63)


def initial_after_change(ideal: Ideal, change: LinearChange, degree_cap: int | None = None) -> MonomialIdeal:
    moved = [apply_change(g, change) for g in ideal.gens]
    return buchberger(moved, GREVLEX, degree_cap=degree_cap, ring=ideal.ring).initial


def gin_rev(
    ideal: Ideal | Sequence[Polynomial],
    seed: int = 0,
    trials: int = 2,
    bound: int = DEFAULT_BOUND,
) -> GinResult:
    """Generic initial ideal in grevlex, certified by agreement of ``trials`` random draws."""
    if trials < 2:
        raise ValueError("at least two trials are needed for certification")
    if not isinstance(ideal, Ideal):
        gens = tuple(ideal)
        if not gens:
            raise ValueError("ring unknown for an empty generator list; pass an Ideal")
        ideal = Ideal(gens[0].ring, gens)
    F = ideal.field
    d = ideal.nvars
    diagnostics: list[str] = []
    small = F.is_small
    if small:
        msg = f"field {F} is small; genericity of random changes is unreliable"
        warnings.warn(msg, SmallFieldWarning, stacklevel=2)
        diagnostics.append("small-field")

    if not ideal.gens:
        zero = MonomialIdeal.zero(d)
        return GinResult(zero, (), True, True, True, bound, small, tuple(diagnostics))

    current_bound = bound
    attempt = 0
    results: list[Trial] = []
    for escalation in range(MAX_ESCALATIONS + 1):
        results = []
        for k in range(trials):
            s = trial_seed(seed, attempt)
            attempt += 1
            change = random_change(d, F, s, current_bound)
            results.append(Trial(s, change, initial_after_change(ideal, change), False))
        counts = Counter(t.initial for t in results)
        common, n = counts.most_common(1)[0]
        results = [Trial(t.seed, t.change, t.initial, t.initial == common) for t in results]
        if n == trials:
            break
        diagnostics.append(f"draws disagree at bound {current_bound}; escalating")
        log.info("gin draws disagree at bound %d (attempt %d)", current_bound, escalation)
        if F.characteristic == 0:
            current_bound *= 2
    else:
        diagnostics.append("draws never agreed; result is the most frequent initial ideal")

    agree = all(t.agrees for t in results)
    borel = is_borel_fixed(common, F)
    strong = is_strongly_stable(common)
    if not borel:
        diagnostics.append("common initial ideal is not Borel-fixed")
    certified = agree and borel
    if certified and F.characteristic == 0 and not strong:
        raise GinError("internal error: certified gin in characteristic 0 is not strongly stable")
    return GinResult(common, tuple(results), certified, borel, strong, current_bound, small, tuple(diagnostics))
