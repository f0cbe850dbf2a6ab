"""Axial constants, sectional regularity, generic annihilator numbers and friends.

All invariants are read off the revlex generic initial ideal ``gin`` of ``I``.
Extended naturals use ``math.inf``; every regularity reported here is the
regularity of an ideal, i.e. ``reg(R/I) + 1``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .gin import DEFAULT_BOUND, GinResult, gin_rev, is_borel_fixed, random_change
from .groebner import buchberger
from .monideal import (
    INF,
    MonomialIdeal,
    adjoin_trailing_variables,
    colon_by_variable,
    divide_by_one_minus_t_power,
    ek_betti,
    hilbert_series,
    is_strongly_stable,
    partial_degree_bound,
    pure_power_degree,
)
from .poly import FieldSpec, Ideal, substitute_linear

ROUTES = ("gin-omega", "random-section", "annihilator")


class NotAlmostRegular(ValueError):
    pass


class RouteDisagreement(RuntimeError):
    def __init__(self, i: int, values: dict):
        self.i = i
        self.values = values
        super().__init__(f"sectional regularity routes disagree at i={i}: {values}")


# --- annihilator numbers -----------------------------------------------------


@dataclass(frozen=True)
class AnnihilatorTable:
    """Nonzero generic annihilator numbers ``alpha_{i,j}`` for ``0 <= i <= d-1``."""

    nvars: int
    entries: dict
    extremal: frozenset = frozenset()
    coextremal: frozenset = frozenset()

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def flag(self, i: int, j: int) -> str | None:
        e, c = (i, j) in self.extremal, (i, j) in self.coextremal
        if e and c:
            return "both"
        if e:
            return "extremal"
        if c:
            return "coextremal"
        return None

    def column_top(self, i: int) -> int | float:
        """Largest ``j`` with ``alpha_{i,j} != 0``; ``-inf`` for an empty column."""
        return max((j for (s, j) in self.entries if s == i), default=-INF)

    @property
    def max_twist(self) -> int:
        return max((j for (_, j) in self.entries), default=-1)

    def to_json(self) -> list:
        return [[i, j, v, self.flag(i, j)] for (i, j), v in sorted(self.entries.items())]


def _flags(entries: dict) -> tuple[frozenset, frozenset]:
    keys = list(entries)
    ext, coext = set(), set()
    for (i, j) in keys:
        if not any((s, t) != (i, j) and s <= i and t >= j for (s, t) in keys):
            ext.add((i, j))
        if not any((s, t) != (i, j) and s >= i and t >= j for (s, t) in keys):
            coext.add((i, j))
    return frozenset(ext), frozenset(coext)


def annihilator_table(gin: MonomialIdeal) -> AnnihilatorTable:
    """Annihilator numbers of ``R/gin`` along the variable sequence ``x_d, ..., x_1``.

    Column ``i`` is the Hilbert function of ``(K : x_{d-i}) / K`` with
    ``K = gin + (x_{d-i+1}, ..., x_d)``.
    """
    d = gin.nvars
    entries: dict = {}
    for i in range(d):
        K = adjoin_trailing_variables(gin, d - i)
        top = hilbert_series(K).numerator
        colon = hilbert_series(colon_by_variable(K, d - i)).numerator
        n = max(len(top), len(colon))
        diff = [(top[k] if k < len(top) else 0) - (colon[k] if k < len(colon) else 0) for k in range(n)]
        poly = divide_by_one_minus_t_power(diff, d)
        if poly is None:
            raise NotAlmostRegular(f"x{d - i} is not almost regular on the quotient (column {i})")
        for j, v in enumerate(poly):
            if v < 0:
                raise NotAlmostRegular(f"negative annihilator dimension at ({i}, {j})")
            if v:
                entries[(i, j)] = v
    ext, coext = _flags(entries)
    return AnnihilatorTable(d, entries, ext, coext)


def sreg_from_table(table: AnnihilatorTable, i: int) -> int:
    """``max{j : alpha_{t,j} != 0, t >= d-i} + 1``; 1 for ``i = 0``."""
    d = table.nvars
    if not 0 <= i <= d:
        raise ValueError(f"index {i} out of range")
    if i == 0:
        return 1
    top = max((j for (t, j) in table.entries if t >= d - i), default=None)
    if top is None:
        raise ValueError("no nonzero annihilator numbers; the ideal is zero")
    return top + 1


# --- invariants of the gin ---------------------------------------------------


def axial_constants(gin: MonomialIdeal) -> list[int | float]:
    return [pure_power_degree(gin, i) for i in range(1, gin.nvars + 1)]


def partial_degree_bounds(gin: MonomialIdeal) -> list[int]:
    return [partial_degree_bound(gin, i) for i in range(1, gin.nvars + 1)]


def height(gin: MonomialIdeal) -> int:
    """Codimension, read off the Hilbert series."""
    return gin.nvars - hilbert_series(gin).krull_dimension


def _top_degree(J: MonomialIdeal) -> int | float:
    """Largest ``t`` with ``(R/J)_t != 0``; ``inf`` when ``R/J`` is not artinian."""
    num, dim = hilbert_series(J).reduced()
    if dim > 0:
        return INF
    if not any(num):
        return -INF
    return max(k for k, c in enumerate(num) if c)


def reduction_numbers(gin: MonomialIdeal) -> dict[int, int | float]:
    """``r_s`` for ``0 <= s <= d-1``: top degree of ``R/(gin + (x_{d-s+1}, ..., x_d))``.

    This is infinite exactly when ``s < dim R/gin``.  For strongly stable
    ideals it equals ``pure_power_degree(gin, d-s) - 1``.
    """
    d = gin.nvars
    return {s: _top_degree(adjoin_trailing_variables(gin, d - s)) for s in range(d)}


def reduction_numbers_by_pure_powers(gin: MonomialIdeal) -> dict[int, int | float]:
    """``r_s = min{t : x_{d-s}^{t+1} in gin}`` for ``s >= dim``, else ``inf``."""
    d = gin.nvars
    dim = hilbert_series(gin).krull_dimension
    return {s: pure_power_degree(gin, d - s) - 1 if s >= dim else INF for s in range(d)}


def monomial_regularity(J: MonomialIdeal) -> int:
    """Regularity of a Borel-fixed monomial ideal."""
    if J.is_zero():
        raise ValueError("regularity of the zero ideal")
    if is_strongly_stable(J):
        return J.max_degree()
    return sreg_from_table(annihilator_table(J), J.nvars)


# --- ideals ------------------------------------------------------------------


def _gin(ideal: Ideal, gin: GinResult | None, seed: int, trials: int) -> GinResult:
    return gin if gin is not None else gin_rev(ideal, seed=seed, trials=trials)


def regularity(ideal: Ideal, gin: GinResult | None = None, seed: int = 0, trials: int = 2) -> int:
    if not ideal.gens:
        raise ValueError("regularity of the zero ideal")
    return monomial_regularity(_gin(ideal, gin, seed, trials).ideal)


def _section_initial(ideal: Ideal, i: int, seed: int, bound: int) -> MonomialIdeal:
    # I + (l_{i+1}, ..., l_d) for random forms, viewed in k[x_1..x_i] after moving l_k to x_k
    change = random_change(ideal.nvars, ideal.field, seed, bound)
    rows = [row[:i] for row in change.matrix]
    target = ideal.ring.truncate(i)
    gens = [substitute_linear(g, rows, target) for g in ideal.gens]
    return buchberger([g for g in gens if g], ring=target).initial


@dataclass(frozen=True)
class SectionResult:
    value: int
    agreed: bool
    initial: MonomialIdeal
    seeds: tuple[int, ...]


def section_regularity(
    ideal: Ideal, i: int, seed: int = 0, trials: int = 2, bound: int = DEFAULT_BOUND
) -> SectionResult:
    """Regularity of ``I + (l_{i+1}, ..., l_d)`` for random linear forms.

    The section lives in ``k[x_1..x_i]`` in already-random coordinates, so its
    initial ideal is its gin; ``trials`` independent draws must agree.
    """
    d = ideal.nvars
    if not 0 <= i <= d:
        raise ValueError(f"index {i} out of range")
    if not ideal.gens:
        raise ValueError("sectional regularity of the zero ideal")
    if i == 0:
        return SectionResult(1, True, MonomialIdeal.zero(0), ())
    seeds = tuple(random.Random(f"section:{seed}:{i}:{k}").getrandbits(63) for k in range(trials))
    initials = [_section_initial(ideal, i, s, bound) for s in seeds]
    agreed = all(J == initials[0] for J in initials) and is_borel_fixed(initials[0], ideal.field)
    return SectionResult(monomial_regularity(initials[0]), agreed, initials[0], seeds)


def sectional_regularity(
    ideal: Ideal,
    i: int,
    route: str = "annihilator",
    gin: GinResult | None = None,
    seed: int = 0,
    trials: int = 2,
    cross_check: bool = False,
) -> int:
    """``sreg_i(I) = reg(I + (l_{i+1}, ..., l_d))`` for general linear forms.

    ``route`` selects how it is computed; with ``cross_check`` every route is
    evaluated and a disagreement raises :class:`RouteDisagreement`.
    """
    d = ideal.nvars
    if not 1 <= i <= d:
        raise ValueError(f"index {i} out of range")
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    if cross_check:
        values = sreg_routes(ideal, i, gin=gin, seed=seed, trials=trials)
        if len(set(v for v in values.values() if v is not None)) > 1:
            raise RouteDisagreement(i, values)
        return values[route]
    if route == "random-section":
        return section_regularity(ideal, i, seed, trials).value
    g = _gin(ideal, gin, seed, trials)
    if route == "gin-omega":
        if not g.strongly_stable:
            raise ValueError("the partial-degree route needs a strongly stable gin")
        return partial_degree_bound(g.ideal, i)
    return sreg_from_table(annihilator_table(g.ideal), i)


def sreg_routes(
    ideal: Ideal, i: int, gin: GinResult | None = None, seed: int = 0, trials: int = 2
) -> dict[str, int | None]:
    g = _gin(ideal, gin, seed, trials)
    return {
        "gin-omega": partial_degree_bound(g.ideal, i) if g.strongly_stable else None,
        "random-section": section_regularity(ideal, i, seed, trials).value,
        "annihilator": sreg_from_table(annihilator_table(g.ideal), i),
    }


# --- correspondences ---------------------------------------------------------


def coextremal_jumps_sreg(sreg: Sequence[int], table: AnnihilatorTable) -> bool:
    """For all ``i``: ``sreg_{i-1} < sreg_i = j+1`` iff ``alpha_{d-i,j}`` is coextremal."""
    d = table.nvars
    for i in range(1, d + 1):
        prev = sreg[i - 2] if i >= 2 else -INF
        for j in range(table.max_twist + 2):
            jump = prev < sreg[i - 1] == j + 1
            if jump != ((d - i, j) in table.coextremal):
                return False
    return True


def coextremal_jumps_axial(axial: Sequence[int | float], table: AnnihilatorTable) -> bool:
    """For ``1 <= i <= c``: ``a_{i-1} < a_i = j+1`` iff ``alpha_{d-i,j}`` is coextremal."""
    d = table.nvars
    c = sum(1 for a in axial if a != INF)
    for i in range(1, c + 1):
        prev = axial[i - 2] if i >= 2 else -INF
        for j in range(table.max_twist + 2):
            jump = prev < axial[i - 1] == j + 1
            if jump != ((d - i, j) in table.coextremal):
                return False
    return True


def extremal_betti_agree(J: MonomialIdeal, table: AnnihilatorTable) -> bool:
    """``beta_{d-i, d-i+j}(R/J) = alpha_{i,j}`` at every extremal position."""
    betti = ek_betti(J)
    d = J.nvars
    return all(betti[(d - i, j)] == table[(i, j)] for (i, j) in table.extremal)


# --- the equivalence report --------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"holds": self.holds, **{k: _jsonable(v) for k, v in self.detail.items()}}


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return None
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class InvariantReport:
    nvars: int
    field: FieldSpec
    gin: GinResult
    axial: list
    sreg: list
    omega: list
    reduction: dict
    regularity: int
    height: int
    table: AnnihilatorTable
    sreg_sections: list | None
    sections_agreed: bool | None
    verdicts: dict

    @property
    def all_hold(self) -> bool:
        return all(v.holds is not False for v in self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "nvars": self.nvars,
            "gin": [list(g) for g in self.gin.ideal.gens],
            "certified": self.gin.certified,
            "axial": _jsonable(self.axial),
            "sreg": self.sreg,
            "sreg_routes": {
                "annihilator": self.sreg,
                "gin-omega": self.omega if self.gin.strongly_stable else None,
                "random-section": self.sreg_sections,
            },
            "omega": self.omega,
            "reduction": _jsonable(self.reduction),
            "regularity": self.regularity,
            "height": self.height,
            "alpha": self.table.to_json(),
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
        }


def _per_index(d: int, ok) -> Verdict:
    per = {i: ok(i) for i in range(1, d + 1)}
    relevant = [v for v in per.values() if v is not None]
    return Verdict(all(relevant) if relevant else None, {"per_index": per, "failures": [i for i, v in per.items() if v is False]})


def equivalence_report(
    ideal: Ideal,
    seed: int = 0,
    trials: int = 2,
    sections: bool | None = None,
    gin: GinResult | None = None,
) -> InvariantReport:
    """Compute every invariant by every applicable route and record which identities hold.

    ``sections`` toggles the random-section route; by default it runs unless
    the field is a small prime field.
    """
    if not ideal.gens:
        raise ValueError("equivalence report of the zero ideal")
    d = ideal.nvars
    F = ideal.field
    g = _gin(ideal, gin, seed, trials)
    J = g.ideal
    table = annihilator_table(J)
    axial = axial_constants(J)
    sreg = [sreg_from_table(table, i) for i in range(1, d + 1)]
    omega = partial_degree_bounds(J)
    red = reduction_numbers(J)
    reg = monomial_regularity(J)
    c = height(J)
    if sections is None:
        sections = not F.is_small
    sec_values = sec_agreed = None
    if sections:
        results = [section_regularity(ideal, i, seed, trials) for i in range(1, d + 1)]
        sec_values = [r.value for r in results]
        sec_agreed = all(r.agreed for r in results)

    init_deg = min(f.degree for f in ideal.gens)
    v: dict[str, Verdict] = {}
    v["axial_eq_sreg"] = _per_index(d, lambda i: axial[i - 1] == sreg[i - 1] if i <= c else None)
    v["sreg_eq_omega"] = _per_index(d, lambda i: sreg[i - 1] == omega[i - 1])
    v["axial_eq_reduction"] = _per_index(d, lambda i: axial[i - 1] == red[d - i] + 1)
    finite = [i for i in range(1, d + 1) if axial[i - 1] != INF]
    v["finiteness_window"] = Verdict(finite == list(range(1, c + 1)), {"finite": finite, "height": c})
    fin = [a for a in axial if a != INF]
    v["monotone"] = Verdict(
        all(a <= b for a, b in zip(sreg, sreg[1:])) and all(a <= b for a, b in zip(fin, fin[1:])),
        {"sreg": sreg, "axial": axial},
    )
    v["initial_degree"] = Verdict(axial[0] == init_deg, {"a1": axial[0], "initial_degree": init_deg})
    # Cohen-Macaulay is only detectable here for strongly stable gins
    trailing_free = g.strongly_stable and all(not any(u[c:]) for u in J.gens)
    v["top_axial_eq_reg"] = Verdict(
        (c >= 1 and axial[c - 1] == reg) if trailing_free else None,
        {"height": c, "regularity": reg, "cohen_macaulay_detected": trailing_free},
    )
    v["sreg_top_eq_reg"] = Verdict(sreg[-1] == reg, {"sreg_d": sreg[-1], "regularity": reg})
    v["sections_agree"] = Verdict(
        None if sec_values is None else sec_values == sreg,
        {"random_section": sec_values, "annihilator": sreg, "draws_agreed": sec_agreed},
    )
    return InvariantReport(d, F, g, axial, sreg, omega, red, reg, c, table, sec_values, sec_agreed, v)
