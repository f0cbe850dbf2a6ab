"""Invariants along the powers of an ideal and eventual linear fits."""

from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gin import GinResult, gin_rev
from .groebner import ideal_power
from .invariants import annihilator_table, axial_constants, monomial_regularity, reduction_numbers, sreg_from_table
from .poly import Ideal

log = logging.getLogger(__name__)

INVARIANTS = ("axial", "sreg", "regularity", "reduction")
MIN_WINDOW = 3
DEFAULT_N_MAX = 6
DEFAULT_BUDGET = 60.0


@dataclass(frozen=True)
class InvariantSelector:
    name: str
    index: int | None = None

    @classmethod
    def parse(cls, text: str) -> InvariantSelector:
        """``"sreg:2"``, ``"axial:1"``, ``"reduction:0"`` or ``"regularity"``."""
        name, _, idx = text.partition(":")
        if name not in INVARIANTS:
            raise ValueError(f"unknown invariant {name!r}; expected one of {', '.join(INVARIANTS)}")
        if name == "regularity":
            if idx:
                raise ValueError("regularity takes no index")
            return cls(name)
        if not idx.strip().isdigit():
            raise ValueError(f"invariant {name} needs an index, e.g. {name}:1")
        return cls(name, int(idx))

    def validate(self, d: int) -> None:
        if self.name in ("axial", "sreg") and not 1 <= self.index <= d:
            raise ValueError(f"{self.name} index must be in 1..{d}")
        if self.name == "reduction" and not 0 <= self.index < d:
            raise ValueError(f"reduction index must be in 0..{d - 1}")

    def evaluate(self, gin: GinResult) -> int | float:
        J = gin.ideal
        if self.name == "axial":
            return axial_constants(J)[self.index - 1]
        if self.name == "sreg":
            return sreg_from_table(annihilator_table(J), self.index)
        if self.name == "regularity":
            return monomial_regularity(J)
        return reduction_numbers(J)[self.index]

    def __str__(self) -> str:
        return self.name if self.index is None else f"{self.name}:{self.index}"


@dataclass(frozen=True)
class PowerSequence:
    invariant: InvariantSelector
    points: tuple[tuple[int, int | float], ...]
    truncated: bool = False
    diagnostics: tuple[str, ...] = ()
    gins: tuple[GinResult, ...] = ()
    uncertified: bool = False


def power_seed(seed: int, n: int) -> int:
    return random.Random(f"power:{seed}:{n}").getrandbits(63)


def power_sequence(
    ideal: Ideal,
    invariant: InvariantSelector | str,
    n_max: int = DEFAULT_N_MAX,
    seed: int = 0,
    trials: int = 2,
    budget: float | None = DEFAULT_BUDGET,
) -> PowerSequence:
    """The invariant of ``I^n`` for ``n = 1..n_max``, each power with its own random gin.

    The sequence stops early when a gin fails certification or a power takes
    longer than ``budget`` seconds; the reason is recorded as a diagnostic.
    """
    if isinstance(invariant, str):
        invariant = InvariantSelector.parse(invariant)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not ideal.gens:
        raise ValueError("powers of the zero ideal")
    invariant.validate(ideal.nvars)
    points: list[tuple[int, int | float]] = []
    gins: list[GinResult] = []
    notes: list[str] = []
    truncated = uncertified = False
    for n in range(1, n_max + 1):
        start = time.monotonic()
        power = Ideal(ideal.ring, tuple(ideal_power(ideal.gens, n)))
        gin = gin_rev(power, seed=power_seed(seed, n), trials=trials)
        if not gin.certified:
            notes.append(f"n={n}: gin not certified ({'; '.join(gin.diagnostics)}); sequence truncated")
            truncated = uncertified = True
            break
        gins.append(gin)
        points.append((n, invariant.evaluate(gin)))
        elapsed = time.monotonic() - start
        log.info("power %d of %d done in %.2fs", n, n_max, elapsed)
        if budget is not None and elapsed > budget and n < n_max:
            notes.append(f"n={n}: took {elapsed:.1f}s, over the {budget:.0f}s budget; sequence truncated")
            truncated = True
            break
    finite = [v for _, v in points if v != math.inf]
    if any(b < a for a, b in zip(finite, finite[1:])):
        notes.append("values decrease along powers")
    return PowerSequence(invariant, tuple(points), truncated, tuple(notes), tuple(gins), uncertified)


@dataclass(frozen=True)
class LinearFit:
    """``value(n) = slope * n + intercept`` on the sampled ``n >= stable_from``."""

    slope: Fraction
    intercept: Fraction
    stable_from: int
    window: tuple[tuple[int, int], ...]
    stabilized: bool

    @property
    def status(self) -> str:
        return "stabilized" if self.stabilized else "unstabilized"

    def predict(self, n: int) -> Fraction:
        return self.slope * n + self.intercept


def fit_eventual_linear(seq: Sequence[tuple[int, int | float]]) -> LinearFit:
    """Fit the longest suffix of ``seq`` with a constant rate of change.

    The fit counts as stabilized once that suffix has at least three points.
    """
    pts = sorted((int(n), v) for n, v in seq)
    if len(pts) < 2:
        raise ValueError("need at least two points to fit")
    if any(v == math.inf for _, v in pts):
        raise ValueError("invariant infinite along powers")
    if len({n for n, _ in pts}) != len(pts):
        raise ValueError("repeated sample index")
    rates = [Fraction(b - a, m - n) for (n, a), (m, b) in zip(pts, pts[1:])]
    k = len(rates) - 1
    while k > 0 and rates[k - 1] == rates[-1]:
        k -= 1
    window = tuple((n, int(v)) for n, v in pts[k:])
    slope = rates[-1]
    n0, v0 = window[0]
    return LinearFit(slope, v0 - slope * n0, n0, window, len(window) >= MIN_WINDOW)


def _number(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def fit_report(sequence: PowerSequence, fit: LinearFit | None) -> dict:
    """JSON form of a power sequence and its fit."""
    inv = sequence.invariant
    out = {
        "invariant": inv.name,
        "i": inv.index,
        "points": [[n, None if v == math.inf else v] for n, v in sequence.points],
        "slope": None,
        "intercept": None,
        "stable_from": None,
        "status": "unstabilized",
    }
    if fit is not None:
        out.update(
            slope=_number(fit.slope),
            intercept=_number(fit.intercept),
            stable_from=fit.stable_from,
            status=fit.status,
        )
    out["truncated"] = sequence.truncated
    out["diagnostics"] = list(sequence.diagnostics)
    return out
