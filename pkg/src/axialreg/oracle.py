"""Brute-force checks by exact linear algebra on graded pieces.

Nothing here touches Buchberger's algorithm or the Hilbert series recursion:
every number comes from the rank of a Macaulay block, i.e. the span of all
products ``m * g`` of degree ``t``.  Slow but independent.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

try:
    import flint
except ImportError:  # pure Python elimination still works, just slowly
    flint = None

from .gin import GinResult
from .monideal import MonomialIdeal, adjoin_trailing_variables, minimalize
from .poly import QQ, FieldSpec, Ideal, LinearChange, Monomial, Polynomial, apply_change, monomials_of_degree, substitute_zero


def default_t_max(gens: Sequence[Polynomial]) -> int:
    top = max((g.degree for g in gens if g), default=0)
    return max(10, 2 * top + 2)


@dataclass(frozen=True)
class MacaulayBlock:
    """Rows spanning ``I_t`` over the monomial basis of ``R_t`` in descending grevlex."""

    degree: int
    basis: tuple[Monomial, ...]
    rows: tuple[dict, ...]
    field: FieldSpec

    @property
    def size(self) -> int:
        return len(self.basis)


def _integer_row(row: dict) -> dict:
    # a rational row scaled to primitive integers spans the same line
    den = lcm(*(c.denominator for c in row.values()))
    ints = {k: int(c * den) for k, c in row.items()}
    g = gcd(*ints.values())
    return {k: v // g for k, v in ints.items()}


def macaulay_block(gens: Sequence[Polynomial], t: int, field: FieldSpec | None = None) -> MacaulayBlock:
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("ring unknown for an empty generator list")
    F = field or gens[0].ring.field
    d = gens[0].ring.nvars
    basis = tuple(monomials_of_degree(d, t))
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for g in gens:
        e = g.degree
        if not g.is_homogeneous:
            raise ValueError("Macaulay blocks need homogeneous generators")
        for m in monomials_of_degree(d, t - e):
            row = {index[tuple(a + b for a, b in zip(u, m))]: c for u, c in g.coeffs.items()}
            rows.append(_integer_row(row) if F.characteristic == 0 else row)
    return MacaulayBlock(t, basis, tuple(rows), F)


def _pivots_python(rows: Sequence[dict], p: int) -> list[int]:
    # incremental semi-echelon form: each stored row has a distinct leading column
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p} if p else dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                if p:
                    inv = pow(row[c], -1, p)
                    row = {k: v * inv % p for k, v in row.items()}
                elif row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                pivots[c] = row
                break
            if p:
                a = row[c]
                for k, v in piv.items():
                    w = (row.get(k, 0) - a * v) % p
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
            else:
                # fraction-free step, then strip the content to curb growth
                g = gcd(piv[c], row[c])
                s, r = piv[c] // g, row[c] // g
                new = {k: s * v for k, v in row.items()}
                for k, v in piv.items():
                    w = new.get(k, 0) - r * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                if new:
                    content = gcd(*new.values())
                    if content > 1:
                        new = {k: v // content for k, v in new.items()}
                row = new
    return sorted(pivots)


def _pivots_flint(rows: Sequence[dict], ncols: int, p: int) -> list[int]:
    if not rows or not ncols:
        return []
    if p:
        M = flint.nmod_mat(len(rows), ncols, p)
    else:
        M = flint.fmpz_mat(len(rows), ncols)
    for r, row in enumerate(rows):
        for c, v in row.items():
            M[r, c] = v % p if p else v
    res = M.rref()  # (E, den, rank) over Z, (E, rank) mod p
    E, rank = res[0], res[-1]
    out = []
    for r in range(rank):
        out.append(next(c for c in range(ncols) if E[r, c] != 0))
    return out


def echelon_pivots(rows: Sequence[dict], field: FieldSpec, ncols: int | None = None, backend: str = "auto") -> list[int]:
    """Leading columns of a row echelon form of ``rows``; their number is the rank.

    Over Q the elimination is exact and fraction-free.  ``backend`` is
    ``"flint"``, ``"python"`` or ``"auto"`` (flint when installed).
    """
    p = field.characteristic
    if backend == "auto":
        backend = "flint" if flint is not None else "python"
    if backend == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        if ncols is None:
            ncols = 1 + max((max(r) for r in rows if r), default=-1)
        return _pivots_flint(rows, ncols, p)
    return _pivots_python(rows, p)


def block_pivots(block: MacaulayBlock) -> list[int]:
    return echelon_pivots(block.rows, block.field, block.size)


def block_rank(block: MacaulayBlock) -> int:
    return len(block_pivots(block))


class MacaulayOracle:
    """Graded pieces of ``R/I`` by linear algebra, one cached block per degree."""

    def __init__(self, gens: Sequence[Polynomial], nvars: int | None = None, field: FieldSpec | None = None):
        gens = [g for g in gens if g]
        if gens:
            nvars, field = gens[0].ring.nvars, gens[0].ring.field
        elif nvars is None:
            raise ValueError("nvars is required for an empty generator list")
        for g in gens:
            if not g.is_homogeneous:
                raise ValueError(f"generator {g} is not homogeneous")
        self.gens = gens
        self.nvars = nvars
        self.field = field or QQ
        self._blocks: dict[int, MacaulayBlock] = {}
        self._pivots: dict[int, list[int]] = {}

    def block(self, t: int) -> MacaulayBlock:
        if t not in self._blocks:
            if self.gens:
                self._blocks[t] = macaulay_block(self.gens, t, self.field)
            else:
                self._blocks[t] = MacaulayBlock(t, tuple(monomials_of_degree(self.nvars, t)), (), self.field)
        return self._blocks[t]

    def pivots(self, t: int) -> list[int]:
        if t not in self._pivots:
            self._pivots[t] = block_pivots(self.block(t))
        return self._pivots[t]

    def rank(self, t: int) -> int:
        return len(self.pivots(t))

    def hilbert(self, t_max: int) -> list[int]:
        return [self.block(t).size - self.rank(t) for t in range(t_max + 1)]

    def initial_ideal(self, t_max: int) -> MonomialIdeal:
        found = [self.block(t).basis[c] for t in range(t_max + 1) for c in self.pivots(t)]
        return minimalize(found, self.nvars)

    def colon_dimension(self, i: int, j: int) -> int:
        """``dim_k (0 :_{R/I} x_i)_j`` for a 1-based variable index ``i``.

        The kernel of ``x_i : (R/I)_j -> (R/I)_{j+1}`` has dimension
        ``dim (R/I)_j - (rank(I_{j+1} + x_i R_j) - rank(I_{j+1}))``.  The rows
        of ``x_i R_j`` are unit vectors on the columns divisible by ``x_i``, so
        the middle rank is their count plus the rank of ``I_{j+1}`` on the
        remaining columns.
        """
        if not 1 <= i <= self.nvars:
            raise ValueError(f"variable index {i} out of range")
        if j < 0:
            return 0
        high = self.block(j + 1)
        free = [k for k, m in enumerate(high.basis) if not m[i - 1]]
        where = {k: n for n, k in enumerate(free)}
        restricted = [{where[k]: v for k, v in row.items() if k in where} for row in high.rows]
        divisible = high.size - len(free)
        rank_both = divisible + len(echelon_pivots([r for r in restricted if r], self.field, len(free)))
        return (self.block(j).size - self.rank(j)) - (rank_both - self.rank(j + 1))


def hilbert_by_linear_algebra(
    gens: Sequence[Polynomial], t_max: int, nvars: int | None = None, field: FieldSpec | None = None
) -> list[int]:
    """``H(R/I)(t)`` for ``t = 0..t_max`` as ``dim R_t - rank`` of the Macaulay block."""
    return MacaulayOracle(gens, nvars, field).hilbert(t_max)


def macaulay_initial_ideal(
    gens: Sequence[Polynomial], t_max: int, nvars: int | None = None, field: FieldSpec | None = None
) -> MonomialIdeal:
    """Grevlex initial ideal truncated at degree ``t_max``, from pivot columns."""
    return MacaulayOracle(gens, nvars, field).initial_ideal(t_max)


def colon_dimension_by_linear_algebra(
    gens: Sequence[Polynomial],
    i: int,
    j: int,
    t_max: int | None = None,
    nvars: int | None = None,
    field: FieldSpec | None = None,
) -> int:
    """``dim_k (0 :_{R/I} x_i)_j`` for a 1-based variable index ``i``."""
    if t_max is not None and j > t_max - 1:
        raise ValueError(f"degree {j} needs t_max > {j}")
    return MacaulayOracle(gens, nvars, field).colon_dimension(i, j)


def section_generators(ideal: Ideal, change: LinearChange | None, keep: int) -> list[Polynomial]:
    """Generators of ``g.I + (x_{keep+1}, ..., x_d)`` viewed in ``k[x_1..x_keep]``."""
    gens = ideal.gens if change is None else [apply_change(f, change) for f in ideal.gens]
    return [h for h in (substitute_zero(f, keep) for f in gens) if h]


def section_oracle(ideal: Ideal, change: LinearChange | None, keep: int) -> MacaulayOracle:
    return MacaulayOracle(section_generators(ideal, change, keep), keep, ideal.field)


@dataclass
class Verification:
    checks: int = 0
    discrepancies: list = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def expect(self, check: str, where: dict, engine, oracle) -> None:
        self.checks += 1
        if engine != oracle:
            self.discrepancies.append({"check": check, **where, "engine": _plain(engine), "oracle": _plain(oracle)})

    def to_json(self) -> dict:
        return {"checks": self.checks, "ok": self.ok, "discrepancies": self.discrepancies}


def _plain(x):
    if isinstance(x, MonomialIdeal):
        return [list(g) for g in x.gens]
    return x


def truncate_ideal(J: MonomialIdeal, t_max: int) -> MonomialIdeal:
    return MonomialIdeal(J.nvars, tuple(g for g in J.gens if sum(g) <= t_max))


def verify_gin(ideal: Ideal, gin: GinResult, t_max: int | None = None, colon: bool = True) -> Verification:
    """Check a gin and its annihilator table against linear algebra on ``g.I``.

    For each agreeing change ``g``: the Macaulay initial ideal of ``g.I`` is
    the gin up to ``t_max``; ``H(g.I + (x_{i+1}, ..., x_d)) = H(gin + (x_{i+1}, ..., x_d))``
    for every ``i``; and, when ``colon`` is set, the kernel dimensions of
    ``x_{d-i}`` on those quotients are the annihilator table entries.
    """
    from .invariants import annihilator_table

    d = ideal.nvars
    if t_max is None:
        t_max = default_t_max(ideal.gens)
    out = Verification()
    table = annihilator_table(gin.ideal) if colon else None
    if table is not None and table.max_twist > t_max - 1:
        out.discrepancies.append({"check": "t_max", "needed": table.max_twist + 1, "t_max": t_max})
    for trial in gin.trials:
        if not trial.agrees:
            continue
        where = {"seed": trial.seed}
        full = section_oracle(ideal, trial.change, d)
        out.expect("initial_ideal", where, truncate_ideal(gin.ideal, t_max), full.initial_ideal(t_max))
        for i in range(d + 1):
            sec = full if i == d else section_oracle(ideal, trial.change, i)
            expected = adjoin_trailing_variables(gin.ideal, i).hilbert_series().values(t_max)
            out.expect("hilbert", {**where, "i": i}, expected, sec.hilbert(t_max))
            if table is not None and i >= 1:
                col = d - i
                for j in range(t_max):
                    out.expect("annihilator", {**where, "i": col, "j": j}, table[(col, j)], sec.colon_dimension(i, j))
    return out
