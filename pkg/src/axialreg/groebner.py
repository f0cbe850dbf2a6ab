"""Division, Buchberger's algorithm and reduced Groebner bases of homogeneous ideals.

Over Q the engine works on primitive integer polynomials (fraction-free
reduction) and converts to monic rational form only at the end; over F_p it
works on monic polynomials with residues in ``range(p)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Sequence

from .monideal import HilbertSeries, MonomialIdeal, hilbert_series
from .poly import (
    GREVLEX,
    Ideal,
    MonomialOrder,
    Monomial,
    Polynomial,
    Ring,
    mono_div,
    mono_divides,
    mono_lcm,
)


class _Elt:
    """An internal basis element: leading monomial, leading coefficient, all terms."""

    __slots__ = ("lm", "lc", "terms", "tail", "degree")

    def __init__(self, terms: dict, key) -> None:
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.tail = [(m, c) for m, c in terms.items() if m != self.lm]
        self.degree = sum(self.lm)


class _Engine:
    def __init__(self, ring: Ring, order: MonomialOrder) -> None:
        self.ring = ring
        self.order = order
        self.key = order.key
        self.p = ring.field.characteristic

    def heap_key(self, m: Monomial) -> tuple[int, ...]:
        return tuple(-k for k in self.key(m))

    def normalize(self, terms: dict) -> dict:
        """Primitive with positive leading coefficient over Q; monic over F_p."""
        if not terms:
            return terms
        lm = max(terms, key=self.key)
        if self.p:
            inv = pow(terms[lm], -1, self.p)
            return {m: c * inv % self.p for m, c in terms.items()}
        g = 0
        for c in terms.values():
            g = gcd(g, c)
            if g == 1:
                break
        if terms[lm] < 0:
            g = -g
        if g == 1:
            return terms
        return {m: c // g for m, c in terms.items()}

    def to_internal(self, f: Polynomial) -> dict:
        if self.p:
            return dict(f.coeffs)
        coeffs = f.coeffs
        den = 1
        for c in coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return self.normalize({m: int(c * den) for m, c in coeffs.items()})

    def to_polynomial(self, terms: dict) -> Polynomial:
        if self.p:
            return Polynomial._raw(self.ring, self.normalize(dict(terms)))
        lc = terms[max(terms, key=self.key)]
        return Polynomial._raw(self.ring, {m: Fraction(c, lc) for m, c in terms.items()})

    def reduce(self, f: dict, basis: Sequence[_Elt]) -> dict:
        """Full reduction of ``f``; divisors are tried in list order."""
        p = self.p
        f = dict(f)
        rem: dict = {}
        heap = [(self.heap_key(m), m) for m in f]
        heapq.heapify(heap)
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, 0)
            if not c:
                continue
            g = next((g for g in basis if mono_divides(g.lm, m)), None)
            if g is None:
                rem[m] = c
                continue
            q = mono_div(m, g.lm)
            if p:
                mult = c * pow(g.lc, -1, p) % p
                for gm, gc in g.tail:
                    mono = tuple(a + b for a, b in zip(q, gm))
                    old = f.get(mono)
                    if old is None:
                        heapq.heappush(heap, (self.heap_key(mono), mono))
                        old = 0
                    v = (old - mult * gc) % p
                    if v:
                        f[mono] = v
                    else:
                        del f[mono]
            else:
                h = gcd(c, g.lc)
                a, b = g.lc // h, c // h
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    for k in f:
                        f[k] *= a
                    for k in rem:
                        rem[k] *= a
                for gm, gc in g.tail:
                    mono = tuple(x + y for x, y in zip(q, gm))
                    old = f.get(mono)
                    if old is None:
                        heapq.heappush(heap, (self.heap_key(mono), mono))
                        old = 0
                    v = old - b * gc
                    if v:
                        f[mono] = v
                    else:
                        del f[mono]
        return rem

    def spoly(self, f: _Elt, g: _Elt) -> dict:
        L = mono_lcm(f.lm, g.lm)
        qf, qg = mono_div(L, f.lm), mono_div(L, g.lm)
        p = self.p
        if p:
            cf, cg = pow(f.lc, -1, p), pow(g.lc, -1, p)
        else:
            h = gcd(f.lc, g.lc)
            cf, cg = g.lc // h, f.lc // h
        out: dict = {}
        for m, c in f.tail:
            mono = tuple(x + y for x, y in zip(qf, m))
            out[mono] = out.get(mono, 0) + cf * c
        for m, c in g.tail:
            mono = tuple(x + y for x, y in zip(qg, m))
            out[mono] = out.get(mono, 0) - cg * c
        if p:
            return {m: c % p for m, c in out.items() if c % p}
        return {m: c for m, c in out.items() if c}


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger_internal(engine: _Engine, inputs: list[dict], degree_cap: int | None) -> list[_Elt]:
    key = engine.key
    polys: list[_Elt] = []
    active: list[int] = []
    pairs: list[tuple[int, int, Monomial]] = []

    def update(h: int) -> None:
        # Gebauer-Moeller installation of the new element h
        nonlocal active, pairs
        H = polys[h]
        cands = [(g, mono_lcm(H.lm, polys[g].lm)) for g in active]
        kept: list[tuple[int, Monomial]] = []
        for idx, (g, L) in enumerate(cands):
            if _coprime(H.lm, polys[g].lm):
                kept.append((g, L))
                continue
            if any(mono_divides(L2, L) for _, L2 in cands[idx + 1:]):
                continue
            if any(mono_divides(L2, L) for _, L2 in kept):
                continue
            kept.append((g, L))
        new_pairs = [(g, h, L) for g, L in kept if not _coprime(H.lm, polys[g].lm)]
        old = []
        for a, b, L in pairs:
            if (
                mono_divides(H.lm, L)
                and mono_lcm(polys[a].lm, H.lm) != L
                and mono_lcm(polys[b].lm, H.lm) != L
            ):
                continue
            old.append((a, b, L))
        pairs = old + new_pairs
        active = [g for g in active if not mono_divides(H.lm, polys[g].lm)] + [h]

    def add(terms: dict) -> None:
        polys.append(_Elt(engine.normalize(terms), key))
        update(len(polys) - 1)

    pending = sorted(inputs, key=lambda t: sum(next(iter(t))))
    while pending or pairs:
        t_pair = min((sum(L) for _, _, L in pairs), default=None)
        t_in = sum(next(iter(pending[0]))) if pending else None
        t = min(x for x in (t_pair, t_in) if x is not None)
        if degree_cap is not None and t > degree_cap:
            break
        while pending and sum(next(iter(pending[0]))) == t:
            f = pending.pop(0)
            r = engine.reduce(f, [polys[g] for g in active])
            if r:
                add(r)
        while True:
            now = [pr for pr in pairs if sum(pr[2]) == t]
            if not now:
                break
            pr = min(now, key=lambda x: key(x[2]))
            pairs.remove(pr)
            a, b, _ = pr
            s = engine.spoly(polys[a], polys[b])
            if s:
                r = engine.reduce(s, [polys[g] for g in active])
                if r:
                    add(r)
    return [polys[g] for g in active]


def _interreduce(engine: _Engine, elts: list[_Elt]) -> list[_Elt]:
    # leading monomials form an antichain, so each leading term survives reduction
    out = []
    for k, e in enumerate(elts):
        others = elts[:k] + elts[k + 1:]
        out.append(_Elt(engine.normalize(engine.reduce(e.terms, others)), engine.key))
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    initial: MonomialIdeal
    degree_cap: int | None = None

    def __len__(self) -> int:
        return len(self.basis)

    def hilbert_series(self) -> HilbertSeries:
        if self.degree_cap is not None:
            raise ValueError("Hilbert series of a degree-truncated basis")
        return hilbert_series(self.initial)

    def hilbert_function(self, t: int) -> int:
        return hilbert_function(self, t)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, list(self.basis), self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by ``G``, divisors tried in list order."""
    if not G:
        raise ValueError("empty divisor list")
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise ValueError("ring mismatch")
    G = [g for g in G if g]
    if not G or not f:
        return f
    engine = _Engine(ring, order)
    if engine.p:
        elts = [_Elt(dict(g.coeffs), order.key) for g in G]
        return Polynomial._raw(ring, engine.reduce(dict(f.coeffs), elts))
    # over Q divide with monic divisors so the remainder is the textbook one
    elts = [_Elt(dict(g.monic(order).coeffs), order.key) for g in G]
    return _rational_reduce(f, elts, order)


def _rational_reduce(f: Polynomial, basis: list[_Elt], order: MonomialOrder) -> Polynomial:
    key = order.key
    terms = dict(f.coeffs)
    rem: dict = {}
    heap = [tuple(-k for k in key(m)) + (m,) for m in terms]
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap)[-1]
        c = terms.pop(m, 0)
        if not c:
            continue
        g = next((g for g in basis if mono_divides(g.lm, m)), None)
        if g is None:
            rem[m] = c
            continue
        q = mono_div(m, g.lm)
        for gm, gc in g.tail:
            mono = tuple(x + y for x, y in zip(q, gm))
            if mono not in terms:
                heapq.heappush(heap, tuple(-k for k in key(mono)) + (mono,))
            v = terms.get(mono, 0) - c * gc
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
    return Polynomial._raw(f.ring, rem)


def buchberger(
    gens: Iterable[Polynomial] | Ideal,
    order: MonomialOrder = GREVLEX,
    degree_cap: int | None = None,
    ring: Ring | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal.

    With ``degree_cap`` the result is a basis only up to that degree, which is
    exact for homogeneous input in degrees ``<= degree_cap``.
    """
    if isinstance(gens, Ideal):
        ring = gens.ring
        gens = gens.gens
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring is required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("ring mismatch")
        if not g.is_homogeneous:
            raise ValueError(f"generator {g} is not homogeneous")
    if not gens:
        return GroebnerBasis(ring, order, (), MonomialIdeal.zero(ring.nvars), degree_cap)
    engine = _Engine(ring, order)
    inputs = [engine.to_internal(g) for g in gens]
    elts = _buchberger_internal(engine, inputs, degree_cap)
    elts = _interreduce(engine, elts)
    elts.sort(key=lambda e: engine.key(e.lm), reverse=True)
    basis = tuple(engine.to_polynomial(e.terms) for e in elts)
    initial = MonomialIdeal(ring.nvars, tuple(e.lm for e in elts))
    return GroebnerBasis(ring, order, basis, initial, degree_cap)


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return gb.initial


def is_groebner_basis(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in gb.basis if g]
    if not basis:
        return True
    engine = _Engine(gb.ring, gb.order)
    elts = [_Elt(engine.to_internal(g), engine.key) for g in basis]
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            L = mono_lcm(elts[i].lm, elts[j].lm)
            if gb.degree_cap is not None and sum(L) > gb.degree_cap:
                continue
            s = engine.spoly(elts[i], elts[j])
            if s and engine.reduce(s, elts):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    for k, g in enumerate(gb.basis):
        lc, lm = g.leading_term(gb.order)
        if lc != 1:
            return False
        for j, h in enumerate(gb.basis):
            if j == k:
                continue
            if any(mono_divides(lm, m) for m in h.monomials()):
                return False
    return True


def ideal_power(gens: Sequence[Polynomial], n: int) -> list[Polynomial]:
    """Generators of ``I^n``: all n-fold products of the generators, deduplicated."""
    if n < 1:
        raise ValueError("power must be at least 1")
    gens = [g for g in gens if g]
    out: list[Polynomial] = []
    seen = set()
    for combo in combinations_with_replacement(range(len(gens)), n):
        f = gens[combo[0]]
        for k in combo[1:]:
            f = f * gens[k]
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def hilbert_function(gb: GroebnerBasis, t: int) -> int:
    """``H(R/I)(t)``, read off the initial ideal."""
    if gb.degree_cap is not None and t > gb.degree_cap:
        raise ValueError(f"degree {t} beyond the basis degree cap {gb.degree_cap}")
    return hilbert_series(gb.initial).value(t)
