"""Exact coefficient fields, monomials, graded polynomials and the ideal file format.

Monomials are plain tuples of exponents ``(a_1, ..., a_d)``; variable ``x_1`` is
index 0 internally and the convention ``x_1 > x_2 > ... > x_d`` is fixed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

Monomial = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (characteristic 0) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    @property
    def kind(self) -> str:
        return "rational" if self.characteristic == 0 else "prime-field"

    @property
    def is_small(self) -> bool:
        """True for prime fields too small for reliable random genericity."""
        return 0 < self.characteristic < 100

    def __call__(self, value) -> Fraction | int:
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp {self.characteristic}"


QQ = FieldSpec(0)


class MonomialOrder(enum.Enum):
    GREVLEX = "grevlex"
    LEX = "lex"
    GRLEX = "grlex"

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: a larger key is a larger monomial."""
        if self is MonomialOrder.GREVLEX:
            return (sum(m),) + tuple(-e for e in reversed(m))
        if self is MonomialOrder.LEX:
            return m
        return (sum(m),) + m


GREVLEX = MonomialOrder.GREVLEX


def order_compare(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """Whether ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(d: int, t: int) -> list[Monomial]:
    """All monomials of degree ``t`` in ``d`` variables, descending in grevlex."""
    if t < 0:
        return []
    if d == 0:
        return [()] if t == 0 else []
    out = []
    for combo in combinations_with_replacement(range(d), t):
        e = [0] * d
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=GREVLEX.key, reverse=True)
    return out


def count_monomials(d: int, t: int) -> int:
    if t < 0:
        return 0
    if d == 0:
        return 1 if t == 0 else 0
    return comb(t + d - 1, d - 1)


@dataclass(frozen=True)
class Ring:
    field: FieldSpec
    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @classmethod
    def standard(cls, d: int, field: FieldSpec = QQ) -> Ring:
        return cls(field, tuple(f"x{i}" for i in range(1, d + 1)))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i: int) -> Polynomial:
        """The variable with 0-based index ``i``."""
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        if len(exps) != self.nvars:
            raise ValueError("dimension mismatch")
        return Polynomial(self, {tuple(exps): coeff})

    def truncate(self, i: int) -> Ring:
        """The ring on the first ``i`` variables."""
        return Ring(self.field, self.variables[:i])

    def parse(self, text: str) -> Polynomial:
        return _Parser(text, self).polynomial_only()


class Polynomial:
    """An immutable polynomial: a map from exponent tuples to nonzero field elements."""

    __slots__ = ("ring", "_coeffs", "_hash")

    def __init__(self, ring: Ring, coeffs: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean = {}
        if coeffs:
            F = ring.field
            d = ring.nvars
            for m, c in coeffs.items():
                if len(m) != d:
                    raise ValueError(f"monomial {m} not in a ring of dimension {d}")
                c = F(c)
                if c:
                    clean[tuple(m)] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, coeffs: dict) -> Polynomial:
        # coeffs already normalized with no zero entries
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @property
    def coeffs(self) -> Mapping[Monomial, object]:
        return dict(self._coeffs)

    def terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[object, Monomial]]:
        """(coefficient, monomial) pairs, strictly descending in ``order``."""
        return [(self._coeffs[m], m) for m in sorted(self._coeffs, key=order.key, reverse=True)]

    def monomials(self) -> list[Monomial]:
        return list(self._coeffs)

    def coefficient(self, m: Monomial):
        return self._coeffs.get(tuple(m), self.ring.field(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def degree(self) -> int:
        if not self._coeffs:
            return -1
        return max(sum(m) for m in self._coeffs)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._coeffs}) <= 1

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[object, Monomial]:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._coeffs, key=order.key)
        return self._coeffs[m], m

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self._coeffs:
            return self
        lc, _ = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc))

    def scale(self, c) -> Polynomial:
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        p = F.characteristic
        if p:
            return Polynomial._raw(self.ring, {m: v * c % p for m, v in self._coeffs.items()})
        return Polynomial._raw(self.ring, {m: v * c for m, v in self._coeffs.items()})

    def _check(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.ring.field.characteristic
        out: dict = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: v % p for m, v in out.items()}
        return Polynomial._raw(self.ring, {m: v for m, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def leading_term(f: Polynomial, order: MonomialOrder = GREVLEX) -> tuple[object, Monomial]:
    return f.leading_term(order)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.variables
    out = []
    for k, (c, m) in enumerate(f.terms(order)):
        neg = f.ring.field.characteristic == 0 and c < 0
        a = -c if neg else c
        mono = format_monomial(m, names)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --- linear changes of coordinates -------------------------------------------


def determinant(matrix: Sequence[Sequence], field: FieldSpec):
    """Exact determinant by Gaussian elimination over ``field``."""
    n = len(matrix)
    a = [[field(x) for x in row] for row in matrix]
    p = field.characteristic
    det = field(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return field(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = field.inv(pv)
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                if p:
                    a[r] = [x % p for x in a[r]]
    return det % p if p else det


def _inverse(matrix: Sequence[Sequence], field: FieldSpec) -> list[list]:
    n = len(matrix)
    p = field.characteristic
    a = [[field(x) for x in row] + [field(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [x * inv for x in a[col]]
        if p:
            a[col] = [x % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                if p:
                    a[r] = [x % p for x in a[r]]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class LinearChange:
    """An invertible substitution ``x_i -> sum_j g_ij x_j``."""

    matrix: tuple[tuple, ...]
    field: FieldSpec = QQ
    seed: int | None = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(self.field(x) for x in row) for row in self.matrix)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", rows)
        if not determinant(rows, self.field):
            raise ValueError("linear change is not invertible")

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, d: int, field: FieldSpec = QQ) -> LinearChange:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), field)

    def determinant(self):
        return determinant(self.matrix, self.field)

    def inverse(self) -> LinearChange:
        return LinearChange(tuple(map(tuple, _inverse(self.matrix, self.field))), self.field)


def substitute_linear(f: Polynomial, rows: Sequence[Sequence], target: Ring) -> Polynomial:
    """Substitute ``x_k -> sum_j rows[k][j] y_j`` where ``y`` are the variables of ``target``."""
    R = f.ring
    e = target.nvars
    if len(rows) != R.nvars or any(len(r) != e for r in rows):
        raise ValueError("substitution shape does not match the rings")
    unit = [tuple(int(j == k) for k in range(e)) for j in range(e)]
    images = [Polynomial(target, {unit[j]: row[j] for j in range(e)}) for row in rows]
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        if (i, k) not in powers:
            powers[(i, k)] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return powers[(i, k)]

    out: dict = {}
    p = target.field.characteristic
    for c, m in f.terms():
        term = target.constant(c)
        for i, k in enumerate(m):
            if k:
                term = term * power(i, k)
        for mono, v in term._coeffs.items():
            out[mono] = out.get(mono, 0) + v
    if p:
        out = {m: v % p for m, v in out.items()}
    return Polynomial._raw(target, {m: v for m, v in out.items() if v})


def apply_change(f: Polynomial, change: LinearChange) -> Polynomial:
    """Substitute ``x_i -> sum_j g_ij x_j`` into ``f``."""
    if change.dimension != f.ring.nvars:
        raise ValueError("dimension mismatch")
    if change.field != f.ring.field:
        raise ValueError("field mismatch")
    return substitute_linear(f, change.matrix, f.ring)


def substitute_zero(f: Polynomial, keep: int) -> Polynomial:
    """Set ``x_{keep+1} = ... = x_d = 0`` and view the result in the first ``keep`` variables."""
    S = f.ring.truncate(keep)
    coeffs = {m[:keep]: c for m, c in f._coeffs.items() if not any(m[keep:])}
    return Polynomial._raw(S, coeffs)


# --- ideal file format -------------------------------------------------------


class Ideal(NamedTuple):
    ring: Ring
    gens: tuple[Polynomial, ...]

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def field(self) -> FieldSpec:
        return self.ring.field


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class _Parser:
    text: str
    ring: Ring
    line: int = 1
    col_offset: int = 0
    pos: int = 0
    tokens: list = field(default_factory=list)

    def __post_init__(self) -> None:
        self.tokens = []
        for mt in _TOKEN.finditer(self.text):
            num, ident, sym = mt.groups()
            if num is None and ident is None and sym is None:
                continue
            start = mt.start(1) if num is not None else mt.start(2) if ident is not None else mt.start(3)
            kind = "num" if num is not None else "id" if ident is not None else sym
            self.tokens.append((kind, num or ident or sym, self.col_offset + start + 1))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, self.col_offset + len(self.text) + 1)

    def _error(self, msg: str, col: int | None = None) -> ParseError:
        return ParseError(msg, self.line, col if col is not None else self._peek()[2])

    def _take(self, kind: str):
        tok = self._peek()
        if tok[0] != kind:
            found = tok[1] if tok[0] else "end of line"
            raise self._error(f"expected {kind!r}, found {found!r}")
        self.pos += 1
        return tok

    def _factor(self) -> Polynomial:
        kind, val, col = self._peek()
        R = self.ring
        if kind == "num":
            self.pos += 1
            num = int(val)
            if self._peek()[0] == "/":
                self.pos += 1
                den = int(self._take("num")[1])
                if den == 0:
                    raise self._error("division by zero", col)
                try:
                    return R.constant(R.field(Fraction(num, den)))
                except ZeroDivisionError:
                    raise self._error(f"denominator {den} is zero in {R.field}", col) from None
            return R.constant(num)
        if kind == "id":
            self.pos += 1
            if val not in R.variables:
                raise self._error(f"unknown variable {val!r}", col)
            exp = 1
            if self._peek()[0] == "^":
                self.pos += 1
                exp = int(self._take("num")[1])
            return R.gen(R.variables.index(val)) ** exp
        found = val if kind else "end of line"
        raise self._error(f"expected a number or variable, found {found!r}", col)

    def _term(self) -> Polynomial:
        t = self._factor()
        while self._peek()[0] == "*":
            self.pos += 1
            t = t * self._factor()
        return t

    def polynomial(self) -> Polynomial:
        sign = 1
        if self._peek()[0] in ("+", "-"):
            sign = -1 if self._take(self._peek()[0])[0] == "-" else 1
        total = self._term().scale(sign)
        while self._peek()[0] in ("+", "-"):
            op = self._take(self._peek()[0])[0]
            t = self._term()
            total = total + t if op == "+" else total - t
        return total

    def polynomial_only(self) -> Polynomial:
        f = self.polynomial()
        if self._peek()[0] is not None:
            raise self._error(f"unexpected {self._peek()[1]!r}")
        return f

    def polynomial_list(self) -> list[tuple[Polynomial, int]]:
        out = []
        while True:
            col = self._peek()[2]
            out.append((self.polynomial(), col))
            if self._peek()[0] == ",":
                self.pos += 1
                continue
            if self._peek()[0] is None:
                return out
            raise self._error(f"unexpected {self._peek()[1]!r}")


def parse_ideal(text: str) -> Ideal:
    """Parse the line-oriented ideal format (``field``, ``vars``, ``gens``)."""
    field_spec: FieldSpec | None = None
    variables: tuple[str, ...] | None = None
    gens_lines: list[tuple[int, int, str]] = []
    in_gens = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        keyword, _, rest = stripped.partition(" ")
        rest_col = line.index(stripped) + len(keyword) + 1
        if keyword == "field":
            in_gens = False
            args = rest.split()
            if args == ["Q"]:
                field_spec = QQ
            elif len(args) == 2 and args[0] == "Fp" and args[1].isdigit():
                p = int(args[1])
                if not _is_prime(p):
                    raise ParseError(f"characteristic {p} is not prime", lineno, rest_col + 1)
                field_spec = FieldSpec(p)
            else:
                raise ParseError("expected 'field Q' or 'field Fp <prime>'", lineno, rest_col + 1)
        elif keyword == "vars":
            in_gens = False
            names = rest.split()
            if not names:
                raise ParseError("no variables declared", lineno, rest_col + 1)
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                    raise ParseError(f"invalid variable name {nm!r}", lineno, line.index(nm) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable names", lineno, rest_col + 1)
            variables = tuple(names)
        elif keyword == "gens":
            in_gens = True
            gens_lines.append((lineno, rest_col, rest))
        elif in_gens:
            gens_lines.append((lineno, line.index(stripped), stripped))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, line.index(stripped) + 1)
    if field_spec is None:
        field_spec = QQ
    if variables is None:
        raise ParseError("missing 'vars' line")
    ring = Ring(field_spec, variables)
    gens: list[Polynomial] = []
    for lineno, offset, chunk in gens_lines:
        if not chunk.strip():
            continue
        parser = _Parser(chunk.strip().rstrip(","), ring, line=lineno, col_offset=offset + len(chunk) - len(chunk.lstrip()))
        for f, col in parser.polynomial_list():
            if not f.is_homogeneous:
                raise ParseError(f"generator {f} is not homogeneous", lineno, col)
            if f and f not in gens:
                gens.append(f)
    return Ideal(ring, tuple(gens))


def format_ideal(ideal: Ideal) -> str:
    """Render in canonical form; ``parse_ideal`` inverts this."""
    ring, gens = ideal
    lines = [f"field {ring.field}", "vars " + " ".join(ring.variables)]
    if gens:
        lines.append("gens " + ", ".join(format_polynomial(g) for g in gens))
    return "\n".join(lines) + "\n"


def make_ideal(ring: Ring, gens: Iterable[Polynomial | str]) -> Ideal:
    """Build an ideal from polynomials or strings, dropping zeros and duplicates."""
    out: list[Polynomial] = []
    for g in gens:
        f = ring.parse(g) if isinstance(g, str) else g
        if f.ring != ring:
            raise ValueError("ring mismatch")
        if not f.is_homogeneous:
            raise ValueError(f"generator {f} is not homogeneous")
        if f and f not in out:
            out.append(f)
    return Ideal(ring, tuple(out))
