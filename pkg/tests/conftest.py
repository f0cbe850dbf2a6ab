import random
from pathlib import Path

import pytest

from axialreg.monideal import MonomialIdeal
from axialreg.poly import QQ, Ideal, Polynomial, Ring, monomials_of_degree, parse_ideal

IDEALS = Path(__file__).resolve().parent.parent / "ideals"

STABLE6 = """\
field Q
vars x1 x2 x3 x4 x5 x6
gens x1^2, x1*x2, x1*x3, x1*x4, x1*x5, x1*x6, x2^3, x2^2*x3, x2*x3^3, x2*x3^2*x4, x3^5
"""

CHARP = "field Fp 3\nvars x y z\ngens x^3, y^3, z^3\n"


def monomial_ideal(d, *gens):
    return MonomialIdeal(d, tuple(tuple(g) for g in gens))


def random_ideal(seed, d=None, max_gens=3, max_deg=3, max_terms=4):
    """A seeded homogeneous ideal over Q with at most ``max_gens`` generators."""
    rng = random.Random(seed)
    d = d or rng.choice((3, 4))
    R = Ring.standard(d, QQ)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        t = rng.randint(2, max_deg)
        ms = monomials_of_degree(d, t)
        chosen = rng.sample(ms, rng.randint(1, min(max_terms, len(ms))))
        f = Polynomial(R, {m: rng.choice((-1, 1)) * rng.randint(1, 9) for m in chosen})
        if f not in gens:
            gens.append(f)
    return Ideal(R, tuple(gens))


def random_strongly_stable(seed, d=None, max_gens=4, max_deg=4):
    """Borel closure of a few random monomials, giving a strongly stable ideal."""
    from axialreg.monideal import is_strongly_stable

    rng = random.Random(seed)
    d = d or rng.randint(2, 4)
    seeds = [rng.choice(monomials_of_degree(d, rng.randint(1, max_deg))) for _ in range(rng.randint(1, max_gens))]
    closure = set()
    todo = list(seeds)
    while todo:
        u = todo.pop()
        if u in closure:
            continue
        closure.add(u)
        for j in range(d):
            if u[j]:
                for i in range(j):
                    v = list(u)
                    v[j] -= 1
                    v[i] += 1
                    todo.append(tuple(v))
    J = MonomialIdeal(d, tuple(closure))
    assert is_strongly_stable(J)
    return J


@pytest.fixture(scope="session")
def stable6():
    return parse_ideal(STABLE6)


@pytest.fixture(scope="session")
def charp():
    return parse_ideal(CHARP)
