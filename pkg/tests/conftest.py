"""Shared brute-force oracles and random generators for the test suite.

The oracles enumerate vector spaces directly and never touch the reduction
code they are checking.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from askzeta import IntMatrix, MatrixModule


def brute_kernel_size(a: IntMatrix, p: int, n: int) -> int:
    """Count x in (Z/p^n)^d with x*a = 0 mod p^n by full enumeration."""
    m = p**n
    d, e = a.shape
    count = 0
    for x in product(range(m), repeat=d):
        if all(
            sum(x[k] * a.entries[k][j] for k in range(d)) % m == 0 for j in range(e)
        ):
            count += 1
    return count


def brute_image_size(a: IntMatrix, p: int, n: int) -> int:
    m = p**n
    d, e = a.shape
    seen = set()
    for x in product(range(m), repeat=d):
        seen.add(
            tuple(sum(x[k] * a.entries[k][j] for k in range(d)) % m for j in range(e))
        )
    return len(seen)


def brute_ask(mod: MatrixModule, p: int, n: int) -> Fraction:
    """Average kernel size by enumerating coefficient tuples and vectors."""
    if n == 0:
        return Fraction(1)
    m = p**n
    total = 0
    count = 0
    for coeffs in product(range(m), repeat=mod.dim):
        a = [[0] * mod.e for _ in range(mod.d)]
        for c, b in zip(coeffs, mod.basis):
            for i, row in enumerate(b.entries):
                for j, v in enumerate(row):
                    a[i][j] += c * v
        total += brute_kernel_size(IntMatrix(a), p, n)
        count += 1
    return Fraction(total, count)


def brute_kernel_size_mod(a: IntMatrix, modulus: int) -> int:
    d, e = a.shape
    count = 0
    for x in product(range(modulus), repeat=d):
        if all(
            sum(x[k] * a.entries[k][j] for k in range(d)) % modulus == 0
            for j in range(e)
        ):
            count += 1
    return count


def random_module(rng: random.Random, dmax=3, emax=3, lmax=4, bound=5) -> MatrixModule:
    d = rng.randint(1, dmax)
    e = rng.randint(1, emax)
    ell = rng.randint(1, lmax)
    basis = [
        [[rng.randint(-bound, bound) for _ in range(e)] for _ in range(d)]
        for _ in range(ell)
    ]
    return MatrixModule(d, e, basis)


def random_int_matrix(rng: random.Random, d: int, e: int, bound=9) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(e)] for _ in range(d)])


def random_unimodular(rng: random.Random, size: int, steps: int = 12) -> IntMatrix:
    """Product of random elementary row operations; determinant +-1."""
    rows = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(steps):
        i, j = rng.randrange(size), rng.randrange(size)
        if i == j:
            continue
        c = rng.randint(-3, 3)
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    if rng.random() < 0.5:
        rows[0] = [-x for x in rows[0]]
    return IntMatrix(rows)


def random_nilpotent(rng: random.Random, d: int, bound=4) -> IntMatrix:
    """A conjugate u N u^-1 of a strictly upper triangular N, scaled integral."""
    n = [[rng.randint(-bound, bound) if j > i else 0 for j in range(d)] for i in range(d)]
    u = random_unimodular(rng, d)
    # integer inverse of a unimodular matrix via rational elimination
    from askzeta.linalg import frac_rref

    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == k)) for k in range(d)]
        for i, row in enumerate(u.entries)
    ]
    red, _ = frac_rref(aug)
    uinv = IntMatrix([[int(v) for v in row[d:]] for row in red])
    return u @ IntMatrix(n) @ uinv


@pytest.fixture
def rng():
    return random.Random(20260810)
