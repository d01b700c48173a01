"""Exact computation of average kernel sizes over Z/p^n by two independent routes.

Both engines compute the same rational number:

  * ask_average runs over the coefficient space (Z/p^n)^l of the canonical
    basis and averages |Ker(sum c_i b_i)|.  The coefficient-tuple map onto
    the module has equal-size fibers, so the average is unchanged.
  * ask_orbit runs over the acted-on space (Z/p^n)^d and sums 1/|x M|,
    where x M is the row span of the orbit matrix evaluated at any integer
    lift of x.

Enumeration is compressed by scalar symmetry: kernels and spans are invariant
under multiplying the coefficient tuple (resp. the point x) by a unit, so
each unit-scaling class is visited once and weighted by its size.  Nonzero x
decompose uniquely as p^w times a primitive vector mod p^(n-w).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetExceededError, InputError, InternalConsistencyError
from .intmat import IntMatrix
from .module import MatrixModule
from .zpn import RingSpec, kernel_size_mod, lambdas_mod

DEFAULT_BUDGET = 10**8


def _unit_class_reps_at(p: int, m: int, k: int, j: int):
    """Representatives whose first unit coordinate sits at position j."""
    pm = p**m
    nonunits = range(0, pm, p)
    for lo in product(nonunits, repeat=j):
        for hi in product(range(pm), repeat=k - 1 - j):
            yield lo + (1,) + hi


def _unit_class_reps(p: int, m: int, k: int):
    """Canonical representatives of primitive vectors in (Z/p^m)^k modulo units.

    The first unit coordinate is scaled to 1; coordinates before it run over
    multiples of p, coordinates after it are free.  The pivot position j
    partitions the representatives into disjoint blocks, which is also the
    work split used by parallel enumeration.
    """
    for j in range(k):
        yield from _unit_class_reps_at(p, m, k, j)


def _sparse_basis(m: MatrixModule):
    """Per-basis-element nonzero triples (row, col, value)."""
    out = []
    for b in m.basis:
        trip = []
        for i, row in enumerate(b.entries):
            for j, v in enumerate(row):
                if v:
                    trip.append((i, j, v))
        out.append(tuple(trip))
    return tuple(out)


def _average_partial(payload):
    """Kernel-size sum over one representative block; pure, for any scheduler."""
    triples, p, n, w, pivot, ell, d, e = payload
    cap = n - w
    part = 0
    for c in _unit_class_reps_at(p, cap, ell, pivot):
        a = [[0] * e for _ in range(d)]
        for coeff, trip in zip(c, triples):
            if coeff:
                for i, j, v in trip:
                    a[i][j] += coeff * v
        lams = lambdas_mod(a, p, cap)
        exp = sum(lams) + w * len(lams) + (d - len(lams)) * n
        part += p**exp
    return w, part


def _orbit_partial(payload):
    """Orbit-size exponent counts over one representative block."""
    triples, p, n, w, pivot, ell, d, e = payload
    cap = n - w
    counts: dict[int, int] = {}
    for x in _unit_class_reps_at(p, cap, d, pivot):
        rows = []
        for trip in triples:
            row = [0] * e
            for i, j, v in trip:
                xi = x[i]
                if xi:
                    row[j] += xi * v
            rows.append(row)
        lams = lambdas_mod(rows, p, cap)
        exp = sum(cap - lv for lv in lams)
        counts[exp] = counts.get(exp, 0) + 1
    return w, counts


def _run_partials(worker, payloads, jobs):
    if jobs > 1 and len(payloads) > 1:
        from multiprocessing import Pool

        with Pool(processes=min(jobs, len(payloads))) as pool:
            return pool.map(worker, payloads)
    return [worker(pl) for pl in payloads]


def ask_average(
    m: MatrixModule, ring: RingSpec, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> Fraction:
    """Average size of the kernel of a random element of M over Z/p^n.

    Enumerates coefficient tuples; the point count p^(l*n) must stay within
    the budget.  `jobs` splits the representative blocks across processes;
    the result does not depend on the split.
    """
    p, n = ring.p, ring.n
    if n == 0:
        return Fraction(1)
    ell, d, e = m.dim, m.d, m.e
    points = p ** (ell * n)
    if points > budget:
        raise BudgetExceededError(points, budget, "try the orbit method")
    triples = _sparse_basis(m)
    payloads = [
        (triples, p, n, w, pivot, ell, d, e)
        for w in range(n)
        for pivot in range(ell)
    ]
    total = Fraction(p ** (d * n))  # zero tuple: the kernel is everything
    for w, part in _run_partials(_average_partial, payloads, jobs):
        weight = p ** (n - w - 1) * (p - 1)
        total += weight * part
    return total / p ** (ell * n)


def ask_orbit(
    m: MatrixModule, ring: RingSpec, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> Fraction:
    """Sum over x in (Z/p^n)^d of the reciprocal orbit size |x M|.

    Equals ask_average exactly.  The point count p^(d*n) must stay within
    the budget.
    """
    p, n = ring.p, ring.n
    if n == 0:
        return Fraction(1)
    ell, d, e = m.dim, m.d, m.e
    points = p ** (d * n)
    if points > budget:
        raise BudgetExceededError(points, budget, "try the average method")
    # rows of the orbit matrix at x: row i is x * b_i; triples indexed by x-coord
    triples = _sparse_basis(m)
    payloads = [
        (triples, p, n, w, pivot, ell, d, e)
        for w in range(n)
        for pivot in range(d)
    ]
    total = Fraction(1)  # x = 0 has a one-point orbit
    for w, counts in _run_partials(_orbit_partial, payloads, jobs):
        weight = p ** (n - w - 1) * (p - 1)
        for exp, cnt in counts.items():
            total += weight * Fraction(cnt, p**exp)
    return total


@dataclass(frozen=True)
class AskValue:
    """One coefficient: the exact average kernel size at level n."""

    value: Fraction
    p: int
    n: int
    method: str

    def __post_init__(self):
        if self.value < 1:
            raise InternalConsistencyError(f"ask value {self.value} < 1")


@dataclass(frozen=True)
class CoeffSeq:
    """Coefficients for n = 0 .. n_max at a fixed prime."""

    p: int
    values: tuple[AskValue, ...]

    def coefficients(self) -> list[Fraction]:
        return [v.value for v in self.values]


def ask_series(
    m: MatrixModule,
    p: int,
    n_max: int,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> CoeffSeq:
    """Coefficients ask(M, Z/p^n) for n = 0 .. n_max.

    method "auto" picks the cheaper enumeration per level; "both" runs the
    two engines and insists on exact agreement.
    """
    if method not in ("auto", "average", "orbit", "both"):
        raise InputError(f"unknown method {method!r}")
    values = []
    for n in range(n_max + 1):
        ring = RingSpec(p, n)
        if n == 0:
            values.append(AskValue(Fraction(1), p, 0, "trivial"))
            continue
        chosen = method
        if method == "auto":
            cost_avg = p ** (m.dim * n)
            cost_orb = p ** (m.d * n)
            if min(cost_avg, cost_orb) > budget:
                raise BudgetExceededError(min(cost_avg, cost_orb), budget)
            chosen = "average" if cost_avg < cost_orb else "orbit"
        if chosen == "both":
            va = ask_average(m, ring, budget, jobs)
            vo = ask_orbit(m, ring, budget, jobs)
            if va != vo:
                raise InternalConsistencyError(
                    f"engines disagree at (p, n) = ({p}, {n}): {va} != {vo}"
                )
            values.append(AskValue(va, p, n, "both"))
        elif chosen == "average":
            values.append(
                AskValue(ask_average(m, ring, budget, jobs), p, n, "average")
            )
        else:
            values.append(AskValue(ask_orbit(m, ring, budget, jobs), p, n, "orbit"))
    return CoeffSeq(p, tuple(values))


def ask_mod_composite(
    m: MatrixModule, modulus: int, budget: int = DEFAULT_BUDGET
) -> Fraction:
    """Average kernel size of M over Z/N for an arbitrary modulus N >= 1."""
    if modulus < 1:
        raise InputError("modulus must be >= 1")
    if modulus == 1:
        return Fraction(1)
    ell, d = m.dim, m.d
    points = modulus**ell
    if points > budget:
        raise BudgetExceededError(points, budget)
    total = 0
    for c in product(range(modulus), repeat=ell):
        a = [[0] * m.e for _ in range(d)]
        for coeff, b in zip(c, m.basis):
            if coeff:
                for i, row in enumerate(b.entries):
                    for j, v in enumerate(row):
                        if v:
                            a[i][j] += coeff * v
        total += kernel_size_mod(IntMatrix(a), modulus)
    return Fraction(total, points)


def rank_distribution(d: int, e: int, r: int, q: int) -> int:
    """Number of d x e matrices of rank r over the field with q elements."""
    if not 0 <= r <= min(d, e):
        raise InputError(f"rank {r} out of range for {d} x {e}")
    value = Fraction(1)
    for i in range(r):
        value *= Fraction((q**e - q**i) * (q ** (d - i) - 1), q ** (i + 1) - 1)
    if value.denominator != 1:
        raise InternalConsistencyError("rank count is not an integer")
    return int(value)
