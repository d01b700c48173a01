"""Structural certificates: orbit-size maximality, kernel-size minimality,
constant rank, constant orbit dimension.

The sufficient criterion for the two extremal properties is graded: a module
is certified when, for each degree i up to the generic rank, every pure power
X_j^i lies in the Q-span of the i x i minors of the relevant linear-form
matrix.  Those minors are homogeneous of degree i, so membership in the ideal
they generate can be decided degree by degree with plain linear algebra; no
Groebner machinery is required.

Certificates are generic: they hold for all primes p except those dividing
the denominators of the certifying linear combinations (and, for kernel-size
minimality, primes at which the module is not isolated).  Refutations store a
concrete rational point where the rank degenerates, found by deterministic
candidates first and seeded random search after.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InputError, InternalConsistencyError
from .linalg import rank_mod_p
from .module import MatrixModule
from .poly import bareiss_det
from .primes import factorize
from .ratfun import QTRational
from .closed_forms import constant_rank_form, mat_form

DEFAULT_MINOR_BUDGET = 10**6
DEFAULT_WITNESS_TRIALS = 10**4


@dataclass(frozen=True)
class Certificate:
    """Outcome of a sufficiency test: certified, refuted, or inconclusive.

    certified: `combinations` maps each target pure power to the coefficients
    of a linear combination of minors equal to it; `excluded_primes` lists
    primes where the certificate degenerates.  refuted: `witness` is a point
    with rank strictly below the generic one.  inconclusive: see `reason`.
    """

    status: str
    witness: tuple | None = None
    witness_rank: int | None = None
    excluded_primes: tuple[int, ...] = ()
    combinations: dict = field(default_factory=dict, compare=False)
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _all_minors(rows, size, budget):
    """Deduplicated nonzero size x size minors of a Poly matrix."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    count = comb(nr, size) * comb(nc, size)
    if count > budget:
        return None, count
    seen = set()
    minors = []
    for rsel in combinations(range(nr), size):
        sub = [rows[i] for i in rsel]
        for csel in combinations(range(nc), size):
            det = bareiss_det([[row[j] for j in csel] for row in sub])
            if det.is_zero():
                continue
            normed = det.normalized()
            if normed not in seen:
                seen.add(normed)
                minors.append(det)
    return minors, count


def _monomial_span_test(rows, generic_rank, nvars, budget):
    """Check X_j^i in span of the i x i minors for all i <= generic_rank.

    Returns (ok, combinations, excluded_primes) or (None, reason) when over
    budget.  Every minor of a linear-form matrix must be homogeneous of its
    size; this is asserted per run.
    """
    combos = {}
    denominators = set()
    for i in range(1, generic_rank + 1):
        minors, count = _all_minors(rows, i, budget)
        if minors is None:
            return None, f"degree {i} needs {count} minors (budget {budget})"
        if not minors:
            # every minor vanished although i <= generic rank: no pure power
            # can be in the span
            return (False, (0, i)), None
        for m in minors:
            if not m.is_homogeneous(i):
                raise InternalConsistencyError(
                    "minor of a linear-form matrix is not homogeneous"
                )
        # monomial basis of degree i
        monos = sorted(_monomials(nvars, i))
        index = {m: k for k, m in enumerate(monos)}
        # columns are minors, rows are monomials; solve A c = e(X_j^i)
        a_rows = [[Fraction(0)] * len(minors) for _ in monos]
        for col, m in enumerate(minors):
            for e, c in m.terms.items():
                a_rows[index[e]][col] = Fraction(c)
        targets = []
        for j in range(nvars):
            target_exp = tuple(i if t == j else 0 for t in range(nvars))
            targets.append([Fraction(int(e == target_exp)) for e in monos])
        sols = _solve_multi(a_rows, targets)
        for j, sol in enumerate(sols):
            if sol is None:
                return (False, (j, i)), None
            combos[(j, i)] = sol
            for c in sol:
                denominators.add(c.denominator)
    primes = set()
    for den in denominators:
        for p in factorize(den):
            primes.add(p)
    return (True, combos), tuple(sorted(primes))


def _solve_multi(a_rows, targets):
    """Solutions of A c = t for several right-hand sides with one elimination.

    Pivot search is restricted to the columns of A, so the target columns are
    never used for elimination; a target is inconsistent exactly when it has
    a nonzero entry in a row whose A-part was cleared.
    """
    ncols = len(a_rows[0]) if a_rows else 0
    aug = [list(row) + [t[i] for t in targets] for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    sols = []
    for idx in range(len(targets)):
        col = ncols + idx
        if any(aug[i][col] for i in range(r, len(aug))):
            sols.append(None)
            continue
        sol = [Fraction(0)] * ncols
        for row_i, c in enumerate(pivots):
            sol[c] = aug[row_i][col]
        sols.append(tuple(sol))
    return sols


def _monomials(nvars, degree):
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for k in range(degree + 1):
        for rest in _monomials(nvars - 1, degree - k):
            out.append((k,) + rest)
    return out


def _search_degenerate_point(rows, nvars, generic_rank, trials, seed):
    """A rational point where the matrix rank drops below generic_rank, or None.

    Unit vectors and small patterned points are tried before random ones.
    """
    from .poly import evaluated_rank

    def rank_at(point):
        return evaluated_rank(rows, point)

    candidates = []
    for j in range(nvars):
        candidates.append(tuple(int(t == j) for t in range(nvars)))
    for j in range(nvars):
        candidates.append(tuple(int(t != j) for t in range(nvars)))
    rng = random.Random(seed)
    for t in range(trials):
        if t < len(candidates):
            point = candidates[t]
        else:
            bound = 2 + t // 100
            point = tuple(rng.randint(-bound, bound) for _ in range(nvars))
            if not any(point):
                continue
        r = rank_at(point)
        if r < generic_rank:
            return point, r
    return None, None


def check_o_maximal(
    m: MatrixModule,
    budget: int = DEFAULT_MINOR_BUDGET,
    trials: int = DEFAULT_WITNESS_TRIALS,
    seed: int = 0,
) -> Certificate:
    """Certify or refute that orbit sizes are generically as large as possible.

    Certification implies the coefficient stream of M equals that of the full
    matrix module mat(d, gor) for every prime outside `excluded_primes`.
    """
    gor = m.generic_orbit_rank()
    rows = m.orbit_matrix()
    if gor == 0:
        return Certificate("certified")
    result, extra = _monomial_span_test(rows, gor, m.d, budget)
    if result is None:
        return Certificate("inconclusive", reason=extra)
    ok, payload = result
    if ok:
        return Certificate("certified", combinations=payload, excluded_primes=extra)
    witness, r = _search_degenerate_point(rows, m.d, gor, trials, seed)
    if witness is not None:
        return Certificate("refuted", witness=witness, witness_rank=r)
    j, i = payload
    return Certificate(
        "inconclusive",
        reason=f"X_{j + 1}^{i} not in the degree-{i} minor span; no witness found",
    )


def check_k_minimal(
    m: MatrixModule,
    budget: int = DEFAULT_MINOR_BUDGET,
    trials: int = DEFAULT_WITNESS_TRIALS,
    seed: int = 0,
) -> Certificate:
    """Certify or refute that kernel sizes are generically as small as possible.

    Certification needs the monomial test on the minors of the generic element
    and isolation of the lattice; primes dividing an elementary divisor are
    excluded rather than fatal.
    """
    grk = m.generic_element_rank()
    rows = m.element_matrix()
    excluded = set()
    for s in m.elementary_divisors():
        for p in factorize(s):
            excluded.add(p)
    if grk == 0:
        return Certificate("certified", excluded_primes=tuple(sorted(excluded)))
    result, extra = _monomial_span_test(rows, grk, m.dim, budget)
    if result is None:
        return Certificate("inconclusive", reason=extra)
    ok, payload = result
    if ok:
        for p in extra:
            excluded.add(p)
        return Certificate(
            "certified", combinations=payload, excluded_primes=tuple(sorted(excluded))
        )
    witness, r = _search_degenerate_point(rows, m.dim, grk, trials, seed)
    if witness is not None:
        return Certificate("refuted", witness=witness, witness_rank=r)
    j, i = payload
    return Certificate(
        "inconclusive",
        reason=f"X_{j + 1}^{i} not in the degree-{i} minor span; no witness found",
    )


def check_constant_rank_fq(m: MatrixModule, q: int, budget: int = 10**7):
    """Brute-force test over F_q: do all nonzero elements share one rank?

    Returns (flag, rank); the zero module reports (True, 0).  Enumerates
    projective representatives, so the cost is (q^dim - 1)/(q - 1) points.
    """
    ell = m.dim
    if q**ell > budget:
        raise InputError(f"q^dim = {q ** ell} exceeds budget {budget}")
    if ell == 0:
        return True, 0
    ranks = set()
    # projective representatives: first nonzero coordinate equal to 1
    for j in range(ell):
        for tail in _tuples(q, ell - 1 - j):
            coeffs = (0,) * j + (1,) + tail
            a = [[0] * m.e for _ in range(m.d)]
            for c, b in zip(coeffs, m.basis):
                if c:
                    for r, row in enumerate(b.entries):
                        for s, v in enumerate(row):
                            if v:
                                a[r][s] += c * v
            ranks.add(rank_mod_p(a, q))
            if len(ranks) > 1:
                return False, None
    rank = ranks.pop()
    return True, rank


def _tuples(q, k):
    if k == 0:
        yield ()
        return
    for head in range(q):
        for rest in _tuples(q, k - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class StructureReport:
    grk: int
    gor: int
    o_maximal: Certificate
    k_minimal: Certificate
    constant_orbit_dim: str
    constant_rank: str
    template_key: str | None
    template: QTRational | None


def structure_report(
    m: MatrixModule,
    budget: int = DEFAULT_MINOR_BUDGET,
    trials: int = DEFAULT_WITNESS_TRIALS,
    seed: int = 0,
) -> StructureReport:
    """Run both certificates and name the closed-form template that applies.

    Orbit-maximality selects the full-matrix template mat(d, gor); kernel
    minimality selects the constant-rank template with (d, dim, grk).  If both
    certify, the two templates must agree as rational functions.
    """
    o_cert = check_o_maximal(m, budget, trials, seed)
    k_cert = check_k_minimal(m, budget, trials, seed)
    template_key = None
    template = None
    if o_cert.certified:
        template_key = f"mat({m.d},{m.generic_orbit_rank()})"
        template = mat_form(m.d, m.generic_orbit_rank())
    if k_cert.certified:
        k_template = constant_rank_form(m.d, m.dim, m.generic_element_rank())
        if template is not None:
            if template != k_template:
                raise InternalConsistencyError(
                    "orbit-maximal and kernel-minimal templates disagree"
                )
        else:
            template_key = f"constant_rank({m.d},{m.dim},{m.generic_element_rank()})"
            template = k_template
    return StructureReport(
        grk=m.generic_element_rank(),
        gor=m.generic_orbit_rank(),
        o_maximal=o_cert,
        k_minimal=k_cert,
        constant_orbit_dim=o_cert.status,
        constant_rank=k_cert.status,
        template_key=template_key,
        template=template,
    )
