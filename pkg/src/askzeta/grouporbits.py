"""Finite-level group computations: orbits on (Z/p^n)^d, conjugacy classes of
unipotent groups, and nilpotent exponentials.

Conventions: groups act on row vectors from the right.  Group elements mod
p^n are stored as flat tuples of reduced entries, which makes closure and
orbit bookkeeping plain set operations.  Orbit enumeration applies generators
only (no inverses): every generator acts with finite order on a finite set,
so forward closure already yields the group orbits.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .engine import DEFAULT_BUDGET, ask_series
from .errors import BudgetExceededError, InputError
from .intmat import IntMatrix, from_flat
from .linalg import matrix_inverse_mod
from .module import MatrixModule, ad_representation
from .poly import char_poly_is_pure_power
from .primes import primitive_root
from .zpn import RingSpec, equivalence_type


@dataclass(frozen=True)
class GroupGenSet:
    """Generators of a subgroup of GL_d(Z); must be invertible mod the primes
    they are used at."""

    d: int
    generators: tuple[IntMatrix, ...]
    label: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.shape != (self.d, self.d):
                raise InputError("generator shape mismatch")

    def check_invertible(self, p: int):
        for g in self.generators:
            if equivalence_type(g, p) != (0,) * self.d:
                raise InputError(f"generator not invertible mod {p}")


class NilpotentAlgebra:
    """A module of nilpotent matrices closed under commutators.

    Construction verifies: square shape, every basis matrix nilpotent, the
    span generically nilpotent (characteristic polynomial of the generic
    combination is a pure power), commutator closure with integer structure
    constants, and computes the associative nilpotency class: the smallest c
    such that all products of c+1 basis elements vanish.
    """

    def __init__(self, module: MatrixModule):
        if module.d != module.e:
            raise InputError("nilpotent algebra needs square matrices")
        d = module.d
        for b in module.basis:
            if not b.matpow(d).is_zero():
                raise InputError("basis element is not nilpotent")
        if not char_poly_is_pure_power(module.element_matrix()):
            raise InputError("generic combination is not nilpotent")
        ad_representation(module)  # raises unless Lie-closed with integer constants
        self.module = module
        self.nilpotency_class = self._nilpotency_class()

    @classmethod
    def from_basis(cls, d: int, basis, label: str = "") -> "NilpotentAlgebra":
        return cls(MatrixModule(d, d, basis, label))

    @property
    def d(self) -> int:
        return self.module.d

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def label(self) -> str:
        return self.module.label

    def _nilpotency_class(self) -> int:
        span = list(self.module.basis)
        c = 0
        while span:
            c += 1
            from .linalg import hermite_form

            nxt = []
            for b in self.module.basis:
                for s in span:
                    prod_mat = b @ s
                    if not prod_mat.is_zero():
                        nxt.append(prod_mat.flat())
            span = [from_flat(r, self.d, self.d) for r in hermite_form(nxt)]
            if c > self.d:
                raise InputError("products do not terminate; not nilpotent")
        # after the loop, products of length c+1 vanish and length c did not
        return c

    def identity_hypothesis_warnings(self, p: int) -> list[str]:
        """Hypotheses for the orbit/conjugacy identities: p >= d and isolation."""
        out = []
        if p < self.d:
            out.append(f"p = {p} < matrix size {self.d}")
        if not self.module.is_isolated_at(p):
            out.append(f"lattice not isolated at p = {p}")
        return out

    def __repr__(self):
        return f"NilpotentAlgebra({self.label or self.module!r}, class {self.nilpotency_class})"


def catalog_algebra(key: str) -> NilpotentAlgebra:
    """Nilpotent algebra models by catalog key ("L_{3,2}", "n(4)", ...)."""
    from .catalog import catalog_module

    return NilpotentAlgebra(catalog_module(key))


# -- exponential and logarithm ---------------------------------------------


def exp_nilpotent(a: IntMatrix, ring: RingSpec) -> IntMatrix:
    """exp(a) mod p^n for a nilpotent integer matrix; needs p >= d so that the
    factorials 1/i! for i < d are units."""
    if a.rows != a.cols:
        raise InputError("exp of a non-square matrix")
    d = a.rows
    power = a.matpow(d)
    if ring.n:
        power = power.mod(ring.modulus)
    if not power.is_zero():
        raise InputError("matrix is not nilpotent")
    if ring.p < d:
        raise InputError(
            f"exp undefined: factorial denominators not invertible for p < {d}"
        )
    if ring.n == 0:
        return IntMatrix.zeros(0, 0) if d == 0 else IntMatrix.zeros(d, d)
    m = ring.modulus
    result = IntMatrix.identity(d)
    term = IntMatrix.identity(d)
    for i in range(1, d):
        term = term @ a
        inv = pow(factorial(i), -1, m)
        result = result + inv * term
    return result.mod(m)


def log_unipotent(u: IntMatrix, ring: RingSpec) -> IntMatrix:
    """log(u) mod p^n for u = 1 + nilpotent; inverse of exp_nilpotent."""
    if u.rows != u.cols:
        raise InputError("log of a non-square matrix")
    d = u.rows
    nil = u - IntMatrix.identity(d)
    if ring.n and not nil.matpow(d).mod(ring.modulus).is_zero():
        raise InputError("matrix is not unipotent")
    if ring.p < d:
        raise InputError(
            f"log undefined: integer denominators not invertible for p < {d}"
        )
    if ring.n == 0:
        return IntMatrix.zeros(d, d)
    m = ring.modulus
    result = IntMatrix.zeros(d, d)
    term = IntMatrix.identity(d)
    for i in range(1, d):
        term = term @ nil
        coeff = pow(i, -1, m)
        if i % 2 == 0:
            coeff = -coeff
        result = result + coeff * term
    return result.mod(m)


# -- orbit counting on (Z/p^n)^d --------------------------------------------


def _flat_mul(a, b, d, m):
    out = []
    for i in range(d):
        ai = a[i * d : (i + 1) * d]
        for j in range(d):
            s = 0
            for k in range(d):
                v = ai[k]
                if v:
                    s += v * b[k * d + j]
            out.append(s % m)
    return tuple(out)


def _vec_mul(x, g, d, m):
    return tuple(
        sum(x[k] * g[k * d + j] for k in range(d) if x[k]) % m for j in range(d)
    )


def orbit_count_vectors(gens_flat, d: int, p: int, n: int, budget: int) -> int:
    """Number of orbits of the generated group on (Z/p^n)^d by BFS."""
    if n == 0:
        return 1
    size = p ** (d * n)
    if size > budget:
        raise BudgetExceededError(size, budget)
    m = p**n
    seen = bytearray((size + 7) // 8)
    # lexicographic index of x = sum x_i m^(d-1-i)
    weights = [m ** (d - 1 - i) for i in range(d)]
    orbits = 0
    idx = 0
    for x in product(range(m), repeat=d):
        if seen[idx >> 3] & (1 << (idx & 7)):
            idx += 1
            continue
        orbits += 1
        stack = [x]
        seen[idx >> 3] |= 1 << (idx & 7)
        while stack:
            y = stack.pop()
            for g in gens_flat:
                z = _vec_mul(y, g, d, m)
                zi = sum(v * w for v, w in zip(z, weights))
                if not seen[zi >> 3] & (1 << (zi & 7)):
                    seen[zi >> 3] |= 1 << (zi & 7)
                    stack.append(z)
        idx += 1
    return orbits


def oc_coefficients(
    group: GroupGenSet, p: int, n_max: int, budget: int = DEFAULT_BUDGET
) -> list[int]:
    """Orbit counts of the group on (Z/p^n)^d for n = 0 .. n_max."""
    group.check_invertible(p)
    out = []
    for n in range(n_max + 1):
        m = p**n
        gens = [g.mod(m).flat() for g in group.generators] if n else []
        out.append(orbit_count_vectors(gens, group.d, p, n, budget))
    return out


# -- group closure and conjugacy classes ------------------------------------


def group_closure(gens_flat, d: int, m: int, budget: int):
    """All elements of the subgroup generated by the given units mod m."""
    identity = tuple(
        1 if i == j else 0 for i in range(d) for j in range(d)
    )
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens_flat:
                prod_el = _flat_mul(el, g, d, m)
                if prod_el not in seen:
                    seen.add(prod_el)
                    if len(seen) > budget:
                        raise BudgetExceededError(len(seen), budget, "group too large")
                    nxt.append(prod_el)
        frontier = nxt
    return seen


def conjugacy_class_count(elements, gens_flat, d: int, p: int, n: int) -> int:
    """Number of orbits of the conjugation action z -> g^-1 z g on `elements`."""
    m = p**n
    inverses = []
    for g in gens_flat:
        inv_rows = matrix_inverse_mod([g[i * d : (i + 1) * d] for i in range(d)], p, n)
        inverses.append(tuple(v for row in inv_rows for v in row))
    visited = set()
    classes = 0
    for z in elements:
        if z in visited:
            continue
        classes += 1
        visited.add(z)
        stack = [z]
        while stack:
            y = stack.pop()
            for g, ginv in zip(gens_flat, inverses):
                w = _flat_mul(_flat_mul(ginv, y, d, m), g, d, m)
                if w not in visited:
                    visited.add(w)
                    stack.append(w)
    return classes


def exp_generators(alg: NilpotentAlgebra, ring: RingSpec) -> list[IntMatrix]:
    return [exp_nilpotent(b, ring) for b in alg.module.basis]


def cc_coefficients_direct(
    alg: NilpotentAlgebra, p: int, n_max: int, budget: int = DEFAULT_BUDGET
) -> list[int]:
    """Conjugacy class counts of the level-n images of the exponential group.

    The group at level n is generated by exp of the basis mod p^n; its order
    p^(dim * n) must stay within the budget.
    """
    if p < alg.d:
        raise InputError(f"need p >= {alg.d} for the exponential")
    out = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(1)
            continue
        expected = p ** (alg.dim * n)
        if expected > budget:
            raise BudgetExceededError(expected, budget)
        m = p**n
        gens = [g.flat() for g in exp_generators(alg, RingSpec(p, n))]
        elements = group_closure(gens, alg.d, m, budget)
        out.append(conjugacy_class_count(elements, gens, alg.d, p, n))
    return out


def cc_via_ask(
    alg: NilpotentAlgebra, p: int, n_max: int, budget: int = DEFAULT_BUDGET
) -> list[Fraction]:
    """Conjugacy class counts through the adjoint module's kernel averages."""
    for msg in alg.identity_hypothesis_warnings(p):
        warnings.warn(f"identity hypothesis violated: {msg}", stacklevel=2)
    ad = ad_representation(alg.module)
    return ask_series(ad, p, n_max, budget=budget).coefficients()


def oc_via_ask(
    alg: NilpotentAlgebra, p: int, n_max: int, budget: int = DEFAULT_BUDGET
) -> list[Fraction]:
    """Orbit counts of the exponential group through kernel averages of the
    algebra itself."""
    for msg in alg.identity_hypothesis_warnings(p):
        warnings.warn(f"identity hypothesis violated: {msg}", stacklevel=2)
    return ask_series(alg.module, p, n_max, budget=budget).coefficients()


def oc_of_exp_group(
    alg: NilpotentAlgebra, p: int, n_max: int, budget: int = DEFAULT_BUDGET
) -> list[int]:
    """Orbit counts of exp(algebra) on (Z/p^n)^d, counted directly."""
    if p < alg.d:
        raise InputError(f"need p >= {alg.d} for the exponential")
    out = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(1)
            continue
        gens = [g.flat() for g in exp_generators(alg, RingSpec(p, n))]
        out.append(orbit_count_vectors(gens, alg.d, p, n, budget))
    return out


def semidirect_embed(m: MatrixModule) -> GroupGenSet:
    """Block unipotent group [[1, b], [0, 1]] from the module's basis.

    Its orbit count on (Z/p^n)^(d+e) equals p^(e*n) times the average kernel
    size of the module at level n.
    """
    d, e = m.d, m.e
    size = d + e
    gens = []
    for b in m.basis:
        rows = [[0] * size for _ in range(size)]
        for i in range(size):
            rows[i][i] = 1
        for i in range(d):
            for j in range(e):
                rows[i][d + j] = b.entries[i][j]
        gens.append(IntMatrix(rows))
    if not gens:
        gens = [IntMatrix.identity(size)]
    label = f"{m.label}*" if m.label else "semidirect"
    return GroupGenSet(size, tuple(gens), label)


def gl_generators(d: int, p: int, n: int) -> GroupGenSet:
    """Generators of GL_d(Z/p^n): elementary transvections plus diagonal units.

    For odd p one diagonal entry runs through a primitive root mod p^n; for
    p = 2 the diagonal units -1 and 5 are used instead.  This is a helper
    set; its correctness at n > 1 is something callers test, not assume.
    """
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                rows = [[int(a == b) for b in range(d)] for a in range(d)]
                rows[i][j] = 1
                gens.append(IntMatrix(rows))
    units = [primitive_root(p, n)] if p != 2 else [-1, 5]
    for u in units:
        rows = [[int(a == b) for b in range(d)] for a in range(d)]
        rows[0][0] = u
        gens.append(IntMatrix(rows))
    return GroupGenSet(d, tuple(gens), f"GL({d})")
