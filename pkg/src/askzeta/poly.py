"""Sparse multivariate polynomials over Z and fraction-free elimination.

Small and deliberately plain: exponent tuples to integer coefficients.  Used
for linear-form matrices, their minors, symbolic ranks, and characteristic
polynomials, all at desk scale.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, InternalConsistencyError


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def const(cls, nvars: int, c: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, t)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, t)

    def scale(self, c: int) -> "Poly":
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, deg: int) -> bool:
        return all(sum(e) == deg for e in self.terms)

    def leading(self):
        """Leading (exponent, coefficient) in lex order."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact polynomial division; raises if the quotient is not polynomial."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.terms)
        out = {}
        de, dc = divisor.leading()
        while rem:
            re = max(rem)
            rc = rem[re]
            qe = tuple(a - b for a, b in zip(re, de))
            if any(v < 0 for v in qe) or rc % dc:
                raise InternalConsistencyError("inexact polynomial division")
            qc = rc // dc
            out[qe] = out.get(qe, 0) + qc
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qe, e2))
                v = rem.get(e, 0) - qc * c2
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return Poly(self.nvars, out)

    def eval_int(self, point) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def content_and_sign(self):
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        if not g:
            return 0, 1
        lead = self.terms[max(self.terms)]
        return g, (1 if lead > 0 else -1)

    def normalized(self) -> "Poly":
        """Divide by the content and make the lex-leading coefficient positive."""
        g, s = self.content_and_sign()
        if not g:
            return self
        g *= s
        return Poly(self.nvars, {e: c // g for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)


def poly_matrix_from_int(rows, nvars: int):
    return [[Poly.const(nvars, v) for v in row] for row in rows]


def bareiss_det(rows) -> Poly:
    """Fraction-free determinant of a square matrix of Poly entries."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        raise InputError("empty determinant")
    nvars = a[0][0].nvars
    sign = 1
    prev = Poly.const(nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.const(nvars, 0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = Poly.const(nvars, 0)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def symbolic_rank(rows) -> int:
    """Rank over Q(x_1, ..., x_m) by fraction-free elimination with full pivoting."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    nvars = a[0][0].nvars
    nr, nc = len(a), len(a[0])
    rank = 0
    prev = Poly.const(nvars, 1)
    r = 0
    used_cols = []
    while r < nr:
        piv = None
        for j in range(nc):
            if j in used_cols:
                continue
            for i in range(r, nr):
                if not a[i][j].is_zero():
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[r], a[i0] = a[i0], a[r]
        for i in range(r + 1, nr):
            for j in range(nc):
                if j == j0 or j in used_cols:
                    continue
                a[i][j] = (a[r][j0] * a[i][j] - a[i][j0] * a[r][j]).exact_div(prev)
            a[i][j0] = Poly.const(nvars, 0)
        prev = a[r][j0]
        used_cols.append(j0)
        rank += 1
        r += 1
    return rank


def evaluated_rank(rows, point) -> int:
    """Rank over Q of the matrix obtained by evaluating every entry at `point`."""
    from .linalg import frac_rank

    ints = [[Fraction(p.eval_int(point)) for p in row] for row in rows]
    return frac_rank(ints)


def char_poly_is_pure_power(rows) -> bool:
    """True iff det(t*I - A) = t^d for the square Poly matrix A.

    The characteristic polynomial is computed with one extra variable
    appended for t.
    """
    d = len(rows)
    if d == 0:
        return True
    nvars = rows[0][0].nvars
    ext = []
    for i in range(d):
        ext_row = []
        for j in range(d):
            old = rows[i][j]
            terms = {e + (0,): -c for e, c in old.terms.items()}
            if i == j:
                e_t = (0,) * nvars + (1,)
                terms[e_t] = terms.get(e_t, 0) + 1
            ext_row.append(Poly(nvars + 1, terms))
        ext.append(ext_row)
    det = bareiss_det(ext)
    target = Poly(nvars + 1, {(0,) * nvars + (d,): 1})
    return det == target
