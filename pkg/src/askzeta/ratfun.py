"""Exact rational functions in (q, T) and truncated series at a fixed q.

QTRational stores numerator and denominator as Laurent polynomials in q and T
with integer coefficients.  Equality is decided by cross multiplication, so
no multivariate gcd is ever needed; normalization cancels common monomial
factors and integer content and fixes the denominator sign.

The text grammar (round-trip stable) is:

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+')* atom ('^' exponent)?
    atom   := INTEGER | 'q' | 'T' | '(' expr ')'

with integer exponents, possibly negative, optionally parenthesized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError, NotExpandableError


class LPoly:
    """Laurent polynomial in q and T over Z: dict (q_exp, t_exp) -> coeff."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "LPoly":
        return cls({(0, 0): int(c)})

    @classmethod
    def monomial(cls, c: int, qe: int, te: int) -> "LPoly":
        return cls({(qe, te): int(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, LPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LPoly") -> "LPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LPoly(t)

    def __neg__(self) -> "LPoly":
        return LPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def __mul__(self, other: "LPoly") -> "LPoly":
        t = {}
        for (q1, t1), c1 in self.terms.items():
            for (q2, t2), c2 in other.terms.items():
                e = (q1 + q2, t1 + t2)
                t[e] = t.get(e, 0) + c1 * c2
        return LPoly(t)

    def invert_vars(self) -> "LPoly":
        """Substitute q -> 1/q and T -> 1/T (negate all exponents)."""
        return LPoly({(-qe, -te): c for (qe, te), c in self.terms.items()})

    def min_exps(self):
        qs = [qe for qe, _ in self.terms]
        ts = [te for _, te in self.terms]
        return min(qs), min(ts)

    def shift(self, dq: int, dt: int) -> "LPoly":
        return LPoly({(qe + dq, te + dt): c for (qe, te), c in self.terms.items()})

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def t_coefficients(self, q_value: Fraction):
        """Evaluate q; returns dict t_exp -> Fraction."""
        out: dict[int, Fraction] = {}
        qv = Fraction(q_value)
        for (qe, te), c in self.terms.items():
            out[te] = out.get(te, Fraction(0)) + c * qv**qe
        return {te: v for te, v in out.items() if v}

    def __repr__(self):
        return f"LPoly({self.terms!r})"


def _format_poly(p: LPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (qe, te) in sorted(p.terms, key=lambda e: (e[1], e[0])):
        c = p.terms[(qe, te)]
        mono = []
        if qe:
            mono.append("q" if qe == 1 else f"q^{qe}")
        if te:
            mono.append("T" if te == 1 else f"T^{te}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(abs(c))] + mono)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class QTRational:
    """Quotient of two Laurent polynomials in (q, T), normalized but not reduced.

    Equality compares cross products, which is a complete test without any
    polynomial gcd; stored catalog formulas are already in lowest terms.
    """

    __slots__ = ("num", "den", "factors", "qpow")

    def __init__(self, num: LPoly, den: LPoly):
        # optional factored view of the denominator, kept by from_factors
        self.factors = None
        self.qpow = 0
        if den.is_zero():
            raise InputError("zero denominator")
        if num.is_zero():
            self.num = LPoly()
            self.den = LPoly.const(1)
            return
        # cancel the common monomial factor q^a T^b
        nq, nt = num.min_exps()
        dq, dt = den.min_exps()
        cq, ct = min(nq, dq), min(nt, dt)
        if cq or ct:
            num = num.shift(-cq, -ct)
            den = den.shift(-cq, -ct)
        # integer content common to both
        g = gcd(num.content(), den.content())
        if g > 1:
            num = LPoly({e: c // g for e, c in num.terms.items()})
            den = LPoly({e: c // g for e, c in den.terms.items()})
        # sign: lowest (T, q) term of the denominator positive
        key = min(den.terms, key=lambda e: (e[1], e[0]))
        if den.terms[key] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: int) -> "QTRational":
        return cls(LPoly.const(c), LPoly.const(1))

    @classmethod
    def from_factors(cls, numerator: LPoly, factors, qpow: int = 0) -> "QTRational":
        """numerator / (q^qpow * prod (1 - q^a T^b)) for (a, b) in factors."""
        den = LPoly.monomial(1, qpow, 0)
        for a, b in factors:
            den = den * (LPoly.const(1) - LPoly.monomial(1, a, b))
        out = cls(numerator, den)
        out.factors = tuple((int(a), int(b)) for a, b in factors)
        out.qpow = qpow
        return out

    def __eq__(self, other):
        if not isinstance(other, QTRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("QTRational is unhashable")

    def __add__(self, other: "QTRational") -> "QTRational":
        return QTRational(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "QTRational":
        return QTRational(-self.num, self.den)

    def __sub__(self, other: "QTRational") -> "QTRational":
        return self + (-other)

    def __mul__(self, other: "QTRational") -> "QTRational":
        return QTRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "QTRational") -> "QTRational":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return QTRational(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "QTRational":
        if k < 0:
            return QTRational.const(1) / self**(-k)
        out = QTRational.const(1)
        for _ in range(k):
            out = out * self
        return out

    def is_one(self) -> bool:
        return self.num == self.den

    def __repr__(self):
        return f"QTRational({self})"

    def __str__(self):
        num_s = _format_poly(self.num)
        if self.den == LPoly.const(1):
            return num_s
        den_s = _format_poly(self.den)
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        return f"{num_s}/({den_s})"


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise InputError(f"parse error at {self.pos} in {self.text!r}: {msg}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> QTRational:
        v = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return v

    def expr(self) -> QTRational:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> QTRational:
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.peek()
            self.pos += 1
            rhs = self.factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def factor(self) -> QTRational:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            v = v ** self.exponent()
        return v if sign == 1 else -v

    def exponent(self) -> int:
        if self.peek() == "(":
            self.take("(")
            k = self.signed_int()
            self.take(")")
            return k
        return self.signed_int()

    def signed_int(self) -> int:
        self.skip_ws()
        sign = 1
        while self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return sign * int(self.text[start : self.pos])

    def atom(self) -> QTRational:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        if ch == "q":
            self.pos += 1
            return QTRational(LPoly.monomial(1, 1, 0), LPoly.const(1))
        if ch == "T":
            self.pos += 1
            return QTRational(LPoly.monomial(1, 0, 1), LPoly.const(1))
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return QTRational.const(int(self.text[start : self.pos]))
        self.error("expected atom")


def parse_rational(text: str) -> QTRational:
    """Parse the single-line expression grammar into a QTRational."""
    return _Parser(text).parse()


# -- series ---------------------------------------------------------------


@dataclass(frozen=True)
class SeriesQ:
    """Truncated power series in T with exact rational coefficients, fixed q."""

    q_value: Fraction
    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]


def series_from(q_value, values) -> SeriesQ:
    return SeriesQ(Fraction(q_value), tuple(Fraction(v) for v in values))


def expand(w: QTRational, q_value, order: int) -> SeriesQ:
    """First `order` Taylor coefficients of W at T = 0 for the given q."""
    qv = Fraction(q_value)
    if qv == 0:
        raise InputError("q must be nonzero")
    num = w.num.t_coefficients(qv)
    den = w.den.t_coefficients(qv)
    if not den:
        raise InputError("zero denominator after substitution")
    dmin = min(den)
    nmin = min(num) if num else dmin
    if nmin < dmin:
        raise NotExpandableError("pole at T = 0 after substituting q")
    # shift so the denominator starts at T^0 with an invertible constant term
    den = {te - dmin: v for te, v in den.items()}
    num = {te - dmin: v for te, v in num.items()}
    d0 = den[0]
    coeffs = []
    for k in range(order):
        acc = num.get(k, Fraction(0))
        for j in range(1, k + 1):
            dj = den.get(j)
            if dj:
                acc -= dj * coeffs[k - j]
        coeffs.append(acc / d0)
    return SeriesQ(qv, tuple(coeffs))


def hadamard(a: SeriesQ, b: SeriesQ) -> SeriesQ:
    """Coefficientwise product of two series with matching q and order."""
    if a.q_value != b.q_value:
        raise InputError("Hadamard product needs equal q values")
    if a.order != b.order:
        raise InputError("Hadamard product needs equal orders")
    return SeriesQ(a.q_value, tuple(x * y for x, y in zip(a.coeffs, b.coeffs)))


def functional_equation_check(w: QTRational, d: int) -> bool:
    """Whether W(1/q, 1/T) = (-q^d T) * W(q, T) holds identically."""
    lhs_num = w.num.invert_vars()
    lhs_den = w.den.invert_vars()
    factor = LPoly.monomial(-1, d, 1)
    return lhs_num * w.den == factor * w.num * lhs_den


# -- fitting --------------------------------------------------------------


@dataclass(frozen=True)
class RationalFit:
    """Result of a successful denominator-hypothesis fit at fixed q."""

    q_value: Fraction
    num_coeffs: tuple[Fraction, ...]
    factors: tuple[tuple[int, int], ...]
    qpow: int

    def expand(self, order: int) -> SeriesQ:
        den = _den_coeffs(self.q_value, self.factors, self.qpow)
        num = {i: c for i, c in enumerate(self.num_coeffs)}
        coeffs = []
        d0 = den[0]
        for k in range(order):
            acc = num.get(k, Fraction(0))
            for j in range(1, k + 1):
                if j < len(den) and den[j]:
                    acc -= den[j] * coeffs[k - j]
            coeffs.append(acc / d0)
        return SeriesQ(self.q_value, tuple(coeffs))


def _den_coeffs(q_value, factors, qpow):
    qv = Fraction(q_value)
    coeffs = [qv**qpow]
    for a, b in factors:
        scale = qv**a
        new = coeffs + [Fraction(0)] * b
        for i, c in enumerate(coeffs):
            new[i + b] -= c * scale
        coeffs = new
    return coeffs


def fit_rational(
    series: SeriesQ,
    factors,
    qpow: int = 0,
    num_degree: int | None = None,
    margin: int = 3,
):
    """Fit series = N(T) / (q^qpow * prod (1 - q^a T^b)) with deg N <= num_degree.

    Returns a RationalFit whose trailing `margin` coefficients beyond the
    numerator degree all vanished, or None when the hypothesis is rejected.
    Insufficient series order is an input error, not a rejection.
    """
    factors = tuple((int(a), int(b)) for a, b in factors)
    if margin < 3:
        raise InputError("margin must be >= 3")
    den_deg = sum(b for _, b in factors)
    if num_degree is None:
        num_degree = den_deg
    if series.order <= num_degree + margin:
        raise InputError(
            f"series order {series.order} too small: need > {num_degree + margin}"
        )
    den = _den_coeffs(series.q_value, factors, qpow)
    prod = []
    for k in range(series.order):
        acc = Fraction(0)
        for j, dj in enumerate(den):
            if j <= k and dj:
                acc += dj * series.coeffs[k - j]
        prod.append(acc)
    if any(prod[k] for k in range(num_degree + 1, series.order)):
        return None
    return RationalFit(
        series.q_value, tuple(prod[: num_degree + 1]), factors, qpow
    )


def fit_pade(series: SeriesQ, num_degree: int, den_degree: int):
    """Generic Pade-style reconstruction with unknown denominator.

    Solves exactly for a monic denominator of the given degree, then checks
    every remaining coefficient of the series; returns (num, den) coefficient
    tuples or None.  Blind fitting is easily fooled at low order, so prefer
    fit_rational with an explicit hypothesis.
    """
    from .linalg import frac_solve

    need = num_degree + den_degree + 1
    if series.order < need + 1:
        raise InputError(f"series order {series.order} too small: need > {need}")
    c = series.coeffs
    # unknowns d_1..d_m from sum_{j=0..m} d_j c_{k-j} = 0 for k > num_degree
    rows = []
    rhs = []
    for k in range(num_degree + 1, num_degree + den_degree + 1):
        rows.append([c[k - j] if k - j >= 0 else Fraction(0) for j in range(1, den_degree + 1)])
        rhs.append(-c[k])
    sol = frac_solve(rows, rhs)
    if sol is None:
        return None
    den = (Fraction(1),) + tuple(sol)
    num = []
    for k in range(num_degree + 1):
        acc = Fraction(0)
        for j, dj in enumerate(den):
            if j <= k:
                acc += dj * c[k - j]
        num.append(acc)
    # verify every coefficient we own
    for k in range(num_degree + 1, series.order):
        acc = Fraction(0)
        for j, dj in enumerate(den):
            if j <= k:
                acc += dj * c[k - j]
        if acc:
            return None
    return tuple(num), den
