"""Deterministic primality and primitive roots for desk-scale moduli."""

from .errors import InputError

# Deterministic Miller-Rabin witness set, valid for all n < 3.317e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a proven witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise InputError(f"primality test not deterministic for n >= {_MR_LIMIT}")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (small arguments only)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int, n: int = 1) -> int:
    """A generator of the cyclic unit group of Z/p^n for an odd prime p.

    A generator g mod p lifts to mod p^n unless g^(p-1) = 1 mod p^2,
    in which case g + p works.
    """
    if p == 2:
        raise InputError("units of Z/2^n are not cyclic for n >= 3")
    phi_factors = factorize(p - 1)
    g = None
    for cand in range(2, p):
        if all(pow(cand, (p - 1) // f, p) != 1 for f in phi_factors):
            g = cand
            break
    if g is None:
        raise InputError(f"{p} is not prime")
    if n > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g
