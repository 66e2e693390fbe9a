"""Exact integer/rational arithmetic and elementary number theory.

Integers are plain ``int`` and rationals are :class:`fractions.Fraction`.
Everything here is a pure function.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

INF = math.inf  # valuation of zero

TRIAL_BOUND = 10**6
DEFAULT_FACTOR_BUDGET = 200_000

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_RANDOM_ROUNDS = 64


class NoSquareRootError(ValueError):
    """Raised when a modular square root does not exist."""


def as_fraction(q: RationalLike) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def factor_budget_from_env(default: int = DEFAULT_FACTOR_BUDGET) -> int:
    raw = os.environ.get("C13_FACTOR_BUDGET")
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(_small_primes(TRIAL_BOUND))


def _mr_round(n: int, a: int, d: int, r: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 64 pseudo-random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES
    else:
        # fixed LCG keeps the test reproducible run to run
        bases, x = [], n % 1_000_003
        for _ in range(_MR_RANDOM_ROUNDS):
            x = (x * 6364136223846793005 + 1442695040888963407) % 2**64
            bases.append(2 + x % (n - 3))
    return all(_mr_round(n, a, d, r) for a in bases)


def _brent_rho(n: int, budget: int, c: int) -> int | None:
    """One Brent/Pollard rho attempt; returns a proper factor or None."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = 2
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        spent += r
        if spent > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _perfect_power_root(n: int) -> tuple[int, int]:
    # only called after trial division, so any root exceeds 2**19
    for k in range(n.bit_length() // 19 + 1, 1, -1):
        r = _iroot(n, k)
        if r**k == n:
            return r, k
    return n, 1


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e) * (cofactor or 1)``; the cofactor is composite or unproven."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()
    unfactored_cofactor: int | None = None

    @property
    def complete(self) -> bool:
        return self.unfactored_cofactor is None

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        if self.unfactored_cofactor is not None:
            out *= self.unfactored_cofactor
        return out


def factor(n: int, budget: int | None = None) -> Factorization:
    """Factor ``n`` by trial division up to 10**6, then Brent's rho.

    ``budget`` caps the rho iterations spent on each composite piece.
    Pieces that resist are multiplied into ``unfactored_cofactor``.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    if budget is None:
        budget = factor_budget_from_env()
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    leftover = 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < TRIAL_BOUND**2 or is_prime(m):
            # after trial division any m below the square of the bound is prime
            found[m] = found.get(m, 0) + 1
            continue
        root, k = _perfect_power_root(m)
        if k > 1:
            stack.extend([root] * k)
            continue
        piece = None
        for c in (1, 3, 5, 7, 11):
            piece = _brent_rho(m, budget, c)
            if piece is not None:
                break
        if piece is None:
            leftover *= m
        else:
            stack.extend([piece, m // piece])
    factors = tuple(sorted(found.items()))
    return Factorization(sign, factors, leftover if leftover > 1 else None)


def prime_support(n: int, budget: int | None = None) -> set[int]:
    fac = factor(n, budget)
    if not fac.complete:
        raise ArithmeticError(f"incomplete factorization of {n}")
    return set(fac.primes)


def squarefree_split(q: RationalLike) -> tuple[int, Fraction]:
    """Write ``q = d * m**2`` with ``d`` a squarefree integer and ``m > 0``."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("zero has no squarefree part")
    # q = N/D = N*D / D**2, so the squarefree part of q is that of N*D
    nd = q.numerator * q.denominator
    fac = factor(nd)
    if not fac.complete:
        raise ArithmeticError(f"cannot split {q}: unfactored cofactor {fac.unfactored_cofactor}")
    d, root = fac.sign, 1
    for p, e in fac.factors:
        if e % 2:
            d *= p
        root *= p ** (e // 2)
    m = Fraction(root, q.denominator)
    return d, m


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _tonelli_shanks(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise NoSquareRootError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@lru_cache(maxsize=4096)
def _unit_sqrt(d: int, p: int, k: int) -> int:
    """Canonical root of a p-adic unit d modulo p**k (k >= 1)."""
    if p == 2:
        if k == 1:
            return 1
        if d % 4 != 1 or (k >= 3 and d % 8 != 1):
            raise NoSquareRootError(f"{d} is not a square mod 2**{k}")
        if k == 2:
            return 1
        # lift a root mod 2**(k+1); its reduction is a true truncation of the 2-adic root
        x, j = 1, 3
        while j < k + 1:
            if (x * x - d) % (1 << (j + 1)):
                x += 1 << (j - 1)
            j += 1
        return x % (1 << k)
    r = _tonelli_shanks(d, p)
    r = min(r, p - r)
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        r = (r - (r * r - d) * pow(2 * r, -1, mod)) % mod
    return r


def sqrt_mod_prime_power(d: int, p: int, k: int) -> int:
    """Canonical square root of ``d`` modulo ``p**k``.

    The root is the truncation of a fixed p-adic square root of ``d``, so
    results at different precisions are mutually consistent.  For odd ``p``
    the fixed root is the one whose residue mod ``p`` is below ``p/2``; for
    ``p = 2`` it is the one congruent to 1 mod 4.
    """
    if k < 1:
        raise ValueError("precision must be positive")
    mod = p**k
    if d % mod == 0:
        return 0
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    if e % 2:
        raise NoSquareRootError(f"odd valuation of d at {p}")
    half = e // 2
    if half >= k:
        return 0
    return (p**half * _unit_sqrt(d % p ** (k - half + (1 if p == 2 else 0)), p, k - half)) % mod


def vp(q: RationalLike, p: int) -> int | float:
    """p-adic valuation of a rational; ``INF`` for zero."""
    q = as_fraction(q)
    if q == 0:
        return INF
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_str(q: RationalLike) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``r/q`` or an integer; a zero denominator is a ValueError."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
