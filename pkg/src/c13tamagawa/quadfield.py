"""Real and imaginary quadratic fields Q(sqrt d), their primes and local maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (
    INF,
    RationalLike,
    as_fraction,
    is_prime,
    kronecker,
    sqrt_mod_prime_power,
    squarefree_split,
    vp,
)
from .resfield import ResidueElem, ResidueField


class FieldMismatchError(TypeError):
    pass


@lru_cache(maxsize=None)
def _is_squarefree(d: int) -> bool:
    return squarefree_split(d)[0] == d


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self) -> None:
        if self.d in (0, 1):
            raise ValueError(f"Q(sqrt {self.d}) is not a quadratic field")
        if not _is_squarefree(self.d):
            raise ValueError(f"{self.d} is not squarefree")

    @property
    def disc(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    def __call__(self, x: RationalLike = 0, y: RationalLike = 0) -> QuadNum:
        return QuadNum(as_fraction(x), as_fraction(y), self)

    @property
    def sqrt_d(self) -> QuadNum:
        return self(0, 1)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


class QuadNum:
    """``x + y*sqrt(d)`` with rational ``x``, ``y``."""

    __slots__ = ("x", "y", "field")

    def __init__(self, x: Fraction, y: Fraction, field: QuadraticField) -> None:
        self.x = x
        self.y = y
        self.field = field

    # coercion ---------------------------------------------------------
    def _coerce(self, other: object) -> QuadNum | None:
        if isinstance(other, QuadNum):
            if other.field.d != self.field.d:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(Fraction(other), Fraction(0), self.field)
        return None

    # arithmetic -------------------------------------------------------
    def __add__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.x, -self.y, self.field)

    def __sub__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.x - o.x, self.y - o.y, self.field)

    def __rsub__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadNum:
        if isinstance(other, (int, Fraction)):
            return QuadNum(self.x * other, self.y * other, self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadNum(self.x * o.x + d * self.y * o.y, self.x * o.y + self.y * o.x, self.field)

    __rmul__ = __mul__

    def inverse(self) -> QuadNum:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadNum(self.x / n, -self.y / n, self.field)

    def __truediv__(self, other: object) -> QuadNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return QuadNum(self.x / other, self.y / other, self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadNum:
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNum(Fraction(1), Fraction(0), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # Galois -----------------------------------------------------------
    def conj(self) -> QuadNum:
        return QuadNum(self.x, -self.y, self.field)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    # misc -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadNum):
            return self.field.d == other.field.d and self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.field.d))

    def __repr__(self) -> str:
        return f"QuadNum({self.x}, {self.y}, d={self.field.d})"

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        ys = "" if abs(self.y) == 1 else f"{abs(self.y)}*"
        if self.x == 0:
            return f"{'-' if self.y < 0 else ''}{ys}sqrt({self.field.d})"
        return f"{self.x} {'-' if self.y < 0 else '+'} {ys}sqrt({self.field.d})"

    def common_denominator(self) -> tuple[int, int, int]:
        """Integers (X, Y, D) with self = (X + Y sqrt d) / D and D > 0."""
        den = self.x.denominator * self.y.denominator // _gcd(self.x.denominator, self.y.denominator)
        return self.x.numerator * (den // self.x.denominator), self.y.numerator * (den // self.y.denominator), den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ----------------------------------------------------------------------------
# primes of K


class SplitKind(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class KPrime:
    """A prime of Q(sqrt d) above the rational prime ``p``.

    For split primes ``branch`` is 0 for the prime where sqrt(d) maps to the
    canonical p-adic root of d and 1 for its conjugate.
    """

    field: QuadraticField
    p: int
    kind: SplitKind
    branch: int = 0

    @property
    def e(self) -> int:
        return 2 if self.kind is SplitKind.RAMIFIED else 1

    @property
    def f(self) -> int:
        return 2 if self.kind is SplitKind.INERT else 1

    @property
    def label(self) -> str:
        if self.kind is SplitKind.SPLIT:
            return f"{self.p}{'ab'[self.branch]}"
        return str(self.p)

    def __str__(self) -> str:
        return f"<{self.label} {self.kind.value} in {self.field}>"

    @property
    def residue_field(self) -> ResidueField:
        return _residue_field(self.field.d, self.p, self.f)


@lru_cache(maxsize=None)
def _residue_field(d: int, p: int, degree: int) -> ResidueField:
    if degree == 1:
        return ResidueField(p)
    if p == 2:
        # omega = (1 + sqrt d)/2 satisfies omega^2 = omega + (d - 1)/4
        return ResidueField(2, 2, c0=((d - 1) // 4) % 2, c1=1)
    return ResidueField(p, 2, c0=d % p, c1=0)


def primes_above(K: QuadraticField, p: int) -> list[KPrime]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = K.d
    if p == 2:
        if d % 4 in (2, 3):
            kind = SplitKind.RAMIFIED
        elif d % 8 == 1:
            kind = SplitKind.SPLIT
        else:
            kind = SplitKind.INERT
    elif d % p == 0:
        kind = SplitKind.RAMIFIED
    else:
        kind = SplitKind.SPLIT if kronecker(d, p) == 1 else SplitKind.INERT
    if kind is SplitKind.SPLIT:
        return [KPrime(K, p, kind, 0), KPrime(K, p, kind, 1)]
    return [KPrime(K, p, kind)]


def conjugate_prime(v: KPrime) -> KPrime:
    if v.kind is SplitKind.SPLIT:
        return KPrime(v.field, v.p, v.kind, 1 - v.branch)
    return v


def uniformizer(v: KPrime) -> QuadNum:
    K = v.field
    if v.kind is not SplitKind.RAMIFIED:
        return K(v.p)
    if v.p == 2 and K.d % 4 == 3:
        return K(1, 1)
    return K.sqrt_d


def embedding_root(v: KPrime, k: int) -> int:
    """Image of sqrt(d) in Z/p^k under the split prime ``v``."""
    alpha = sqrt_mod_prime_power(v.field.d, v.p, k)
    return alpha if v.branch == 0 else (-alpha) % v.p**k


def _int_vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val(z: QuadNum | RationalLike, v: KPrime) -> int | float:
    """Normalized valuation of ``z`` at ``v``; ``INF`` for zero."""
    if not isinstance(z, QuadNum):
        q = as_fraction(z)
        return INF if q == 0 else v.e * vp(q, v.p)
    if z.y == 0:
        return INF if z.x == 0 else v.e * vp(z.x, v.p)
    if v.kind is SplitKind.INERT:
        return vp(z.norm(), v.p) // 2
    if v.kind is SplitKind.RAMIFIED:
        return vp(z.norm(), v.p)
    X, Y, D = z.common_denominator()
    n = X * X - v.field.d * Y * Y
    # val at v of X + Y sqrt d is between 0 and vp(n), so p^(vp(n)+1) is enough precision
    k = _int_vp(n, v.p) + 1
    mod = v.p**k
    w = (X + Y * embedding_root(v, k)) % mod
    return _int_vp(w, v.p) - _int_vp(D, v.p)


class NegativeValuationError(ValueError):
    pass


def residue(z: QuadNum | RationalLike, v: KPrime) -> ResidueElem:
    """Image of a v-integral element in the residue field of ``v``."""
    F = v.residue_field
    p = v.p
    if not isinstance(z, QuadNum):
        z = v.field(z)
    if v.kind is SplitKind.SPLIT:
        X, Y, D = z.common_denominator()
        delta = _int_vp(D, p)
        mod = p ** (delta + 1)
        w = (X + Y * embedding_root(v, delta + 1)) % mod
        if w % p**delta:
            raise NegativeValuationError(f"{z} is not integral at {v}")
        unit = D // p**delta
        return F(w // p**delta * pow(unit, -1, p))
    if v.kind is SplitKind.INERT:
        if p == 2:
            a, b = z.x - z.y, 2 * z.y
        else:
            a, b = z.x, z.y
        if vp(a, p) < 0 or vp(b, p) < 0:
            raise NegativeValuationError(f"{z} is not integral at {v}")
        return F(_mod_frac(a, p), _mod_frac(b, p))
    return _ramified_residue(z, v)


def _mod_frac(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def _ramified_residue(z: QuadNum, v: KPrime) -> ResidueElem:
    F = v.residue_field
    p = v.p
    if val(z, v) < 0:
        raise NegativeValuationError(f"{z} is not integral at {v}")
    pi = uniformizer(v)
    sqrt_res = 1 if (p == 2 and v.field.d % 4 == 3) else 0
    delta = max(0, -min(vp(z.x, p), vp(z.y, p)))
    # z = w / p^delta with p-integral coordinates in w; divide w by pi^(2 delta)
    # one step at a time, each step keeping coordinates p-integral
    w = z * p**delta
    pi_inv = pi.inverse()
    for _ in range(2 * delta):
        w = w * pi_inv
    unit = pi * pi / p
    res_w = _mod_frac(w.x, p) + _mod_frac(w.y, p) * sqrt_res
    res_u = _mod_frac(unit.x, p) + _mod_frac(unit.y, p) * sqrt_res
    return F(res_w * pow(res_u, delta, p) % p)


def lift(a: ResidueElem, v: KPrime) -> QuadNum:
    """A v-integral element of K reducing to ``a``."""
    K = v.field
    c0, c1 = a.coords
    if v.f == 1:
        return K(c0)
    if v.p == 2:
        return K(c0) + K(Fraction(1, 2), Fraction(1, 2)) * c1
    return K(c0, c1)
