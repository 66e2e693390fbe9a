"""Finite residue fields F_p and F_{p^2}, with the root finding Tate's algorithm needs."""

from __future__ import annotations

from itertools import product

from .exactnum import sqrt_mod_prime_power

# below this size, roots are found by enumerating the field
ENUMERATION_LIMIT = 64


class ResidueElem:
    """``a + b*omega`` in a residue field; ``b`` is always 0 in F_p."""

    __slots__ = ("F", "a", "b")

    def __init__(self, F: ResidueField, a: int, b: int = 0) -> None:
        self.F = F
        self.a = a % F.p
        self.b = b % F.p

    @property
    def coords(self) -> tuple[int, int]:
        return self.a, self.b

    def _lift(self, other: object) -> ResidueElem | None:
        if isinstance(other, ResidueElem):
            if other.F is not self.F and other.F != self.F:
                raise TypeError("residue field mismatch")
            return other
        if isinstance(other, int):
            return ResidueElem(self.F, other)
        return None

    def __add__(self, other: object) -> ResidueElem:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.F, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> ResidueElem:
        return ResidueElem(self.F, -self.a, -self.b)

    def __sub__(self, other: object) -> ResidueElem:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.F, self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> ResidueElem:
        return -self + other

    def __mul__(self, other: object) -> ResidueElem:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        F = self.F
        if F.degree == 1:
            return ResidueElem(F, self.a * o.a)
        bd = self.b * o.b
        return ResidueElem(F, self.a * o.a + bd * F.c0, self.a * o.b + self.b * o.a + bd * F.c1)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ResidueElem:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.F.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> ResidueElem:
        if not self:
            raise ZeroDivisionError("inverse of zero in residue field")
        if self.F.degree == 1:
            return ResidueElem(self.F, pow(self.a, -1, self.F.p))
        return self ** (self.F.q - 2)

    def __truediv__(self, other: object) -> ResidueElem:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> ResidueElem:
        return ResidueElem(self.F, other) * self.inverse()

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.F.p
        if isinstance(other, ResidueElem):
            return self.F == other.F and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.F.p, self.F.degree, self.a, self.b))

    def __repr__(self) -> str:
        if self.F.degree == 1:
            return f"{self.a} (mod {self.F.p})"
        return f"{self.a}+{self.b}w (F_{self.F.q})"

    def frobenius(self) -> ResidueElem:
        return self ** self.F.p


class ResidueField:
    """F_p, or F_{p^2} = F_p[w] / (w^2 - c1*w - c0)."""

    def __init__(self, p: int, degree: int = 1, c0: int = 0, c1: int = 0) -> None:
        self.p = p
        self.degree = degree
        self.c0 = c0 % p
        self.c1 = c1 % p
        self.q = p**degree
        self.zero = ResidueElem(self, 0)
        self.one = ResidueElem(self, 1)
        self._nonsquare: ResidueElem | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueField):
            return NotImplemented
        return (self.p, self.degree, self.c0, self.c1) == (other.p, other.degree, other.c0, other.c1)

    def __hash__(self) -> int:
        return hash((self.p, self.degree, self.c0, self.c1))

    def __repr__(self) -> str:
        return f"ResidueField(F_{self.q})"

    def __call__(self, a: int, b: int = 0) -> ResidueElem:
        if self.degree == 1 and b % self.p:
            raise ValueError("F_p has no omega component")
        return ResidueElem(self, a, b)

    @property
    def gen(self) -> ResidueElem:
        return ResidueElem(self, 0, 1) if self.degree == 2 else self.one

    def elements(self):
        if self.degree == 1:
            for a in range(self.p):
                yield ResidueElem(self, a)
        else:
            for b, a in product(range(self.p), repeat=2):
                yield ResidueElem(self, a, b)

    # squares ----------------------------------------------------------
    def is_square(self, x: ResidueElem) -> bool:
        if not x or self.p == 2:
            return True
        return x ** ((self.q - 1) // 2) == 1

    def _find_nonsquare(self) -> ResidueElem:
        if self._nonsquare is None:
            for z in self.elements():
                if z and not self.is_square(z):
                    self._nonsquare = z
                    break
        return self._nonsquare

    def sqrt(self, x: ResidueElem) -> ResidueElem:
        """A square root of ``x``; raises ValueError for non-squares."""
        if not x:
            return self.zero
        if self.p == 2:
            return x ** (self.q // 2)
        if self.degree == 1:
            return ResidueElem(self, sqrt_mod_prime_power(x.a, self.p, 1))
        if not self.is_square(x):
            raise ValueError(f"{x} is not a square")
        # Tonelli-Shanks in the cyclic group of order q - 1
        q, s = self.q - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self._find_nonsquare()
        m, c, t, r = s, z**q, x**q, x ** ((q + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            t, r = t * c, r * b
        return r

    # root finding -----------------------------------------------------
    def roots_quadratic(self, a: ResidueElem | int, b: ResidueElem | int, c: ResidueElem | int) -> list[ResidueElem]:
        """Roots of ``a X^2 + b X + c`` in this field, with multiplicity."""
        a, b, c = (self._elem(v) for v in (a, b, c))
        if not a:
            if not b:
                if c:
                    return []
                raise ValueError("zero polynomial")
            return [-c / b]
        if self.p == 2:
            if not b:
                r = self.sqrt(c / a)
                return [r, r]
            return [x for x in self.elements() if not (a * x * x + b * x + c)]
        disc = b * b - 4 * a * c
        if not self.is_square(disc):
            return []
        root = self.sqrt(disc)
        two_a = 2 * a
        r1, r2 = (-b + root) / two_a, (-b - root) / two_a
        return sorted([r1, r2], key=lambda e: e.coords)

    def roots_cubic(self, b: ResidueElem | int, c: ResidueElem | int, d: ResidueElem | int) -> list[ResidueElem]:
        """Roots of the monic cubic ``X^3 + b X^2 + c X + d``, with multiplicity."""
        coeffs = [self._elem(v) for v in (d, c, b)] + [self.one]
        if self.q <= ENUMERATION_LIMIT:
            distinct = [x for x in self.elements() if not _poly_eval(coeffs, x)]
        else:
            distinct = self._distinct_roots(coeffs)
        out = []
        for r in sorted(distinct, key=lambda e: e.coords):
            poly = coeffs
            while len(poly) > 1 and not _poly_eval(poly, r):
                poly = _synthetic_div(poly, r)
                out.append(r)
        return out

    def _elem(self, v: ResidueElem | int) -> ResidueElem:
        return v if isinstance(v, ResidueElem) else ResidueElem(self, v)

    def _distinct_roots(self, poly: list[ResidueElem]) -> list[ResidueElem]:
        # gcd(P, X^q - X) collects the distinct roots lying in this field
        x = [self.zero, self.one]
        xq = _poly_powmod(x, self.q, poly)
        g = _poly_gcd(poly, _poly_sub(xq, x))
        return self._split_linear(g)

    def _split_linear(self, g: list[ResidueElem]) -> list[ResidueElem]:
        deg = len(g) - 1
        if deg <= 0:
            return []
        if deg == 1:
            return [-g[0] / g[1]]
        if deg == 2:
            return self.roots_quadratic(g[2], g[1], g[0])
        # equal-degree splitting with deterministic shifts (odd characteristic)
        half = (self.q - 1) // 2
        for shift in self.elements():
            h = _poly_powmod([shift, self.one], half, g)
            f = _poly_gcd(g, _poly_sub(h, [self.one]))
            if 0 < len(f) - 1 < deg:
                rest = _poly_divmod(g, f)[0]
                return self._split_linear(f) + self._split_linear(rest)
        raise ArithmeticError("failed to split polynomial")


# polynomial helpers; coefficient lists are low degree first ------------------


def _trim(p: list[ResidueElem]) -> list[ResidueElem]:
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p


def _poly_eval(p: list[ResidueElem], x: ResidueElem) -> ResidueElem:
    acc = p[-1]
    for coef in reversed(p[:-1]):
        acc = acc * x + coef
    return acc


def _synthetic_div(p: list[ResidueElem], r: ResidueElem) -> list[ResidueElem]:
    out = [p[-1]]
    for coef in reversed(p[1:-1]):
        out.append(out[-1] * r + coef)
    return list(reversed(out))


def _poly_sub(a: list[ResidueElem], b: list[ResidueElem]) -> list[ResidueElem]:
    F = (a + b)[0].F
    n = max(len(a), len(b))
    a = a + [F.zero] * (n - len(a))
    b = b + [F.zero] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a: list[ResidueElem], b: list[ResidueElem]) -> list[ResidueElem]:
    F = a[0].F
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _poly_divmod(a: list[ResidueElem], b: list[ResidueElem]) -> tuple[list[ResidueElem], list[ResidueElem]]:
    F = a[0].F
    a = _trim(list(a))
    b = _trim(b)
    if len(a) < len(b):
        return [F.zero], a
    inv_lead = b[-1].inverse()
    quot = [F.zero] * (len(a) - len(b) + 1)
    rem = list(a)
    for i in range(len(a) - len(b), -1, -1):
        coef = rem[i + len(b) - 1] * inv_lead
        quot[i] = coef
        for j, y in enumerate(b):
            rem[i + j] = rem[i + j] - coef * y
    return _trim(quot), _trim(rem[: len(b) - 1] or [F.zero])


def _poly_powmod(base: list[ResidueElem], n: int, mod: list[ResidueElem]) -> list[ResidueElem]:
    F = mod[0].F
    result = [F.one]
    base = _poly_divmod(base, mod)[1]
    while n:
        if n & 1:
            result = _poly_divmod(_poly_mul(result, base), mod)[1]
        base = _poly_divmod(_poly_mul(base, base), mod)[1]
        n >>= 1
    return result


def _poly_gcd(a: list[ResidueElem], b: list[ResidueElem]) -> list[ResidueElem]:
    a, b = _trim(a), _trim(b)
    while len(b) > 1 or b[0]:
        a, b = b, _poly_divmod(a, b)[1]
    inv = a[-1].inverse()
    return [x * inv for x in a]
