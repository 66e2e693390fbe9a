"""Long Weierstrass models over a quadratic field and their group law."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .quadfield import QuadNum, QuadraticField


class SingularModelError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Invariants:
    b2: QuadNum
    b4: QuadNum
    b6: QuadNum
    b8: QuadNum
    c4: QuadNum
    c6: QuadNum
    disc: QuadNum


@dataclass(frozen=True, eq=False)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: QuadNum
    a2: QuadNum
    a3: QuadNum
    a4: QuadNum
    a6: QuadNum

    @classmethod
    def from_coeffs(cls, K: QuadraticField, coeffs) -> WeierstrassModel:
        return cls(*(c if isinstance(c, QuadNum) else K(c) for c in coeffs))

    @property
    def field(self) -> QuadraticField:
        return self.a1.field

    @property
    def ainvs(self) -> tuple[QuadNum, QuadNum, QuadNum, QuadNum, QuadNum]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeierstrassModel):
            return NotImplemented
        return self.ainvs == other.ainvs

    def __hash__(self) -> int:
        return hash(self.ainvs)

    def __str__(self) -> str:
        return "[" + ", ".join(str(a) for a in self.ainvs) + "]"

    @cached_property
    def invariants(self) -> Invariants:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return Invariants(b2, b4, b6, b8, c4, c6, disc)

    @property
    def discriminant(self) -> QuadNum:
        return self.invariants.disc

    @property
    def j(self) -> QuadNum:
        inv = self.invariants
        if inv.disc.is_zero():
            raise SingularModelError("j-invariant of a singular model")
        return inv.c4**3 / inv.disc

    def is_elliptic(self) -> bool:
        return not self.discriminant.is_zero()

    # coordinate changes --------------------------------------------------
    def transform(self, u, r=0, s=0, t=0) -> WeierstrassModel:
        """Model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        K = self.field
        u, r, s, t = (v if isinstance(v, QuadNum) else K(v) for v in (u, r, s, t))
        if u.is_zero():
            raise ValueError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.ainvs
        ui = u.inverse()
        u2 = ui * ui
        u3 = u2 * ui
        u4 = u2 * u2
        u6 = u4 * u2
        return WeierstrassModel(
            (a1 + 2 * s) * ui,
            (a2 - s * a1 + 3 * r - s * s) * u2,
            (a3 + r * a1 + 2 * t) * u3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * u4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) * u6,
        )

    def rst(self, r=0, s=0, t=0) -> WeierstrassModel:
        return self.transform(1, r, s, t)

    # points -------------------------------------------------------------
    def is_on_curve(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = P.x, P.y
        return (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)).is_zero()

    def point(self, x, y) -> Point:
        K = self.field
        P = Point(x if isinstance(x, QuadNum) else K(x), y if isinstance(y, QuadNum) else K(y))
        if not self.is_on_curve(P):
            raise NotOnCurveError(f"({x}, {y}) is not on {self}")
        return P

    def negate(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        for R in (P, Q):
            if not self.is_on_curve(R):
                raise NotOnCurveError(f"{R} is not on {self}")
        return self._add(P, Q)

    def _add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.ainvs
        if P.x == Q.x:
            if (P.y + Q.y + a1 * Q.x + a3).is_zero():
                return INFINITY
            num = 3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y
            lam = num / (2 * P.y + a1 * P.x + a3)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        nu = P.y - lam * P.x
        x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def smul(self, n: int, P: Point) -> Point:
        if not self.is_on_curve(P):
            raise NotOnCurveError(f"{P} is not on {self}")
        if n < 0:
            return self.smul(-n, self.negate(P))
        result, addend = INFINITY, P
        while n:
            if n & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            n >>= 1
        return result

    def point_order(self, P: Point, bound: int) -> int | None:
        """Least n <= bound with nP = O, else None."""
        if not self.is_on_curve(P):
            raise NotOnCurveError(f"{P} is not on {self}")
        Q = P
        for n in range(1, bound + 1):
            if Q.is_infinity:
                return n
            Q = self._add(Q, P)
        return None


@dataclass(frozen=True, eq=False)
class Point:
    x: QuadNum | None = None
    y: QuadNum | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return "Point(O)" if self.is_infinity else f"Point({self.x}, {self.y})"


INFINITY = Point()
