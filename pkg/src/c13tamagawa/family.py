"""The family E_t of curves with a point of order 13 over quadratic fields.

E_t : y^2 + a xy + c y = x^3 + b x^2 over K = Q(s), s^2 = D(t) with
D(t) = t^6 - 2t^5 + t^4 - 2t^3 + 6t^2 - 4t + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import Point, WeierstrassModel
from .exactnum import RationalLike, as_fraction, factor, squarefree_split
from .quadfield import QuadNum, QuadraticField


class DegenerateParameterError(ValueError):
    """t is 0 or 1, a rational cusp; the curve is singular."""


class RationalPointError(ValueError):
    """D(t) is a rational square, so E_t would be defined over Q."""


def _poly(coeffs: list[int], t):
    """Horner evaluation; ``coeffs`` are highest degree first."""
    acc = 0
    for c in coeffs:
        acc = acc * t + c
    return acc


SEXTIC = [1, -2, 1, -2, 6, -4, 1]
CUBIC = [1, -4, 1, 1]  # t^3 - 4t^2 + t + 1

# j(E_t) numerator pieces
_J_QUAD = [1, -1, 1]
_J_DODEC = [1, -9, 29, -40, 22, -16, 40, -22, -23, 25, -4, -3, 1]


@dataclass(frozen=True)
class SexticData:
    t: Fraction
    D: Fraction
    d: int
    m: Fraction


@dataclass(frozen=True)
class FamilyCurve:
    t: Fraction
    field: QuadraticField
    s: QuadNum
    model: WeierstrassModel
    marked_point: Point

    @property
    def d(self) -> int:
        return self.field.d


def sextic(t: RationalLike) -> SexticData:
    t = as_fraction(t)
    D = _poly(SEXTIC, t)
    if D == 0:
        # D has no rational roots, kept for safety
        raise DegenerateParameterError(f"D({t}) = 0")
    d, m = squarefree_split(D)
    return SexticData(t, D, d, m)


def _check_parameter(t: Fraction) -> SexticData:
    if t in (0, 1):
        raise DegenerateParameterError(f"t = {t} is a cusp")
    data = sextic(t)
    if data.d == 1:
        raise RationalPointError(f"D({t}) = {data.D} is a rational square")
    return data


def _field_and_s(data: SexticData, sign: int) -> tuple[QuadraticField, QuadNum]:
    K = QuadraticField(data.d)
    return K, K(0, sign * data.m)


def tate_normal_coefficients(t: Fraction, s: QuadNum) -> tuple[QuadNum, QuadNum, QuadNum]:
    a = ((t - 1) ** 2 * (t * t + t - 1) * s + _poly([-1, 2, 3, -2, -5, 9, -5, 1], t)) / 2
    inner = _poly([1, 2, 0, -5, 4, -1], t) * s + _poly([-1, -1, 4, 2, 1, -13, 14, -6, 1], t)
    b = t * (t - 1) ** 2 * inner / 2
    c = t**5 * b
    return a, b, c


def build(t: RationalLike, sign: int = 1) -> FamilyCurve:
    """E_t over Q(sqrt d) with s = sign * m * sqrt(d), m > 0."""
    t = as_fraction(t)
    data = _check_parameter(t)
    K, s = _field_and_s(data, sign)
    a, b, c = tate_normal_coefficients(t, s)
    model = WeierstrassModel(a, b, c, K(0), K(0))
    if not model.is_elliptic():
        raise DegenerateParameterError(f"E_{t} is singular")
    return FamilyCurve(t, K, s, model, Point(K(0), K(0)))


def build_inverted(t: RationalLike, sign: int = 1) -> FamilyCurve:
    """E_t rewritten in z = 1/t, integral at odd primes where t has negative valuation.

    The model is E_t transformed by u = -t^7 and keeps the same ``s``:
    a1 = A(z)/2, a2 = -z^3 (z-1)^2 Q(z)/2, a3 = z^5 (z-1)^2 Q(z)/2.
    """
    t = as_fraction(t)
    data = _check_parameter(t)
    K, s = _field_and_s(data, sign)
    z = 1 / t
    a1 = (
        (s - 1) * z**7 + (-3 * s + 5) * z**6 + (2 * s - 9) * z**5 + (s + 5) * z**4
        + (-s + 2) * z**3 - 3 * z**2 - 2 * z + 1
    ) / 2
    q = (
        (s - 1) * z**8 + (-4 * s + 6) * z**7 + (5 * s - 14) * z**6 + 13 * z**5
        + (-2 * s - 1) * z**4 + (-s - 2) * z**3 - 4 * z**2 + z + 1
    )
    a2 = -(z**3) * (z - 1) ** 2 * q / 2
    a3 = z**5 * (z - 1) ** 2 * q / 2
    model = WeierstrassModel(a1, a2, a3, K(0), K(0))
    if not model.is_elliptic():
        raise DegenerateParameterError(f"inverted model at t = {t} is singular")
    return FamilyCurve(t, K, s, model, Point(K(0), K(0)))


def j_formula(t: RationalLike) -> Fraction:
    t = as_fraction(t)
    den = t**13 * (t - 1) ** 13 * _poly(CUBIC, t)
    if den == 0:
        raise ZeroDivisionError(f"j-formula denominator vanishes at t = {t}")
    return (_poly(_J_QUAD, t) ** 3 * _poly(_J_DODEC, t) ** 3) / den


def cubic_value(t: RationalLike) -> Fraction:
    return _poly(CUBIC, as_fraction(t))


def bad_support(t: RationalLike) -> set[int]:
    """13 together with every prime dividing t, t - 1 or t^3 - 4t^2 + t + 1.

    For a prime v not above 13, a curve with a rational 13-torsion point has
    no additive reduction at v, and multiplicative reduction forces v(j) < 0.
    The rational j-invariant has its denominator supported on these values.
    """
    t = as_fraction(t)
    if t in (0, 1):
        raise DegenerateParameterError(f"t = {t} is a cusp")
    support = {13}
    for q in (t, t - 1, cubic_value(t)):
        for n in (q.numerator, q.denominator):
            if abs(n) > 1:
                fac = factor(n)
                if not fac.complete:
                    raise ArithmeticError(f"could not factor {n}")
                support.update(fac.primes)
    return support
