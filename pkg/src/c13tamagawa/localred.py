"""Tate's algorithm at primes of a quadratic field, and global Tamagawa products.

The implementation works in every residue characteristic, 2 and 3 included:
singular points, tangent quadratics and the auxiliary cubic are all solved
in the residue field rather than through char >= 5 shortcuts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .curve import SingularModelError, WeierstrassModel
from .exactnum import INF, RationalLike, as_fraction, vp
from .family import FamilyCurve, bad_support, build
from .quadfield import (
    KPrime,
    QuadNum,
    SplitKind,
    conjugate_prime,
    lift,
    primes_above,
    residue,
    uniformizer,
    val,
)
from .resfield import ResidueElem


class NonIntegralModelError(ValueError):
    pass


class LocalInvariantError(RuntimeError):
    """Tate's algorithm produced data violating a structural invariant."""


class Reduction(enum.Enum):
    GOOD = "good"
    SPLIT_MULT = "split"
    NONSPLIT_MULT = "nonsplit"
    ADDITIVE = "additive"

    @property
    def multiplicative(self) -> bool:
        return self in (Reduction.SPLIT_MULT, Reduction.NONSPLIT_MULT)


@dataclass(frozen=True)
class LocalData:
    prime: KPrime
    kodaira: str
    v_delta_min: int
    c: int
    reduction: Reduction
    minimal_model: WeierstrassModel = field(repr=False, compare=False)

    @property
    def split(self) -> bool | None:
        if not self.reduction.multiplicative:
            return None
        return self.reduction is Reduction.SPLIT_MULT


@dataclass(frozen=True)
class GlobalTamagawa:
    locals: tuple[LocalData, ...]
    c_E: int
    v13: int

    def local_at(self, v: KPrime) -> LocalData | None:
        for ld in self.locals:
            if ld.prime == v:
                return ld
        return None


class _Local:
    """Valuation, reduction and lifting at a fixed prime ``v``."""

    def __init__(self, v: KPrime) -> None:
        self.v = v
        self.F = v.residue_field
        self.p = v.p
        self.pi = uniformizer(v)
        self.pi_inv = self.pi.inverse()

    def val(self, z: QuadNum) -> int | float:
        return val(z, self.v)

    def red(self, z: QuadNum) -> ResidueElem:
        return residue(z, self.v)

    def lift(self, a: ResidueElem) -> QuadNum:
        return lift(a, self.v)

    def pi_pow(self, k: int) -> QuadNum:
        return self.pi**k

    def div_pi(self, z: QuadNum, k: int) -> QuadNum:
        return z * self.pi_inv**k


def integralize(M: WeierstrassModel, v: KPrime) -> WeierstrassModel:
    """Scale by the least power of a uniformizer making every a_i integral at ``v``."""
    if M.discriminant.is_zero():
        raise SingularModelError("singular model")
    k = 0
    for weight, a in zip((1, 2, 3, 4, 6), M.ainvs):
        if not a.is_zero():
            k = max(k, math.ceil(-val(a, v) / weight))
    if k == 0:
        return M
    return M.transform(uniformizer(v) ** (-k))


def _double_root(F, a, b, c) -> ResidueElem | None:
    """The repeated root of aX^2 + bX + c in the residue field, if it has one."""
    roots = F.roots_quadratic(a, b, c)
    if len(roots) == 2 and roots[0] == roots[1]:
        return roots[0]
    return None


def _singular_point(M: WeierstrassModel, loc: _Local) -> tuple[ResidueElem, ResidueElem]:
    F = loc.F
    A1, A2, A3, A4, A6 = (loc.red(a) for a in M.ainvs)
    if F.p == 2:
        if A1:
            x0 = A3 / A1
            y0 = (x0 * x0 + A4) / A1
        else:
            x0 = F.sqrt(A4)
            y0 = F.sqrt(x0**3 + A2 * x0 * x0 + A4 * x0 + A6)
        return x0, y0
    inv = M.invariants
    B2, B4, B6 = (loc.red(b) for b in (inv.b2, inv.b4, inv.b6))
    # complete the square: (y + (a1 x + a3)/2)^2 = x^3 + b2/4 x^2 + b4/2 x + b6/4
    roots = F.roots_cubic(B2 / 4, B4 / 2, B6 / 4)
    repeated = [r for r in roots if roots.count(r) >= 2]
    if not repeated:
        raise LocalInvariantError(f"no singular point found at {loc.v}")
    x0 = repeated[0]
    return x0, -(A1 * x0 + A3) / 2


def _result(v, kodaira, model, loc, c, reduction) -> LocalData:
    vd = loc.val(model.discriminant)
    return LocalData(v, kodaira, int(vd), c, reduction, model)


def tate(M: WeierstrassModel, v: KPrime) -> LocalData:
    """Kodaira type, minimal discriminant valuation and Tamagawa number at ``v``."""
    if M.discriminant.is_zero():
        raise SingularModelError("singular model")
    loc = _Local(v)
    for a in M.ainvs:
        if loc.val(a) < 0:
            raise NonIntegralModelError(f"{M} is not integral at {v}")
    ld = _tate(M, loc)
    problems = local_invariant_violations(ld)
    if problems:
        raise LocalInvariantError(f"{v}: " + "; ".join(problems))
    return ld


def _tate(model: WeierstrassModel, loc: _Local) -> LocalData:
    v, F, p = loc.v, loc.F, loc.p
    pi = loc.pi
    pi2 = pi * pi
    rescales = 0
    max_rescales = loc.val(model.discriminant) // 12
    while True:
        vd = loc.val(model.discriminant)
        if vd == 0:
            return LocalData(v, "I0", 0, 1, Reduction.GOOD, model)

        # move the singular point of the reduction to (0, 0)
        x0, y0 = _singular_point(model, loc)
        model = model.rst(r=loc.lift(x0), t=loc.lift(y0))
        a1, a2, a3, a4, a6 = model.ainvs
        inv = model.invariants
        if min(loc.val(a3), loc.val(a4), loc.val(a6)) < 1:
            raise LocalInvariantError("singular point not moved to the origin")

        if loc.val(inv.b2) == 0:
            roots = F.roots_quadratic(1, loc.red(a1), -loc.red(a2))
            n = int(vd)
            if roots:
                return LocalData(v, f"I{n}", n, n, Reduction.SPLIT_MULT, model)
            return LocalData(v, f"I{n}", n, 2 if n % 2 == 0 else 1, Reduction.NONSPLIT_MULT, model)

        if loc.val(a6) < 2:
            return _result(v, "II", model, loc, 1, Reduction.ADDITIVE)
        if loc.val(inv.b8) < 3:
            return _result(v, "III", model, loc, 2, Reduction.ADDITIVE)
        if loc.val(inv.b6) < 3:
            roots = F.roots_quadratic(1, loc.red(loc.div_pi(a3, 1)), -loc.red(loc.div_pi(a6, 2)))
            return _result(v, "IV", model, loc, 3 if roots else 1, Reduction.ADDITIVE)

        # make pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if p == 2:
            s = loc.lift(F.sqrt(loc.red(a2)))
            t = pi * loc.lift(F.sqrt(loc.red(loc.div_pi(a6, 2))))
        else:
            s = -a1 / 2
            t = -a3 / 2
        model = model.rst(s=s, t=t)
        a1, a2, a3, a4, a6 = model.ainvs
        if (
            loc.val(a1) < 1 or loc.val(a2) < 1 or loc.val(a3) < 2
            or loc.val(a4) < 2 or loc.val(a6) < 3
        ):
            raise LocalInvariantError("step 6 normalisation failed")

        roots = F.roots_cubic(
            loc.red(loc.div_pi(a2, 1)), loc.red(loc.div_pi(a4, 2)), loc.red(loc.div_pi(a6, 3))
        )
        mult = {r: roots.count(r) for r in roots}
        if all(m == 1 for m in mult.values()):
            return _result(v, "I0*", model, loc, 1 + len(roots), Reduction.ADDITIVE)

        if max(mult.values()) == 2:
            double = next(r for r, m in mult.items() if m == 2)
            model = model.rst(r=pi * loc.lift(double))
            return _in_star(model, loc)

        triple = roots[0]
        model = model.rst(r=pi * loc.lift(triple))
        a1, a2, a3, a4, a6 = model.ainvs
        a3t, a6t = loc.red(loc.div_pi(a3, 2)), loc.red(loc.div_pi(a6, 4))
        y = _double_root(F, F.one, a3t, -a6t)
        if y is None:
            roots = F.roots_quadratic(1, a3t, -a6t)
            return _result(v, "IV*", model, loc, 3 if roots else 1, Reduction.ADDITIVE)
        model = model.rst(t=pi2 * loc.lift(y))
        a1, a2, a3, a4, a6 = model.ainvs
        if loc.val(a4) < 4:
            return _result(v, "III*", model, loc, 2, Reduction.ADDITIVE)
        if loc.val(a6) < 6:
            return _result(v, "II*", model, loc, 1, Reduction.ADDITIVE)

        # the model was not minimal: divide a_i by pi^i and start again
        rescales += 1
        if rescales > max_rescales:
            raise LocalInvariantError("minimality restarts exceeded v(disc)/12")
        model = model.transform(pi)


def _in_star(model: WeierstrassModel, loc: _Local) -> LocalData:
    """Subprocedure for types I_m^*; the cubic has its double root at 0."""
    v, F = loc.v, loc.F
    pi = loc.pi
    mx = my = pi * pi
    ix = iy = 3
    while True:
        a1, a2, a3, a4, a6 = model.ainvs
        a2t = loc.red(loc.div_pi(a2, 1))
        a3t = loc.red(a3 / my)
        a6t = loc.red(a6 / (mx * my))
        y = _double_root(F, F.one, a3t, -a6t)
        if y is None:
            c = 4 if F.roots_quadratic(1, a3t, -a6t) else 2
            break
        model = model.rst(t=my * loc.lift(y))
        my = my * pi
        iy += 1
        a1, a2, a3, a4, a6 = model.ainvs
        a2t = loc.red(loc.div_pi(a2, 1))
        a4t = loc.red(a4 / (pi * mx))
        a6t = loc.red(a6 / (mx * my))
        x = _double_root(F, a2t, a4t, a6t)
        if x is None:
            c = 4 if F.roots_quadratic(a2t, a4t, a6t) else 2
            break
        model = model.rst(r=mx * loc.lift(x))
        mx = mx * pi
        ix += 1
    return _result(v, f"I{ix + iy - 5}*", model, loc, c, Reduction.ADDITIVE)


def local_invariant_violations(ld: LocalData) -> list[str]:
    out = []
    red = ld.reduction
    if (red is Reduction.GOOD) != (ld.kodaira == "I0") or (red is Reduction.GOOD) != (ld.v_delta_min == 0):
        out.append("good reduction iff I0 iff v(disc_min) = 0")
    if red is Reduction.GOOD and ld.c != 1:
        out.append("good reduction with c != 1")
    if red is Reduction.SPLIT_MULT and ld.c != ld.v_delta_min:
        out.append("split multiplicative with c != v(disc_min)")
    if red is Reduction.NONSPLIT_MULT and ld.c != (2 if ld.v_delta_min % 2 == 0 else 1):
        out.append("nonsplit multiplicative c rule broken")
    if red is Reduction.ADDITIVE and ld.c > 4:
        out.append("additive with c > 4")
    vc4 = val(ld.minimal_model.invariants.c4, ld.prime)
    if red.multiplicative and not (vc4 == 0 and ld.v_delta_min > 0):
        out.append("multiplicative but v(c4) > 0")
    if red is Reduction.ADDITIVE and not (vc4 > 0 and ld.v_delta_min > 0):
        out.append("additive but v(c4) = 0")
    return out


def local_data(M: WeierstrassModel, v: KPrime) -> LocalData:
    return tate(integralize(M, v), v)


def tamagawa(fc: FamilyCurve, support: set[int] | None = None) -> GlobalTamagawa:
    """c_E as the product of local Tamagawa numbers over the primes above the bad support."""
    if support is None:
        support = bad_support(fc.t)
    locals_ = []
    for p in sorted(support):
        for v in primes_above(fc.field, p):
            locals_.append(local_data(fc.model, v))
    c_E = math.prod(ld.c for ld in locals_)
    return GlobalTamagawa(tuple(locals_), c_E, int(vp(c_E, 13)))


# ----------------------------------------------------------------------------
# checks tied to the behaviour at 13 and under Galois conjugation


def thirteen_predicate(t: RationalLike) -> bool:
    """True when v13(t) < 0, or v13(t) >= 0 and t = 0 or 1 mod 13."""
    t = as_fraction(t)
    return vp(t, 13) != 0 or vp(t - 1, 13) > 0


@dataclass
class ThirteenReport:
    t: Fraction
    predicate: bool
    multiplicative_at_13: bool
    kinds: list[str]
    splits: bool
    agrees: bool


def check_13_rule(t: RationalLike, g: GlobalTamagawa | None = None) -> ThirteenReport:
    t = as_fraction(t)
    if g is None:
        g = tamagawa(build(t))
    at13 = [ld for ld in g.locals if ld.prime.p == 13]
    mult = any(ld.reduction.multiplicative for ld in at13)
    pred = thirteen_predicate(t)
    splits = bool(at13) and at13[0].prime.kind is SplitKind.SPLIT
    agrees = (pred == mult) and (splits or not pred)
    return ThirteenReport(t, pred, mult, [ld.reduction.value for ld in at13], splits, agrees)


@dataclass
class SymmetryReport:
    ok: bool
    violations: list[str]
    balanced_pairs: list[int]
    unbalanced_pairs: list[int]


def conj_symmetry(g: GlobalTamagawa) -> SymmetryReport:
    """Every local factor divisible by 13 sits at a split prime matching its conjugate."""
    violations = []
    balanced, unbalanced = set(), set()
    for ld in g.locals:
        v = ld.prime
        if v.kind is SplitKind.SPLIT:
            other = g.local_at(conjugate_prime(v))
            if other is None:
                violations.append(f"conjugate of {v.label} missing")
                continue
            (balanced if other.c == ld.c else unbalanced).add(v.p)
            if ld.c % 13 == 0 and other.c != ld.c:
                violations.append(f"c({v.label}) = {ld.c} but conjugate has {other.c}")
        elif ld.c % 13 == 0:
            violations.append(f"13 | c at non-split prime {v.label}")
    return SymmetryReport(not violations, violations, sorted(balanced), sorted(unbalanced))
