"""Parameter sweeps over E_t, JSONL persistence, and theorem checks on the results."""

from __future__ import annotations

import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .exactnum import (
    RationalLike,
    as_fraction,
    factor,
    factor_budget_from_env,
    is_prime,
    rational_str,
    vp,
)
from .family import (
    DegenerateParameterError,
    FamilyCurve,
    RationalPointError,
    bad_support,
    build,
    j_formula,
    sextic,
)
from .localred import GlobalTamagawa, Reduction, check_13_rule, conj_symmetry, local_data, tamagawa
from .quadfield import SplitKind, primes_above, val

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
E2_J = j_formula(2)
MAX_JSON_INT = 2**53


# ----------------------------------------------------------------------------
# records


@dataclass
class SurveyRecord:
    t: str
    d: int | None
    disc: int | None
    j: str | None
    c_E: str | None
    v13: int | None
    locals: list[dict[str, Any]]
    flags: str
    timing: float | None = None
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return self.flags == "ok"

    @property
    def t_value(self) -> Fraction:
        return Fraction(self.t)

    def to_json(self) -> str:
        out = asdict(self)
        for key in ("d", "disc"):
            if out[key] is not None and abs(out[key]) > MAX_JSON_INT:
                out[key] = str(out[key])
        return json.dumps(out, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> SurveyRecord:
        raw = json.loads(line)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {raw.get('schema_version')}")
        for key in ("d", "disc"):
            if isinstance(raw.get(key), str):
                raw[key] = int(raw[key])
        return cls(**raw)


def _local_row(ld) -> dict[str, Any]:
    v = ld.prime
    return {
        "p": v.p,
        "branch": v.branch if v.kind is SplitKind.SPLIT else None,
        "kind": v.kind.value,
        "kodaira": ld.kodaira,
        "v_delta": ld.v_delta_min,
        "split": ld.split,
        "c": ld.c,
    }


def record_locals(g: GlobalTamagawa) -> list[dict[str, Any]]:
    """Local rows kept in a record: c > 1, or above 2 or 13."""
    return [_local_row(ld) for ld in g.locals if ld.c > 1 or ld.prime.p in (2, 13)]


# ----------------------------------------------------------------------------
# checks run on every computed curve


def structural_violations(fc: FamilyCurve, g: GlobalTamagawa) -> list[str]:
    out = []
    M = fc.model
    inv = M.invariants
    if 4 * inv.b8 != inv.b2 * inv.b6 - inv.b4 * inv.b4:
        out.append("4 b8 != b2 b6 - b4^2")
    if 1728 * inv.disc != inv.c4**3 - inv.c6**2:
        out.append("1728 disc != c4^3 - c6^2")
    if not M.j.is_rational():
        out.append("j not rational")
    elif M.j.x != j_formula(fc.t):
        out.append("model j differs from the closed-form j")
    if fc.s * fc.s != sextic(fc.t).D:
        out.append("s^2 != D(t)")
    if M.point_order(fc.marked_point, 20) != 13:
        out.append("(0,0) does not have order 13")
    if fc.d in (1, 13):
        out.append(f"d = {fc.d}")
    if primes_above(fc.field, 2)[0].kind is not SplitKind.SPLIT:
        out.append("2 does not split")
    for ld in g.locals:
        if ld.reduction.multiplicative and val(M.j, ld.prime) != -ld.v_delta_min:
            out.append(f"v(j) != -v(disc_min) at {ld.prime.label}")
        if ld.reduction is Reduction.ADDITIVE and ld.prime.p != 13:
            out.append(f"additive reduction away from 13 at {ld.prime.label}")
    if g.v13 % 2 or g.v13 < 2:
        out.append(f"v13 = {g.v13}")
    return out


def i13m_violations(fc: FamilyCurve, g: GlobalTamagawa) -> list[str]:
    """Split I_13m with c = 13m wherever t or t - 1 has nonzero valuation away from 13."""
    out = []
    for ld in g.locals:
        v = ld.prime
        if v.p == 13:
            continue
        m = max(abs(val(fc.t, v)), abs(val(fc.t - 1, v)))
        if m == 0:
            continue
        if not (ld.reduction is Reduction.SPLIT_MULT and ld.kodaira == f"I{13 * m}" and ld.c == 13 * m):
            out.append(f"{v.label}: expected split I{13 * m}, got {ld.kodaira} {ld.reduction.value} c={ld.c}")
        if v.kind is not SplitKind.SPLIT:
            out.append(f"{v.label}: 13 | c at a non-split prime")
    return out


def support_oracle(fc: FamilyCurve, budget: int | None = None) -> set[int]:
    """Rational primes below a prime of bad reduction, found without the structural shortcut.

    Every prime dividing the norm of the discriminant or a coefficient
    denominator is tested with Tate's algorithm; any other prime has an
    integral model with unit discriminant and so good reduction.
    """
    candidates: set[int] = set()
    N = fc.model.discriminant.norm()
    for n in (N.numerator, N.denominator):
        if abs(n) > 1:
            fac = factor(n, budget)
            if not fac.complete:
                raise ArithmeticError(f"norm(disc) cofactor {fac.unfactored_cofactor} left unfactored")
            candidates.update(fac.primes)
    for a in fc.model.ainvs:
        for q in (a.x, a.y):
            if q.denominator > 1:
                candidates.update(factor(q.denominator, budget).primes)
    bad = set()
    for p in sorted(candidates):
        for v in primes_above(fc.field, p):
            if local_data(fc.model, v).v_delta_min > 0:
                bad.add(p)
    return bad


def compute_record(
    t: RationalLike,
    oracle: bool = False,
    factor_budget: int | None = None,
    record_timing: bool = False,
) -> SurveyRecord:
    t = as_fraction(t)
    start = time.perf_counter()
    ts = rational_str(t)
    try:
        fc = build(t)
    except DegenerateParameterError:
        return SurveyRecord(ts, None, None, None, None, None, [], "degenerate")
    except RationalPointError:
        return SurveyRecord(ts, 1, None, None, None, None, [], "rational-point")
    flags = "ok"
    try:
        support = bad_support(t)
        g = tamagawa(fc, support)
        problems = structural_violations(fc, g) + i13m_violations(fc, g)
        problems += conj_symmetry(g).violations
        if not check_13_rule(t, g).agrees:
            problems.append("reduction at 13 disagrees with the congruence rule")
        if oracle:
            missed = support_oracle(fc, factor_budget) - support
            if missed:
                problems.append(f"bad primes outside the support: {sorted(missed)}")
        if problems:
            flags = "error: " + "; ".join(problems)
    except Exception as exc:  # recorded per curve, never aborts a sweep
        log.exception("t = %s failed", ts)
        return SurveyRecord(ts, fc.d, fc.field.disc, None, None, None, [], f"error: {type(exc).__name__}: {exc}")
    elapsed = round(time.perf_counter() - start, 4) if record_timing else None
    return SurveyRecord(
        t=ts,
        d=fc.d,
        disc=fc.field.disc,
        j=rational_str(fc.model.j.x),
        c_E=str(g.c_E),
        v13=g.v13,
        locals=record_locals(g),
        flags=flags,
        timing=elapsed,
    )


# ----------------------------------------------------------------------------
# sweeps


def height(t: RationalLike) -> int:
    t = as_fraction(t)
    return max(abs(t.numerator), t.denominator)


def _order_key(t: Fraction) -> tuple[int, int, int]:
    return height(t), t.numerator, t.denominator


def enumerate_t(H: int) -> list[Fraction]:
    """All t = r/q in lowest terms with max(|r|, q) <= H, excluding 0 and 1."""
    if H < 1:
        raise ValueError("height bound must be positive")
    out = set()
    for q in range(1, H + 1):
        for r in range(-H, H + 1):
            if math.gcd(r, q) == 1 and r not in (0, q):
                out.add(Fraction(r, q))
    return sorted(out, key=_order_key)


@dataclass
class RunConfig:
    max_height: int
    jobs: int = 1
    out_path: str = "sweep.jsonl"
    resume: bool = False
    factor_budget: int = field(default_factory=factor_budget_from_env)
    oracle_mode: bool = False
    record_timing: bool = False

    def __post_init__(self) -> None:
        if self.max_height < 1:
            raise ValueError("max_height must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


@dataclass
class SweepResult:
    records: list[SurveyRecord]
    computed: int
    reused: int


def read_records(path: str | os.PathLike) -> list[SurveyRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(SurveyRecord.from_json(line))
    return out


def write_records(path: str | os.PathLike, records: Iterable[SurveyRecord]) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
    tmp.replace(path)


def _compute_star(args) -> SurveyRecord:
    return compute_record(*args)


def sweep(cfg: RunConfig) -> SweepResult:
    params = enumerate_t(cfg.max_height)
    existing: dict[str, SurveyRecord] = {}
    if cfg.resume and Path(cfg.out_path).exists():
        existing = {rec.t: rec for rec in read_records(cfg.out_path)}
    todo = [t for t in params if rational_str(t) not in existing]
    log.info("sweep H=%d: %d parameters, %d to compute", cfg.max_height, len(params), len(todo))
    args = [(t, cfg.oracle_mode, cfg.factor_budget, cfg.record_timing) for t in todo]
    if cfg.jobs == 1 or len(todo) < 2:
        fresh = [_compute_star(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            fresh = list(pool.map(_compute_star, args, chunksize=4))
    by_t = dict(existing)
    by_t.update((rec.t, rec) for rec in fresh)
    # records from an earlier sweep with a larger bound are kept, in enumeration order
    records = sorted(by_t.values(), key=lambda rec: _order_key(rec.t_value))
    write_records(cfg.out_path, records)
    return SweepResult(records, len(fresh), len(params) - len(todo))


# ----------------------------------------------------------------------------
# theorem checks


@dataclass
class ParityReport:
    checked: int
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_parity(records: Iterable[SurveyRecord]) -> ParityReport:
    """v13(c_E) is even and at least 2 for every ok record."""
    checked, bad = 0, []
    for rec in records:
        if not rec.ok:
            continue
        checked += 1
        if rec.v13 is None or rec.v13 < 2 or rec.v13 % 2:
            bad.append(f"t = {rec.t}: v13 = {rec.v13}")
        elif int(vp(int(rec.c_E), 13)) != rec.v13:
            bad.append(f"t = {rec.t}: v13 disagrees with c_E = {rec.c_E}")
    return ParityReport(checked, bad)


@dataclass
class UniquenessReport:
    buckets: dict[int, list[str]]
    v13_two: list[str]
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_unique_v13_2(records: Iterable[SurveyRecord]) -> UniquenessReport:
    """v13 = 2 only for the curve with j = j(E_2); every other record has v13 >= 4."""
    buckets: dict[int, list[str]] = {}
    bad, two = [], []
    for rec in records:
        if not rec.ok:
            continue
        buckets.setdefault(rec.v13, []).append(rec.t)
        if rec.v13 == 2:
            two.append(rec.t)
            if Fraction(rec.j) != E2_J:
                bad.append(f"t = {rec.t}: v13 = 2 but j = {rec.j}")
        elif rec.v13 < 4:
            bad.append(f"t = {rec.t}: v13 = {rec.v13}")
    return UniquenessReport(dict(sorted(buckets.items())), two, bad)


# ----------------------------------------------------------------------------
# search for v13 = 4 along the families with few prime divisors


def candidates_for_set(values: tuple[int, int, int]) -> list[Fraction]:
    """All t = r/s with {|r|, |s|, |r - s|} equal to the given set."""
    target = sorted(values)
    out = set()
    for r_abs in values:
        for s_abs in values:
            for sr in (1, -1):
                r, s = sr * r_abs, s_abs
                if sorted((abs(r), abs(s), abs(r - s))) == target and math.gcd(r, s) == 1:
                    t = Fraction(r, s)
                    if t not in (0, 1):
                        out.add(t)
    return sorted(out)


def two_prime_condition(t: Fraction) -> bool:
    r, s = t.numerator, t.denominator
    fac = factor(r * s * (r - s))
    return fac.complete and len(fac.factors) == 2


def thirteen_multiple_condition(fc: FamilyCurve, budget: int | None = None) -> bool | None:
    """No prime has valuation a nonzero multiple of 13 in (t^3-4t^2+t+1) f(t,s).

    That product is 2 disc / (t^13 (t-1)^13).  Returns None when the norm
    cannot be factored within the budget.
    """
    t = fc.t
    g = 2 * fc.model.discriminant / (t**13 * (t - 1) ** 13)
    N = g.norm()
    primes: set[int] = set()
    for n in (N.numerator, N.denominator):
        if abs(n) > 1:
            fac = factor(n, budget)
            if not fac.complete:
                return None
            primes.update(fac.primes)
    for p in primes:
        for v in primes_above(fc.field, p):
            k = val(g, v)
            if k != 0 and k % 13 == 0:
                return False
    return True


@dataclass
class SearchRow:
    family: str
    values: tuple[int, int, int]
    t: str
    two_primes: bool
    condition2: bool | None
    v13: int | None
    flag: str
    record: SurveyRecord

    def as_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["record"] = json.loads(self.record.to_json())
        return out


def search_sets(mersenne_exps: Iterable[int] = (), fermat_ks: Iterable[int] = (), special189: bool = False):
    sets = []
    for p in mersenne_exps:
        sets.append((f"mersenne p={p}", (1, 2**p - 1, 2**p)))
    for k in fermat_ks:
        sets.append((f"fermat k={k}", (1, 2**k, 2**k + 1)))
    if special189:
        sets.append(("special", (1, 8, 9)))
    return sets


def search_v13_4(
    mersenne_exps: Iterable[int] = (),
    fermat_ks: Iterable[int] = (),
    special189: bool = False,
    factor_budget: int | None = None,
) -> list[SearchRow]:
    """Compute v13 along {1, 2^p - 1, 2^p}, {1, 2^k, 2^k + 1} and {1, 8, 9}.

    ``flag`` is "v13=4" when both conditions hold and v13 = 4, "violation"
    when both hold but v13 != 4, and otherwise names the failing condition.
    """
    rows = []
    for name, values in search_sets(mersenne_exps, fermat_ks, special189):
        if "mersenne" in name and not is_prime(values[1]):
            log.warning("%s: 2^p - 1 = %d is not prime", name, values[1])
        for t in candidates_for_set(values):
            rec = compute_record(t, factor_budget=factor_budget)
            cond1 = two_prime_condition(t)
            cond2 = None
            if rec.ok:
                cond2 = thirteen_multiple_condition(build(t), factor_budget)
            if not rec.ok:
                flag = "record-error"
            elif not cond1:
                flag = "condition-1-fails"
            elif cond2 is None:
                flag = "condition-2-unknown"
            elif not cond2:
                flag = "condition-2-fails"
            else:
                flag = "v13=4" if rec.v13 == 4 else "violation"
            rows.append(SearchRow(name, values, rec.t, cond1, cond2, rec.v13, flag, rec))
    return rows


# ----------------------------------------------------------------------------
# quick self-consistency battery


def sign_invariance(params: Iterable[RationalLike]) -> list[str]:
    """Parameters whose c_E changes when s is replaced by -s."""
    bad = []
    for t in params:
        try:
            c_plus = tamagawa(build(t, 1)).c_E
            c_minus = tamagawa(build(t, -1)).c_E
        except (DegenerateParameterError, RationalPointError):
            continue
        if c_plus != c_minus:
            bad.append(f"t = {rational_str(as_fraction(t))}: {c_plus} vs {c_minus}")
    return bad


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def selftest(max_height: int = 3) -> list[Check]:
    from .exactnum import kronecker, sqrt_mod_prime_power
    from .family import build_inverted

    checks = []

    bad = [
        (a, p) for p in (3, 5, 7, 11, 13, 17) for a in range(-20, 21)
        if kronecker(a, p) != (0 if a % p == 0 else (1 if pow(a, (p - 1) // 2, p) == 1 else -1))
    ]
    checks.append(Check("kronecker symbol against Euler's criterion", not bad, str(bad[:3])))

    nums = [2**67 - 1, 48925, 1001 * 10**12 + 7, 600851475143]
    bad = [n for n in nums if factor(n).value() != n]
    checks.append(Check("factorization round trip", not bad, str(bad)))

    bad = [(d, p, k) for d, p, k in ((17, 2, 5), (17, 13, 3), (313, 3, 4), (193, 7, 3))
           if (sqrt_mod_prime_power(d, p, k) ** 2 - d) % p**k]
    checks.append(Check("p-adic square roots", not bad, str(bad)))

    params = enumerate_t(max_height)
    bad = []
    for t in params:
        fc = build(t)
        inv = build_inverted(t)
        if fc.model.j != j_formula(t) or inv.model.j != fc.model.j:
            bad.append(rational_str(t))
        if inv.model.point_order(inv.marked_point, 20) != 13:
            bad.append(rational_str(t))
    checks.append(Check("j-invariant of both models matches the closed form", not bad, str(bad)))

    g = tamagawa(build(2))
    checks.append(Check("c_E(E_2) = 169", g.c_E == 169, f"c_E = {g.c_E}"))

    records = [compute_record(t, oracle=True) for t in params]
    bad = [f"{r.t}: {r.flags}" for r in records if not r.ok]
    checks.append(Check("records agree with structure and support oracle", not bad, "; ".join(bad)))
    checks.append(Check("parity of v13", verify_parity(records).passed))
    checks.append(Check("v13 = 2 only for E_2", verify_unique_v13_2(records).passed))

    bad = sign_invariance(params[::2])
    checks.append(Check("c_E independent of the sign of s", not bad, "; ".join(bad)))
    return checks
