"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from c13tamagawa.cli import main
from c13tamagawa.curve import WeierstrassModel
from c13tamagawa.family import bad_support, build
from c13tamagawa.localred import Reduction, check_13_rule, conj_symmetry, tamagawa
from c13tamagawa.quadfield import QuadraticField, SplitKind, conjugate_prime, primes_above, val
from c13tamagawa.survey import (
    RunConfig,
    enumerate_t,
    i13m_violations,
    search_v13_4,
    structural_violations,
    support_oracle,
    sweep,
    verify_parity,
    verify_unique_v13_2,
)

SWEEP_HEIGHT = 10
SWEEP_LIMIT_SECONDS = 300


def _report(capsys, number: int, title: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {title} ({detail})")


@pytest.fixture(scope="module")
def swept(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep") / "h10.jsonl"
    start = time.perf_counter()
    result = sweep(RunConfig(SWEEP_HEIGHT, jobs=1, out_path=str(out)))
    return result.records, time.perf_counter() - start


@pytest.fixture(scope="module")
def curves():
    extra = [Fraction(13), Fraction(14), Fraction(26), Fraction(1, 13)]
    out = {}
    for t in enumerate_t(SWEEP_HEIGHT) + extra:
        fc = build(t)
        out[t] = (fc, tamagawa(fc))
    return out


def test_criterion_1_e2_end_to_end(capsys):
    K = QuadraticField(17)
    printed = WeierstrassModel.from_coeffs(K, [1, -1, 1, K(Fraction(-541, 2), Fraction(131, 2)), K(3624, -879)])
    start = time.perf_counter()
    rc = main(["curve", "--t", "2"])
    elapsed = time.perf_counter() - start
    lines = capsys.readouterr().out.strip().splitlines()
    fc = build(2)
    g = tamagawa(fc)
    ok = (
        rc == 0
        and fc.field == K
        and fc.model.j == printed.j
        and (g.c_E, g.v13) == (169, 2)
        and lines[-1] == "c_E = 169, v13(c_E) = 2"
        and elapsed < 1.0
    )
    _report(capsys, 1, "E_2 over Q(sqrt 17) with c_E = 169", ok, f"j = {fc.model.j}, {elapsed:.3f} s")
    assert ok


def test_criterion_2_triple_coincidence(capsys):
    curves = [build(t) for t in (-1, Fraction(1, 2), 2)]
    ds = {fc.d for fc in curves}
    js = {str(fc.model.j.x) for fc in curves}
    ok = ds == {17} and len(js) == 1 and all(fc.model.j.is_rational() for fc in curves)
    _report(capsys, 2, "t = -1, 1/2, 2 give the same d and j", ok, f"d = {ds}, j = {js}")
    assert ok


def test_criterion_3_parity_sweep(capsys, swept):
    records, elapsed = swept
    rep = verify_parity(records)
    ok = rep.passed and rep.checked == len(records) == len(enumerate_t(SWEEP_HEIGHT)) and elapsed <= SWEEP_LIMIT_SECONDS
    _report(capsys, 3, f"v13 even and >= 2 up to height {SWEEP_HEIGHT}", ok,
            f"{rep.checked} curves, {len(rep.violations)} violations, {elapsed:.1f} s single-threaded")
    assert ok, rep.violations


def test_criterion_4_uniqueness(capsys, swept):
    records, _ = swept
    rep = verify_unique_v13_2(records)
    others_ok = all(r.v13 >= 4 for r in records if r.t not in ("-1/1", "1/2", "2/1"))
    ok = rep.passed and sorted(rep.v13_two) == ["-1/1", "1/2", "2/1"] and others_ok
    buckets = {k: len(v) for k, v in rep.buckets.items()}
    _report(capsys, 4, "v13 = 2 exactly at t = -1, 1/2, 2", ok, f"buckets {buckets}")
    assert ok, rep.violations


def test_criterion_5_thirteen_rule(capsys, curves):
    bad = [str(t) for t, (fc, g) in curves.items() if not check_13_rule(t, g).agrees]
    n_pred = sum(check_13_rule(t, g).predicate for t, (fc, g) in curves.items())
    ok = not bad
    _report(capsys, 5, "multiplicative at 13 iff t = 0, 1 mod 13 or v13(t) < 0", ok,
            f"{len(curves)} curves, {n_pred} with the predicate, mismatches {bad}")
    assert ok


def test_criterion_6_i13m_law(capsys, curves):
    bad = []
    n_places = 0
    for t, (fc, g) in curves.items():
        bad += [f"t = {t}: {msg}" for msg in i13m_violations(fc, g)]
        for ld in g.locals:
            v = ld.prime
            if v.p != 13 and (val(t, v) != 0 or val(t - 1, v) > 0):
                n_places += 1
            if v.kind is SplitKind.SPLIT:
                other = g.local_at(conjugate_prime(v))
                if other is None or other.c != ld.c:
                    bad.append(f"t = {t}: unequal c at {v.label}")
    ok = not bad
    _report(capsys, 6, "split I_13m with c = 13m, conjugates equal", ok, f"{n_places} places checked, {len(bad)} failures")
    assert ok, bad[:5]


def test_criterion_7_support_oracle(capsys):
    bad = []
    params = enumerate_t(4)
    for t in params:
        found = support_oracle(build(t))
        if not found <= bad_support(t):
            bad.append(f"t = {t}: {sorted(found - bad_support(t))}")
    ok = not bad
    _report(capsys, 7, "bad primes from factored norm(disc) lie in bad_support", ok, f"{len(params)} curves, missed {bad}")
    assert ok


def test_criterion_8_structural_invariants(capsys, curves):
    bad = []
    for t, (fc, g) in curves.items():
        bad += [f"t = {t}: {msg}" for msg in structural_violations(fc, g)]
        for ld in g.locals:
            if ld.reduction.multiplicative and val(fc.model.j, ld.prime) != -ld.v_delta_min:
                bad.append(f"t = {t}: v(j) at {ld.prime.label}")
    ok = not bad
    _report(capsys, 8, "structural invariants on every swept curve", ok, f"{len(curves)} curves, {len(bad)} failures")
    assert ok, bad[:5]


def test_criterion_9_v13_four_search(capsys):
    rows = search_v13_4(mersenne_exps=(2, 3, 5, 7), special189=True)
    families = {r.family for r in rows}
    per_family_ok = all(any(r.record.ok for r in rows if r.family == f) for f in families)
    wrong = [r for r in rows if r.two_primes and r.condition2 and r.v13 != 4]
    unflagged = [r for r in rows if not (r.two_primes and r.condition2) and r.flag == "v13=4"]
    confirmed = sum(r.flag == "v13=4" for r in rows)
    flagged = [f"{r.t} ({r.flag})" for r in rows if r.flag != "v13=4"]
    ok = len(families) == 5 and per_family_ok and not wrong and not unflagged
    _report(capsys, 9, "v13 = 4 along {1,8,9} and Mersenne p = 2, 3, 5, 7", ok,
            f"{confirmed} confirmed, flagged {flagged}")
    assert ok
