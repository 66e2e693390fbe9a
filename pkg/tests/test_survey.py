from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from c13tamagawa.survey import (
    RunConfig,
    SurveyRecord,
    candidates_for_set,
    compute_record,
    enumerate_t,
    read_records,
    search_sets,
    sign_invariance,
    support_oracle,
    sweep,
    two_prime_condition,
    verify_parity,
    verify_unique_v13_2,
)
from c13tamagawa.family import bad_support, build


def test_enumerate_examples():
    assert enumerate_t(1) == [Fraction(-1)]
    assert set(enumerate_t(2)) == {Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(2)}
    with pytest.raises(ValueError):
        enumerate_t(0)


@given(st.integers(1, 12))
def test_enumerate_properties(H):
    ts = enumerate_t(H)
    assert len(ts) == len(set(ts))
    assert all(max(abs(t.numerator), t.denominator) <= H and t not in (0, 1) for t in ts)
    # the bound-H list extends the bound-(H-1) list
    if H > 1:
        assert ts[: len(enumerate_t(H - 1))] == enumerate_t(H - 1)


class TestRecords:
    def test_e2_record(self):
        rec = compute_record(2)
        assert rec.ok and rec.c_E == "169" and rec.v13 == 2 and rec.d == 17
        assert rec.t == "2/1" and rec.timing is None and rec.schema_version == 1
        assert {(row["p"], row["branch"]) for row in rec.locals} == {(2, 0), (2, 1), (13, 0), (13, 1)}

    def test_degenerate(self):
        assert compute_record(0).flags == "degenerate"
        assert compute_record(1).flags == "degenerate"

    def test_round_trip_and_keys(self):
        rec = compute_record(Fraction(-3, 4))
        line = rec.to_json()
        assert SurveyRecord.from_json(line) == rec
        assert set(json.loads(line)) == {"t", "d", "disc", "j", "c_E", "v13", "locals", "flags", "timing", "schema_version"}

    def test_large_integers_as_strings(self):
        rec = replace(compute_record(2), d=2**60 + 1)
        raw = json.loads(rec.to_json())
        assert raw["d"] == str(2**60 + 1) and raw["disc"] == 17
        assert SurveyRecord.from_json(rec.to_json()).d == 2**60 + 1

    def test_schema_version_checked(self):
        raw = json.loads(compute_record(2).to_json())
        raw["schema_version"] = 2
        with pytest.raises(ValueError):
            SurveyRecord.from_json(json.dumps(raw))


class TestSweep:
    def test_height_two(self, tmp_path):
        out = tmp_path / "h2.jsonl"
        res = sweep(RunConfig(2, out_path=str(out), oracle_mode=True))
        assert [r.t for r in res.records] == ["-1/1", "-2/1", "-1/2", "1/2", "2/1"]
        assert all(r.ok and r.v13 % 2 == 0 for r in res.records)
        assert sorted(r.t for r in res.records if r.v13 == 2) == ["-1/1", "1/2", "2/1"]
        again = sweep(RunConfig(2, out_path=str(out), resume=True))
        assert again.computed == 0 and again.reused == 5
        assert read_records(out) == res.records

    def test_deterministic_bytes(self, tmp_path):
        a, b, c = (tmp_path / n for n in ("a.jsonl", "b.jsonl", "c.jsonl"))
        sweep(RunConfig(4, jobs=1, out_path=str(a)))
        sweep(RunConfig(4, jobs=2, out_path=str(b)))
        sweep(RunConfig(2, out_path=str(c)))
        res = sweep(RunConfig(4, jobs=2, out_path=str(c), resume=True))
        assert res.computed == len(enumerate_t(4)) - 5
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_bad_config(self):
        with pytest.raises(ValueError):
            RunConfig(0)
        with pytest.raises(ValueError):
            RunConfig(3, jobs=0)


class TestVerifiers:
    records = [compute_record(t) for t in enumerate_t(2)]

    def test_parity_pass(self):
        rep = verify_parity(self.records)
        assert rep.passed and rep.checked == 5

    def test_parity_corrupted(self):
        bad = self.records + [replace(self.records[0], v13=3, t="99/1")]
        rep = verify_parity(bad)
        assert not rep.passed and "99/1" in rep.violations[0]

    def test_parity_empty(self):
        rep = verify_parity([])
        assert rep.passed and rep.checked == 0

    def test_non_ok_skipped(self):
        assert verify_parity([compute_record(0)]).checked == 0

    def test_uniqueness(self):
        rep = verify_unique_v13_2(self.records + [compute_record(3)])
        assert rep.passed
        assert sorted(rep.v13_two) == ["-1/1", "1/2", "2/1"]
        assert "3/1" in rep.buckets[4]

    def test_uniqueness_violation(self):
        fake = replace(compute_record(3), v13=2, c_E="169")
        assert not verify_unique_v13_2([fake]).passed


class TestSearch:
    def test_sets(self):
        sets = dict(search_sets([2], [1], True))
        assert sets == {"mersenne p=2": (1, 3, 4), "fermat k=1": (1, 2, 3), "special": (1, 8, 9)}

    def test_candidates_189(self):
        assert set(candidates_for_set((1, 8, 9))) == {
            Fraction(9, 8), Fraction(-8), Fraction(9), Fraction(8, 9), Fraction(1, 9), Fraction(-1, 8)
        }

    @given(st.integers(1, 30))
    def test_candidates_shape(self, k):
        vals = (1, 2**k, 2**k + 1)
        cands = candidates_for_set(vals)
        assert len(cands) == 6
        for t in cands:
            r, s = t.numerator, t.denominator
            assert sorted((abs(r), abs(s), abs(r - s))) == sorted(vals)

    def test_two_prime_condition(self):
        assert two_prime_condition(Fraction(9, 8))
        assert not two_prime_condition(Fraction(5, 3))  # 5 * 3 * 2


def test_support_oracle_small():
    for t in enumerate_t(3):
        assert support_oracle(build(t)) <= bad_support(t)
    assert support_oracle(build(2)) == {2, 5}


def test_sign_invariance_sample():
    assert sign_invariance(enumerate_t(3)) == []
