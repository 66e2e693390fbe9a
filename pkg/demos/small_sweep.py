"""
How v13(c_E) is distributed over small parameters
=================================================

Sweep every t of height at most 6 and tally the 13-adic valuation of c_E.
"""

import collections
import tempfile
from pathlib import Path

from c13tamagawa.survey import RunConfig, sweep, verify_parity, verify_unique_v13_2

out = Path(tempfile.mkdtemp()) / "h6.jsonl"
result = sweep(RunConfig(max_height=6, out_path=str(out)))
records = result.records
print(len(records), "curves written to", out)

counts = collections.Counter(r.v13 for r in records)
for v13 in sorted(counts):
    print(f"v13 = {v13}: {'#' * counts[v13]} {counts[v13]}")

# every value is even, and 2 only shows up for one j-invariant
print(verify_parity(records))
print(verify_unique_v13_2(records).v13_two)

# the largest c_E in the sweep
top = max(records, key=lambda r: int(r.c_E))
print("largest c_E:", top.t, top.c_E, [(row["p"], row["kodaira"], row["c"]) for row in top.locals])
