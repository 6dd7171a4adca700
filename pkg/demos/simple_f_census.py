"""Count F-quasigroups of small order and sort the simple ones by case.

Run with:  python3 demos/simple_f_census.py   (order 6 takes a few seconds)
"""
from collections import Counter

from qg.congruences import is_simple
from qg.decomposition import simple_classify
from qg.search import Constraints, search_quasigroups

for n in range(1, 7):
    found = search_quasigroups(n, Constraints.of("left_f", "right_f"), mode="enumerate").quasigroups
    cases = Counter()
    for q in found:
        if is_simple(q):
            c = simple_classify(q, "F")
            cases[(c.case, "group" if c.associative else "medial")] += 1
    shown = ", ".join(f"{case} {kind}: {k}" for (case, kind), k in sorted(cases.items())) or "none"
    print(f"order {n}: {len(found)} F-quasigroups; simple by case: {shown}")
