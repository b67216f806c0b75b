"""One test per acceptance criterion, each run through the CLI check registry."""

import json
import time

import pytest

from frobalg.checks import REGISTRY, Context

# (check name, runtime budget in seconds)
CRITERIA = [
    ("c01_chebyshev_trace", 1),
    ("c02_frobenius_hom", 60),
    ("c03_bigon_trace_frobenius", 5),
    ("c04_bigon_trace_center", 10),
    ("c05_torus_trace_oracle", 60),
    ("c06_surface_center_trace", 60),
    ("c07_specialization", 120),
    ("c08_division", 30),
    ("c09_torus_gram", 30),
    ("c10_surface_table", 1),
]


@pytest.mark.parametrize("name,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, budget, acceptance_log):
    check = REGISTRY[name]
    start = time.perf_counter()
    passed, witness = check.run(Context(N=3, seed=0))
    elapsed = time.perf_counter() - start
    in_budget = elapsed < budget
    verdict = "PASS" if passed and in_budget else "FAIL"
    acceptance_log.append(f"{verdict} {name}: {elapsed:.2f}s (budget {budget}s)")
    assert passed, json.dumps(witness, default=str)[:2000]
    assert in_budget, f"{elapsed:.1f}s exceeds {budget}s"
