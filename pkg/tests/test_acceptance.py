"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a ``criterion N: PASS|FAIL ...`` line; the lines are printed
in the pytest terminal summary, and ``python3 tests/test_acceptance.py`` prints
them directly.
"""

from __future__ import annotations

import contextlib
import io
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from uhfbialg.bialgebra import (
    TensorElement,
    delta,
    verify_cancellation,
    verify_coaction_random,
    verify_coassoc,
    verify_noncocommutative,
    verify_padding,
)
from uhfbialg.cli import main
from uhfbialg.repstate import (
    AtomClass,
    ProductState,
    atom_equiv,
    atom_product,
    atom_state,
    commutant_dimension,
    gns,
    intertwiner_check,
    rep_tensor,
)
from uhfbialg.matalg import random_density
from uhfbialg.sequences import EvPeriodicSeq, SequencePrefix, star
from uhfbialg.uhf import unit_elem
from uhfbialg.verify import RunConfig, counit_grid, suite_counit, suite_kron_duality, suite_state_tensor

P = SequencePrefix
ONE, TWO, THREE = (EvPeriodicSeq.constant(v) for v in (1, 2, 3))
RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _u(base, J, K):
    return unit_elem(P(base), J, K)


def test_criterion_01_worked_example():
    expected = {
        ((1,), (6,)): TensorElement.from_factors(_u((1,), (1,), (1,)), _u((6,), (2,), (2,))),
        ((2,), (3,)): TensorElement.from_factors(_u((2,), (1,), (1,)), _u((3,), (2,), (2,))),
        ((3,), (2,)): TensorElement.from_factors(_u((3,), (1,), (1,)), _u((2,), (2,), (2,))),
        ((6,), (1,)): TensorElement.from_factors(_u((6,), (2,), (2,)), _u((1,), (1,), (1,))),
    }

    rows = ["  (1)x(6)  1 (x) E^(6)_{2,2}", "  (2)x(3)  E^(2)_{1,1} (x) E^(3)_{2,2}",
            "  (3)x(2)  E^(3)_{1,1} (x) E^(2)_{2,2}", "  (6)x(1)  E^(6)_{2,2} (x) 1"]

    def run():
        text, js = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(text):
            c1 = main(["delta", "--a", "6", "--elem", "E:2,2"])
        with contextlib.redirect_stdout(js):
            c2 = main(["--json", "delta", "--a", "6", "--elem", "E:2,2"])
        return c1 | c2, text.getvalue().splitlines()[1:], json.loads(js.getvalue())

    (code, lines, data), secs = timed(run)
    got = {}
    for comp in data["components"]:
        bases = tuple(P(tuple(b), allow_mixed=True) for b in comp["value"]["bases"])
        terms = {tuple((tuple(f["J"]), tuple(f["K"])) for f in t["factors"]): complex(t["re"], t["im"])
                 for t in comp["value"]["terms"]}
        got[(tuple(comp["b"]), tuple(comp["c"]))] = TensorElement(bases, terms)
    direct = {(p.left.entries, p.right.entries): t for p, t in delta(_u((6,), (2,), (2,)))}
    ok = code == 0 and lines == rows and got == expected and direct == expected and secs < 1.0
    record(1, ok, f"4/4 rows of the Delta(E^(6)_22) table exact, {secs:.3f}s")


def test_criterion_02_kron_duality():
    report, secs = timed(lambda: suite_kron_duality(RunConfig(seed=2024), trials=200, tol=1e-12))
    ok = report.passed and report.instances == 200 and secs < 1.0
    record(2, ok, f"200 pairs, max error {report.details['max_error']:.2e} <= 1e-12, {secs:.3f}s")


def test_criterion_03_coassociativity():
    def run():
        reps = [verify_coassoc(P((a,)), P((b,)), P((c,)), 1)
                for a in (1, 2, 3) for b in (1, 2, 3) for c in (1, 2, 3)]
        reps.append(verify_coassoc(P((2, 2)), P((3, 2)), P((2, 3)), 2))
        return reps

    reps, secs = timed(run)
    want_units = sum((a * b * c) ** 2 for a in (1, 2, 3) for b in (1, 2, 3) for c in (1, 2, 3)) + (12 * 12) ** 2
    units = sum(r.instances for r in reps)
    mismatches = sum(r.failure_count for r in reps)
    ok = mismatches == 0 and units == want_units and secs < 10.0
    record(3, ok, f"{len(reps)} triples, {units} units, {mismatches} mismatches, {secs:.2f}s")


def test_criterion_04_counit():
    report, secs = timed(lambda: suite_counit(RunConfig()))
    bases = counit_grid(36)
    ok = report.passed and all(b.dim <= 36 for b in bases) and len(report.details["instances"]) == len(bases)
    record(4, ok, f"{len(bases)} bases with prod <= 36, {report.instances} units exact, {secs:.2f}s")


def test_criterion_05_cancellation():
    def run():
        reps = [verify_cancellation(P(a), P(b), tol=1e-10) for a, b in (((2,), (2,)), ((2,), (3,)), ((3,), (2,)))]
        pad = verify_padding(P((2, 2)), P((3, 3)), 2, 1)
        return reps, pad

    (reps, pad), secs = timed(run)
    ranks = [(r.details["X_rank"], r.details["Y_rank"], r.full_dim) for r in reps]
    ok = all(x == y == f for x, y, f in ranks) and [f for *_, f in ranks] == [16, 36, 36]
    ok = ok and pad.passed and pad.instances > 0 and secs < 30.0
    record(5, ok, f"ranks (X, Y, full) = {ranks}, padding (2,1) {pad.instances} instances exact, {secs:.2f}s")


def test_criterion_06_noncocommutative():
    report = verify_noncocommutative()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["verify", "noncocommutative"])
    ok = report.passed and not report.details["equal"] and code == 0
    record(6, ok, f"{report.details['component']} != flip of partner; CLI exit {code}")


def test_criterion_07_coaction():
    report = verify_coaction_random(1000, np.random.default_rng(7), max_index=50, max_len=3, max_entry=4)
    ok = report.passed and report.instances == 1000
    record(7, ok, f"{report.instances} random words, {report.failure_count} mismatches")


def test_criterion_08_state_tensor():
    report = suite_state_tensor(RunConfig(seed=8), trials=50, tol=1e-12)
    ok = report.passed and report.details["max_error"] <= 1e-12
    record(8, ok, f"50 tuples x 1296 units, max error {report.details['max_error']:.2e} <= 1e-12")


def test_criterion_09_intertwiner():
    rng = np.random.default_rng(9)
    tracial = ProductState([np.eye(2) / 2])
    pairs = [(tracial, tracial), (ProductState([random_density(2, rng)]), ProductState([random_density(2, rng)]))]
    reps = [intertwiner_check(T, R, 1, tol=1e-9) for T, R in pairs]
    worst_u = max(r.details["unitarity"] for r in reps)
    worst_i = max(r.details["intertwining"] for r in reps)
    ok = all(r.passed for r in reps) and worst_u <= 1e-9 and worst_i <= 1e-9
    record(9, ok, f"||U*U - I|| <= {worst_u:.2e}, intertwining <= {worst_i:.2e} (tol 1e-9)")


def test_criterion_10_atoms():
    checks = [star(ONE, TWO, 2) == TWO, star(TWO, ONE, 2) == THREE,
              atom_equiv(AtomClass(4, TWO), AtomClass(4, THREE)) is False,
              atom_product(AtomClass(2, ONE), AtomClass(2, TWO)) == AtomClass(4, TWO)]
    dims = {}
    for n, labels in ((2, ("|1", "1|2", "|1,2")), (3, ("|3", "2|1,3"))):
        for label in labels:
            for level in (1, 2, 3):
                A = AtomClass(n, EvPeriodicSeq.parse(label))
                dims[(n, label, level)] = commutant_dimension(gns(atom_state(A, level)))
    ok = all(checks) and all(d == 1 for d in dims.values())
    record(10, ok, f"1*2=2, 2*1=3, P4[2]!=P4[3]; commutant 1 for {len(dims)} atom GNS reps at levels 1-3")


def test_criterion_11_irreducibility():
    cases = [((2, "|1"), (2, "|2"), 1), ((2, "|1"), (2, "|2"), 2), ((2, "1|2"), (3, "|3,1"), 1),
             ((2, "1|2"), (3, "|3,1"), 2), ((3, "|2"), (2, "2|1"), 1)]
    dims = []
    for (n, J), (m, K), level in cases:
        g1 = gns(atom_state(AtomClass(n, EvPeriodicSeq.parse(J)), level))
        g2 = gns(atom_state(AtomClass(m, EvPeriodicSeq.parse(K)), level))
        dims.append(commutant_dimension(rep_tensor(g1, g2)))
    ok = all(d == 1 for d in dims)
    record(11, ok, f"commutant dims {dims} for {len(cases)} atom pairs at levels <= 2")


def test_criterion_12_full_suite():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "uhfbialg", "--json", "verify", "all"],
                          capture_output=True, text=True, check=False, timeout=300)
    secs = time.perf_counter() - t0
    data = json.loads(proc.stdout) if proc.stdout else {}
    n_suites = data.get("suites", 0)
    ok = proc.returncode == 0 and data.get("passed") is True and n_suites >= 7 and secs < 120
    record(12, ok, f"verify all: exit {proc.returncode}, {n_suites} suites, {secs:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
