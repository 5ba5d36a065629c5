"""Acceptance suite: twelve criteria, each printed as one PASS/FAIL line.

Statements are checked literally at their stated tolerance.  A failing
criterion prints its first failed check with the computed value, plus
any supporting evidence lines, and fails the test.

Run directly (``python tests/test_acceptance.py``) or through pytest.
"""

from __future__ import annotations

import os
import subprocess
import sys
import tempfile
import time

import pytest

from leibhom.checks import (delta_checks, invariant_homology_checks, invariant_table_checks,
                            leibniz_degree3_check, leibniz_low_checks, lie_betti_checks,
                            product_class_checks, psi_basis_checks, psi_named_checks,
                            relative_checks, structure_checks, wedge_invariant_checks)
from leibhom.cohomology import TheoremCheck, cohomology_dims, leibniz_adjoint
from leibhom.linalg import EXACT, PROBABILISTIC

N4 = [(2, 2), (3, 1), (4, 0)]
N5 = [(3, 2), (4, 1)]
SO_BETTI: dict = {}


def c1():
    return [c for n in (4, 5) for p in range(n + 1) for c in structure_checks(p, n - p)], []


def c2():
    return [c for pq in [(2, 2), (3, 1), (3, 2), (4, 1), (3, 3)] for c in wedge_invariant_checks(*pq)], []


def c3():
    return [c for pq in N4 + N5 + [(3, 3)] for c in invariant_table_checks(*pq)], []


def c4():
    pairs = [(p, n - p) for n in range(2, 6) for p in range(n + 1)]
    checks = [c for pq in pairs for c in psi_basis_checks(*pq)]
    checks += [c for pq in N4 + N5 for c in psi_named_checks(*pq)]
    return checks, []


def c5():
    return [c for pq in [(2, 2), (3, 1), (3, 2)] for c in delta_checks(*pq)], []


def c6():
    checks = []
    for pq in N4:
        got, so_b = lie_betti_checks(*pq, mode=EXACT)
        SO_BETTI[pq] = so_b
        checks += got
    return checks, []


def c7():
    return [c for pq in N4 for c in invariant_homology_checks(*pq)], []


def c8():
    checks = []
    for pq in N4:
        if pq not in SO_BETTI:
            SO_BETTI[pq] = lie_betti_checks(*pq, mode=EXACT)[1]
        checks += relative_checks(*pq, SO_BETTI[pq], (0, 1))
    return checks, []


def c9():
    return [c for pq in N4 for c in leibniz_low_checks(*pq)[0]], []


def c10():
    checks = [leibniz_degree3_check(*pq, mode=PROBABILISTIC)[0] for pq in N4 + N5]
    exact = cohomology_dims(leibniz_adjoint(2, 2), [3], EXACT).degrees[0]
    checks.append(TheoremCheck("exact spot check HL^3(h(2,2);h): kernel = image", exact.image,
                               exact.kernel, exact.kernel == exact.image,
                               f"kernel {exact.kernel}, image {exact.image}"))
    return checks, []


def c11():
    allc = product_class_checks(2, 2)
    literal = [c for c in allc if "completes" not in c.name]
    support = [c for c in allc if "completes" in c.name]
    return literal, support


def c12():
    outs = []
    with tempfile.TemporaryDirectory() as tmp:
        for run, hashseed in enumerate(("1", "2")):
            path = os.path.join(tmp, f"run{run}.json")
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            subprocess.run([sys.executable, "-m", "leibhom", "verify-paper", "--p", "2", "--q", "2",
                            "--output", path], env=env, capture_output=True, check=False)
            with open(path, "rb") as fh:
                outs.append(fh.read())
    same = outs[0] == outs[1] and len(outs[0]) > 0
    return [TheoremCheck("verify-paper --p 2 --q 2 twice: byte-identical reports", True, same, same,
                         f"{len(outs[0])} bytes")], []


CRITERIA = [
    (1, "algebra structure, 4 <= n <= 5", c1, 5),
    (2, "invariants of wedge^k I_n", c2, 30),
    (3, "invariants of wedge^k I_n (x) h and Hom(wedge^k I_n, h)", c3, 600),
    (4, "psi bijective, equivariant, maps named classes", c4, 120),
    (5, "differentials of the named (co)chains", c5, 10),
    (6, "Lie Betti numbers of h = so (x) (1 + t^4)", c6, 300),
    (7, "homology of the invariant chains", c7, 10),
    (8, "relative cohomology HR^0, HR^1", c8, 900),
    (9, "HL^0..2(h;h) = 0,1,1 with I, rho", c9, 600),
    (10, "HL^3(h;h) = 0 for n = 4, 5", c10, 3600),
    (11, "product classes with gamma*_pq", c11, 3600),
    (12, "determinism of verify-paper", c12, None),
]


def run_criterion(num, title, fn, budget):
    t0 = time.perf_counter()
    checks, support = fn()
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c.passed]
    slow = budget is not None and elapsed > budget
    ok = not failed and not slow
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {title} ({len(checks)} checks, {elapsed:.1f}s"
    line += f" / budget {budget}s)" if budget is not None else ")"
    if failed:
        c = failed[0]
        line += f" -- {len(failed)} failed, first: {c.name}: expected {c.expected}, got {c.got}"
        if c.note:
            line += f" [{c.note}]"
    if slow:
        line += " -- over runtime budget"
    extra = [f"    evidence: {'holds' if s.passed else 'fails'}: {s.name} ({s.note})" for s in support]
    return ok, line, extra


@pytest.mark.parametrize("num,title,fn,budget", CRITERIA, ids=[f"criterion{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    ok, line, extra = run_criterion(num, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
        for e in extra:
            print(e)
    assert ok, line


if __name__ == "__main__":
    status = 0
    for crit in CRITERIA:
        ok, line, extra = run_criterion(*crit)
        print(line, flush=True)
        for e in extra:
            print(e, flush=True)
        status |= not ok
    sys.exit(status)
