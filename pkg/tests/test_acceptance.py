"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the eight lines,
or through pytest, where the lines are printed even with output capture on.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from generators import random_assembly, random_block, random_hyperbolic, random_sl2z  # noqa: E402
from oddchi import mcg, sl2z  # noqa: E402
from oddchi.assembly import euler_characteristic, reversed_assembly, signature_sum, verify  # noqa: E402
from oddchi.blocks import BoundaryLabel, labels_glueable, reversed_block  # noqa: E402
from oddchi.curves import lantern_curve_system  # noqa: E402
from oddchi.serialize import parse, serialize  # noqa: E402
from oddchi.synthesis import (  # noqa: E402
    assembly_counts,
    build_cap_plan,
    euler_bound,
    synthesize_chi,
    synthesize_chi_sigma,
)


def c1_matrix_identity():
    ta, tb, phi = sl2z.twist_a(), sl2z.twist_b(), sl2z.phi()
    ok = ta @ tb @ ta == phi and phi ** 4 == sl2z.identity() and phi.trace == 0
    return ok, f"tau_a tau_b tau_a = {ta @ tb @ ta}, Phi^4 = {phi ** 4}, tr Phi = {phi.trace}"


def c2_lantern_certificates():
    cs = lantern_curve_system()
    positive = mcg.verify_braid_lantern() and mcg.verify_h1_lantern(cs) and mcg.verify_seven_twist_identity(cs)
    omit_braid = mcg.verify_braid_lantern([mcg.LANTERN_BRAIDS["C5"], mcg.LANTERN_BRAIDS["C6"]])
    omit_h1 = any(mcg.verify_seven_twist_identity(cs, drop=(i,)) for i in range(7))
    burau = oracles.burau_equal((1, 2) * 3, mcg.LANTERN_BRAIDS["C7"] + mcg.LANTERN_BRAIDS["C5"] + mcg.LANTERN_BRAIDS["C6"])
    ok = positive and burau and not omit_braid and not omit_h1
    return ok, f"certificates {positive}, Burau cross-check {burau}, controls false: {not omit_braid and not omit_h1}"


def c3_odd_chi_sweep():
    worst = 0.0
    for n in range(13, 43, 2):
        t = time.perf_counter()
        g = synthesize_chi(n)
        r = verify(g)
        worst = max(worst, time.perf_counter() - t)
        k = (n - 13) // 2
        counts = assembly_counts(g)
        expected = {"core": k + 1, "reversed_core": k, "splitter": 2 * k + 1, "connector": 2 * k, "cap": 3}
        if not (r.legal and r.closed and r.connected and r.chi_total == n and counts == expected):
            return False, f"n={n}: {r.to_dict()} counts {counts}"
    return worst < 1.0, f"n = 13..41 all legal, closed, connected, counts match; slowest {worst * 1000:.1f} ms"


def c4_cap_ledger():
    plan = build_cap_plan()
    w6 = plan.pieces[-1]
    ok = (
        plan.total_before == 20 == (2 - 7) * (2 - 2 * 3)
        and plan.total == 4
        and plan.tricks == 4
        and not w6.trick_applied
        and (w6.obstruction["geometric"], w6.obstruction["algebraic"]) == (2, 0)
    )
    return ok, f"{plan.total_before} -> {plan.total} after {plan.tricks} tricks; W6 geom {w6.obstruction['geometric']} alg {w6.obstruction['algebraic']}"


def c5_conjugacy_oracle():
    t = time.perf_counter()
    grid = oracles.sl2z_grid(5)
    pairs = oracles.brute_force_conjugacy(grid)
    mats = [sl2z.Sl2Matrix(*g) for g in grid]
    bad = sum(
        sl2z.are_conjugate(mats[i], mats[j]) != ((i, j) in pairs)
        for i in range(len(grid))
        for j in range(len(grid))
    )
    dt = time.perf_counter() - t
    return bad == 0 and dt < 60, f"{len(grid)}^2 = {len(grid) ** 2} pairs, {bad} disagreements, {dt:.1f} s"


def c6_ledger_properties(cases=500):
    rng = random.Random(6)
    for _ in range(cases):
        g = random_assembly(rng)
        if euler_characteristic(g) != sum(i.block.chi for i in g.instances):
            return False, "chi additivity"
        if g.gluings:
            h = g.copy()
            h.remove_gluing(*rng.choice(h.gluings))
            if euler_characteristic(h) != euler_characteristic(g):
                return False, "chi changed on removing a gluing"
        r = reversed_assembly(g)
        s = signature_sum(g)
        if euler_characteristic(r) != euler_characteristic(g) or signature_sum(r) != (None if s is None else -s):
            return False, "assembly reversal"
        b = random_block(rng)
        rb = reversed_block(b)
        if rb.chi != b.chi or reversed_block(rb) != b:
            return False, "block reversal"
        l1 = BoundaryLabel.torus(random_sl2z(rng), rng.choice([1, -1]))
        l2 = BoundaryLabel.torus(random_sl2z(rng), rng.choice([1, -1]))
        if labels_glueable(l1, l2) != labels_glueable(l2, l1):
            return False, "glueable symmetry"
        text = serialize(g)
        if parse(text) != g or serialize(parse(text)) != text:
            return False, "serialization round trip"
    return True, f"{cases} random cases each: chi additivity, reversal, symmetry, round trip"


def c7_euler_bounds():
    tau = euler_bound(BoundaryLabel.torus(sl2z.twist_a())).bound
    phi = euler_bound(BoundaryLabel.torus(sl2z.phi())).bound
    rng = random.Random(7)
    for _ in range(100):
        label = BoundaryLabel.torus(random_hyperbolic(rng))
        eb = euler_bound(label)
        r = verify(eb.witness)
        if not (r.legal and r.connected and r.open_slots == [eb.open_slot] and r.chi_total == eb.bound
                and labels_glueable(label, eb.witness.label(eb.open_slot))):
            return False, f"witness for {label} fails"
    return tau == 4 and phi == 12, f"E(tau) <= {tau}, E(Phi) <= {phi}, 100 hyperbolic witnesses verified"


def c8_conjecture_screening():
    assemblies = [synthesize_chi(n) for n in range(13, 43, 2)]
    assemblies += [synthesize_chi_sigma(s, m) for s in range(4) for m in range(4)]
    worst = None
    for g in assemblies:
        r = verify(g)
        if not r.closed or r.sigma_total is None:
            return False, "unclosed or sigma missing"
        if not r.conjecture_checks["chi >= 3|sigma|"]:
            return False, f"violated at chi={r.chi_total}, sigma={r.sigma_total}"
        if not any("claimed" in n for n in r.notes):
            return False, "sigma not flagged as claimed"
        if r.sigma_total:
            ratio = r.chi_total / (3 * abs(r.sigma_total))
            worst = ratio if worst is None else min(worst, ratio)
    return True, f"{len(assemblies)} closed assemblies, chi >= 3|sigma_claimed| throughout (min chi / 3|sigma| over sigma != 0: {worst:.2f})"


CRITERIA = [
    (1, "matrix identity", c1_matrix_identity),
    (2, "lantern certificates", c2_lantern_certificates),
    (3, "odd chi sweep", c3_odd_chi_sweep),
    (4, "cap ledger", c4_cap_ledger),
    (5, "conjugacy oracle equivalence", c5_conjugacy_oracle),
    (6, "ledger properties", c6_ledger_properties),
    (7, "euler-bound witnesses", c7_euler_bounds),
    (8, "conjecture screening", c8_conjecture_screening),
]


def _line(num, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num} ({name}): {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(num, name, ok, detail))
    sys.exit(0 if all(results) else 1)
