"""Acceptance criteria 1-9, one test each.

Every test records a one-line verdict that the terminal summary prints as
``criterion N: PASS|FAIL  detail``.
"""

import json
import math
import time
from functools import lru_cache

import numpy as np
import pytest

import oracles
from diversity_axioms import axioms as ax
from diversity_axioms import measures_hard as mh
from diversity_axioms import measures_poly as mp
from diversity_axioms.catalog import CORE_MEASURES, get_measure
from diversity_axioms.cli import main
from diversity_axioms.optimize import SearchConfig, corner_mass, maximize
from diversity_axioms.registry import (
    DPP_S,
    DPP_S_HAT,
    RKE_UNIQ,
    VENDI_MONO,
    VENDI_UNIQ,
    corner_config,
    dist,
    grid_config,
    opposite_corners_config,
    registry_case,
    segment,
    sim,
)


@pytest.fixture
def verdict(record_property, capsys):
    """Call ``verdict(n, detail)`` once the criterion's numbers are known."""

    def _record(crit, detail):
        record_property("criterion", crit)
        record_property("detail", detail)
        with capsys.disabled():
            print(f"\n[criterion {crit}] {detail}")

    return _record


def _close(got, want, tol):
    return abs(got - want) <= tol


def test_criterion_1_reference_numbers(verdict):
    start = time.perf_counter()
    a, b = VENDI_MONO
    c, d = VENDI_UNIQ
    e, f = RKE_UNIQ
    segs = (segment([0, 1 / 3, 2 / 3, 1]), segment([0, 0, 1, 1]))
    checks = {
        "vendi 1.941": (mp.vendi_score(sim(a)), 1.941, 5e-3),
        "vendi 1.916": (mp.vendi_score(sim(b)), 1.916, 5e-3),
        "vendi 1.187": (mp.vendi_score(sim(c)), 1.187, 5e-3),
        "vendi 1.233": (mp.vendi_score(sim(d)), 1.233, 5e-3),
        "dpp 0.278": (mp.dpp_det(DPP_S), 0.278, 1e-3),
        "dpp 0.312": (mp.dpp_det(DPP_S_HAT), 0.312, 1e-3),
        "rke 0.564": (mp.rke(sim(e)), 0.564, 5e-3),
        "rke 0.584": (mp.rke(sim(f)), 0.584, 5e-3),
        "average corners 0.9105": (mp.average(dist(corner_config())), 0.9105, 1e-3),
        "average grid 0.71": (mp.average(dist(grid_config())), 0.71, 1e-2),
        "diameter 1.41": (mp.diameter(dist(opposite_corners_config())), 1.41, 5e-3),
        "hamdiv thirds 2": (mh.ham_div(dist(segs[0])), 2.0, 0.0),
        "hamdiv ends 2": (mh.ham_div(dist(segs[1])), 2.0, 0.0),
    }
    failed = [k for k, (got, want, tol) in checks.items() if not _close(got, want, tol)]
    dup = np.array([[0, 0, 1], [0, 0, 1], [1, 1, 0]], dtype=float)
    energy_ok = mp.energy(dup, 1.0) == -math.inf
    if not energy_ok:
        failed.append("energy -inf")
    elapsed = time.perf_counter() - start
    verdict(1, f"{len(checks) + 1 - len(failed)}/{len(checks) + 1} values in tolerance, {elapsed:.2f}s")
    assert not failed, failed
    assert elapsed < 10


def test_criterion_2_property_table(verdict, capsys):
    start = time.perf_counter()
    code = main(["axioms", "--all", "--budget", "500", "--seed", "7"])
    payload = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    expectation = ax.expected_properties()
    problems = []
    crosses = ticks = 0
    for name in CORE_MEASURES:
        handle = get_measure(name)
        for axiom in ax.AXIOMS:
            cell = payload["rows"][name][axiom]
            if expectation[name][axiom]:
                ticks += 1
                if cell["outcome"] != "no_violation_found" or cell["budget"] < 500:
                    problems.append(f"{name}/{axiom} expected no violation in 500 probes")
                continue
            crosses += 1
            w = cell["witness"]
            if cell["outcome"] != "violated" or w is None:
                problems.append(f"{name}/{axiom} expected a witness")
                continue
            # replay from the serialized matrices
            va = handle(np.array(w["A"]))
            vb = handle(np.array(w["B"]))
            if va != float(w["valueA"]) or vb != float(w["valueB"]):
                problems.append(f"{name}/{axiom} witness does not replay")
    verdict(2, f"{crosses} violation cells replayed, {ticks} clean cells, {len(problems)} problems, {elapsed:.1f}s")
    assert code == 0
    assert not problems, problems
    for row in ("multi_dim_volume", "integral_max_clique"):
        assert set(payload["pattern"][row].values()) == {"✓"}
    assert elapsed < 300


def oracle_run():
    """50 seeded matrices, n <= 10: package values and enumeration values."""
    rng = np.random.default_rng(2024)
    rows = []
    for _ in range(50):
        n = int(rng.integers(3, 11))
        d = oracles.random_distance_matrix(rng, n)
        table = oracles.subset_table(d)
        u = np.unique(d[np.triu_indices(n, 1)])
        ts = [0.0, float(u[0]), float(u[len(u) // 2]), float(u[-1]), float(u.mean())]
        rows.append(
            {
                "n": n,
                "mdv": (mh.multi_dim_volume(d), oracles.multi_dim_volume(d)),
                "mdv_log": (mh.volume_profile(d).log_m.tolist(), oracles.max_log_products(d)),
                "mdv_norm": (mh.multi_dim_volume_normalized(d), oracles.multi_dim_volume_normalized(d)),
                "imc": (mh.integral_max_clique(d), oracles.integral_max_clique(d, table)),
                "circles": [(mh.circles(d, t), oracles.circles(d, t, table)) for t in ts],
                "ham": (mh.ham_div(d), oracles.ham_div(d)),
            }
        )
    return rows


def _rel_ok(got, want, rtol=1e-9):
    if math.isinf(want) or math.isinf(got):
        return got == want
    return abs(got - want) <= rtol * max(abs(want), 1e-300)


def oracle_mismatches(rows):
    bad = []
    for k, r in enumerate(rows):
        for key in ("mdv", "mdv_norm"):
            if not _rel_ok(*r[key]):
                bad.append((k, key))
        if not all(_rel_ok(g, w) for g, w in zip(*r["mdv_log"])):
            bad.append((k, "mdv_log"))
        if r["imc"][0] != r["imc"][1]:
            bad.append((k, "imc"))
        if r["ham"][0] != r["ham"][1]:
            bad.append((k, "ham"))
        if any(g != w for g, w in r["circles"]):
            bad.append((k, "circles"))
    return bad


@lru_cache(maxsize=None)
def first_oracle_run():
    start = time.perf_counter()
    rows = oracle_run()
    return rows, time.perf_counter() - start


def test_criterion_3_oracle_equivalence(verdict):
    rows, elapsed = first_oracle_run()
    bad = oracle_mismatches(rows)
    nmax = max(r["n"] for r in rows)
    verdict(3, f"50 matrices (n <= {nmax}), {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 120


def test_criterion_4_reduction_round_trip(verdict):
    rng = np.random.default_rng(404)
    bad = []
    for g in range(20):
        n = int(rng.integers(3, 13))
        adj = oracles.random_graph(rng, n)
        truth = oracles.max_clique_size(adj)
        D = mh.reduction_instance(adj, "imc")
        s_imc = mh.recover_clique_size(mh.integral_max_clique(D), D)
        prof = mh.volume_profile(mh.reduction_instance(adj, "mdv"))
        s_mdv = mh.clique_size_from_volume_profile(prof)
        if not s_imc == s_mdv == truth:
            bad.append((g, n, truth, s_imc, s_mdv))
    verdict(4, f"20 graphs (n <= 12), {len(bad)} disagreements with brute force")
    assert not bad, bad


def placement_trials(name):
    handle = get_measure(name)
    violations = 0
    for trial in range(100):
        rng = np.random.default_rng(trial)
        k = int(rng.integers(2, 5))
        n = int(rng.integers(k + 1, 9))
        v = ax.check_duplicate_placement_invariance(handle, k, n, seed=trial)
        violations += v.violated
    return violations


def test_criterion_5_placement_invariance(verdict):
    counts = {name: placement_trials(name) for name in ("multi_dim_volume", "integral_max_clique", "average")}
    verdict(5, "violating trials out of 100: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    assert counts["multi_dim_volume"] == 0
    assert counts["integral_max_clique"] == 0
    assert counts["average"] > 0


def suite_run():
    out = {}
    for name in ("multi_dim_volume", "integral_max_clique"):
        handle = get_measure(name)
        for check in (ax.check_monotonicity, ax.check_uniqueness):
            v = check(handle, budget=500, seed=6)
            out[f"{name}/{v.axiom}"] = (v.outcome, v.budget, v.inconclusive)
    return out


@lru_cache(maxsize=None)
def first_suite_run():
    return suite_run()


def test_criterion_6_new_measure_suites(verdict):
    res = first_suite_run()
    clean = {k: v for k, v in res.items() if v == ("no_violation_found", 500, 0)}
    verdict(6, f"{len(clean)}/4 suites passed 500 strict trials")
    assert len(clean) == 4, res


def test_criterion_7_species_scan(verdict):
    result = registry_case("species-q-scan", species_step=0.1).check()
    c = result.computed
    verdict(7, f"orders not lower: {len(c['orders_not_lower'])}, smallest margin {c['min_margin']:.3g}")
    assert result.passed
    assert c["orders_not_lower"] == []


def optimization_run():
    out = {}
    for name in ("average", "energy"):
        cfg = SearchConfig(get_measure(name), "unit_square", 16, 20_000, restarts=8, seed=0)
        traj = maximize(cfg)
        out[name] = {
            "value": traj.final_value,
            "corner_mass": corner_mass(traj.final, 0.05),
            "points": traj.final.points.tolist(),
            "csv": traj.to_csv(),
        }
    return out


@lru_cache(maxsize=None)
def first_optimization_run():
    start = time.perf_counter()
    out = optimization_run()
    return out, time.perf_counter() - start


def test_criterion_8_optimization(verdict):
    out, elapsed = first_optimization_run()
    avg, en = out["average"], out["energy"]
    verdict(
        8,
        f"average {avg['value']:.5f} corner mass {avg['corner_mass']:.2f}; "
        f"energy corner mass {en['corner_mass']:.2f}; {elapsed:.1f}s",
    )
    assert avg["value"] >= 0.90
    assert avg["corner_mass"] >= 0.9
    assert en["corner_mass"] < 0.5
    assert elapsed < 120


def test_criterion_9_determinism(verdict):
    same = {
        "oracles": json.dumps(first_oracle_run()[0]) == json.dumps(oracle_run()),
        "suites": first_suite_run() == suite_run(),
        "optimization": first_optimization_run()[0] == optimization_run(),
    }
    verdict(9, "bit-identical reruns: " + ", ".join(f"{k}={v}" for k, v in same.items()))
    assert all(same.values()), same
