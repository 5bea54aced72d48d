"""Falsifiers for monotonicity, uniqueness and continuity.

Each checker first tries the targeted witnesses from :mod:`.registry`,
then random probes from :mod:`.probes`, and stops at the first violation.
``no_violation_found`` only means the probe budget ran out; it is not a
proof.

A pair ``(A, B)`` passes when ``f(A) > f(B) + STRICT_MARGIN``.  ``f(A) <=
f(B)`` is a violation; anything in between is counted as inconclusive.
"""

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from . import probes
from .catalog import DISPLAY, SIMILARITY, CORE_MEASURES, get_measure
from .core import DistanceMatrix, SimilarityMatrix
from .io import value_to_json
from .registry import axiom_witnesses

AXIOMS = ("monotonicity", "uniqueness", "continuity")
STRICT_MARGIN = 1e-12
CONT_TOL = 1e-6
CONT_RATIO = 10.0
CONT_STEPS = 20
CONT_HOLD = 0.97
PROBE_N = (3, 8)


@dataclass
class Witness:
    a: np.ndarray
    b: np.ndarray
    value_a: float
    value_b: float
    source: str
    kernel: str | None = None
    angles_a: np.ndarray | None = None
    angles_b: np.ndarray | None = None
    note: str = ""

    def to_json(self):
        out = {
            "A": np.asarray(self.a).tolist(),
            "B": np.asarray(self.b).tolist(),
            "valueA": value_to_json(self.value_a),
            "valueB": value_to_json(self.value_b),
            "source": self.source,
        }
        if self.kernel:
            out["kernel"] = self.kernel
        if self.angles_a is not None:
            out["anglesA"] = np.asarray(self.angles_a).tolist()
            out["anglesB"] = np.asarray(self.angles_b).tolist()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomVerdict:
    measure: str
    axiom: str
    outcome: str
    budget: int
    seed: int
    witness: Witness | None = None
    inconclusive: int = 0
    kernel: str | None = None
    heuristic: bool = False

    @property
    def violated(self):
        return self.outcome == "violated"

    def to_json(self):
        return {
            "measure": self.measure,
            "axiom": self.axiom,
            "outcome": self.outcome,
            "witness": None if self.witness is None else self.witness.to_json(),
            "budget": self.budget,
            "seed": self.seed,
            "inconclusive": self.inconclusive,
            "kernel": self.kernel,
            "heuristic": self.heuristic,
        }


def _as_input(handle, x):
    if handle.kind == SIMILARITY:
        return SimilarityMatrix(x)
    return DistanceMatrix(x)


def evaluate(handle, x):
    return handle(_as_input(handle, x))


def compare(value_a, value_b, margin=STRICT_MARGIN):
    """``"pass"``, ``"inconclusive"`` or ``"violated"`` for the demand f(A) > f(B)."""
    if value_a > value_b + margin:
        return "pass"
    if value_a > value_b:
        return "inconclusive"
    return "violated"


def replay(handle, verdict):
    """Re-evaluate a stored witness; True if it reproduces bit-for-bit."""
    w = verdict.witness
    if w is None:
        return False
    va, vb = evaluate(handle, w.a), evaluate(handle, w.b)
    same = lambda x, y: x == y or (math.isnan(x) and math.isnan(y))
    return same(va, w.value_a) and same(vb, w.value_b)


def _probe_sizes(handle, rng):
    lo = max(PROBE_N[0], handle.min_n)
    return int(rng.integers(lo, PROBE_N[1] + 1))


def _pair_check(handle, axiom, budget, seed, generator):
    rng = np.random.default_rng(seed)
    targeted = axiom_witnesses(handle.name, axiom, handle.params)
    used = 0
    inconclusive = 0
    kernel = handle.kernel
    while used < budget:
        if used < len(targeted):
            pair = targeted[used]
        else:
            pair = generator(rng, _probe_sizes(handle, rng))
        used += 1
        va, vb = evaluate(handle, pair.a), evaluate(handle, pair.b)
        status = compare(va, vb)
        if status == "violated":
            w = Witness(pair.a, pair.b, va, vb, pair.source, pair.kernel, pair.angles_a, pair.angles_b)
            return AxiomVerdict(handle.name, axiom, "violated", used, seed, w, inconclusive, kernel)
        if status == "inconclusive":
            inconclusive += 1
    return AxiomVerdict(handle.name, axiom, "no_violation_found", used, seed, None, inconclusive, kernel)


def check_monotonicity(handle, budget=500, seed=0):
    """Search for ``A >= B`` entrywise (some entry strictly) with ``f(A) <= f(B)``."""
    gen = probes.monotonicity_pair_angles if handle.kind == SIMILARITY else probes.monotonicity_pair_distance
    return _pair_check(handle, "monotonicity", budget, seed, gen)


def check_uniqueness(handle, budget=500, seed=0):
    """Search for a duplicate whose replacement by a fresh element does not raise ``f``."""
    gen = probes.uniqueness_pair_angles if handle.kind == SIMILARITY else probes.uniqueness_pair_distance
    return _pair_check(handle, "uniqueness", budget, seed, gen)


def _gap(base, value):
    if base == value:
        return 0.0
    return abs(value - base)


def detect_jump(handle, probe, tol=CONT_TOL, ratio=CONT_RATIO, steps=CONT_STEPS):
    """Walk ``eps_k = 2**-k`` towards the base and look for a persistent gap.

    Returns ``(jumped, base_value, value_at_last_step)``.  A gap that is still
    above ``ratio * tol`` at the last step and keeps at least ``CONT_HOLD`` of
    its size over the last four halvings of ``eps`` counts as a jump.  A gap
    that decays like ``eps**a`` loses a factor ``2**(-4a)``, so slow power
    laws with ``a`` above about 0.01 are not mistaken for jumps.  At a base
    value of ``-inf`` the walk must keep decreasing.
    """
    base = evaluate(handle, probe.base_input())
    last = evaluate(handle, probe.at(2.0 ** -steps))
    if math.isinf(base) and base < 0:
        if math.isinf(last) and last < 0:
            return False, base, last
        tail = [evaluate(handle, probe.at(2.0 ** -k)) for k in range(steps - 4, steps)] + [last]
        return not all(x > y for x, y in zip(tail, tail[1:])), base, last
    g_last = _gap(base, last)
    if g_last <= ratio * tol:
        return False, base, last
    earlier = evaluate(handle, probe.at(2.0 ** -(steps - 4)))
    g_earlier = _gap(base, earlier)
    if math.isinf(g_last):
        return True, base, last
    return g_last >= CONT_HOLD * g_earlier, base, last


def default_continuity_witnesses(handle, count, seed):
    """Random witnesses at duplicate boundaries and, for thresholded measures, at ``t``."""
    rng = np.random.default_rng(seed)
    out = []
    t = handle.params.get("t")
    for k in range(count):
        n = _probe_sizes(handle, rng)
        if handle.kind == SIMILARITY:
            labels = probes.random_labels(rng, n, dup_prob=0.8)
            out.append(probes.continuity_probe_angles(rng, probes.random_arc_angles(rng, n, labels)))
            continue
        D = probes.random_distance_matrix(rng, n, dup_prob=0.8)
        if t is not None and t > 0 and k % 2 == 1:
            D = probes.with_boundary_distance(rng, D, t)
        out.append(probes.continuity_probe_distance(rng, D))
    return out


def check_continuity(handle, witnesses=None, seed=0, budget=500, tol=CONT_TOL, ratio=CONT_RATIO):
    """Jump detection along directions from each witness.

    ``witnesses`` is a list of :class:`probes.ContinuityProbe`; by default
    the registry witnesses followed by random ones, ``budget`` in total.
    """
    if witnesses is None:
        targeted = axiom_witnesses(handle.name, "continuity", handle.params)
        witnesses = targeted + default_continuity_witnesses(handle, max(budget - len(targeted), 0), seed)
    used = 0
    for probe in witnesses[:budget]:
        used += 1
        jumped, base, last = detect_jump(handle, probe, tol, ratio)
        if jumped:
            x_last = probe.at(2.0 ** -CONT_STEPS)
            w = Witness(
                x_last, probe.base_input(), last, base, probe.source,
                handle.kernel if probe.on_angles else None,
                note=f"A is the base moved by eps=2^-{CONT_STEPS} along the probe direction",
            )
            return AxiomVerdict(handle.name, "continuity", "violated", used, seed, w, kernel=handle.kernel, heuristic=True)
    return AxiomVerdict(handle.name, "continuity", "no_violation_found", used, seed, kernel=handle.kernel, heuristic=True)


def _compositions(total, parts):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    for cuts in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def check_duplicate_placement_invariance(handle, k, n, seed=0, budget=None, rtol=1e-9):
    """Compare ``f`` over every way of padding ``k`` distinct elements to ``n``.

    The padding elements are copies of the originals; uniqueness plus
    continuity force all these collections to score the same.
    """
    if not 2 <= k < n:
        raise ValueError("need 2 <= k < n")
    rng = np.random.default_rng(seed)
    if handle.kind == SIMILARITY:
        base = probes.random_arc_angles(rng, k, np.arange(k))
    else:
        geometry = "abstract" if rng.random() < 0.5 else "euclidean"
        base, _ = probes.class_distances(rng, k, geometry)
    values = []
    used = 0
    for extra in _compositions(n - k, k):
        if budget is not None and used >= budget:
            break
        used += 1
        labels = np.repeat(np.arange(k), np.asarray(extra) + 1)
        if handle.kind == SIMILARITY:
            x = probes.cosine_kernel(base[labels])
        else:
            x = probes.expand(base, labels)
        v = evaluate(handle, x)
        for x0, v0 in values:
            scale = max(abs(v0), abs(v), 1e-300)
            if not (v0 == v or abs(v0 - v) <= rtol * scale):
                w = Witness(x, x0, v, v0, "placement", handle.kernel,
                            note=f"multiplicities {tuple(int(e) + 1 for e in extra)}")
                return AxiomVerdict(handle.name, "duplicate_placement", "violated", used, seed, w, kernel=handle.kernel)
        values.append((x, v))
    return AxiomVerdict(handle.name, "duplicate_placement", "no_violation_found", used, seed, kernel=handle.kernel)


def expected_properties():
    text = resources.files("diversity_axioms").joinpath("data/expected_properties.json").read_text()
    return json.loads(text)


@dataclass
class PropertyMatrix:
    verdicts: dict = field(default_factory=dict)
    budget: int = 0
    seed: int = 0

    def cell(self, name, axiom):
        return not self.verdicts[name][axiom].violated

    def mismatches(self, expectation=None):
        expectation = expected_properties() if expectation is None else expectation
        out = []
        for name, row in self.verdicts.items():
            if name not in expectation:
                continue
            for axiom in AXIOMS:
                want = expectation[name][axiom]
                got = not row[axiom].violated
                if want != got:
                    out.append((name, axiom, want, got))
        return out

    def to_json(self):
        return {
            "budget": self.budget,
            "seed": self.seed,
            "rows": {
                name: {ax: v.to_json() for ax, v in row.items()} for name, row in self.verdicts.items()
            },
            "pattern": {
                name: {ax: ("✓" if not v.violated else "✗") for ax, v in row.items()}
                for name, row in self.verdicts.items()
            },
        }

    def to_text(self):
        width = max(len(DISPLAY.get(n, n)) for n in self.verdicts) + 2
        head = "Measure".ljust(width) + "".join(a.capitalize().ljust(14) for a in AXIOMS)
        lines = [head, "-" * len(head)]
        for name, row in self.verdicts.items():
            cells = "".join(("✓" if not row[a].violated else "✗").ljust(14) for a in AXIOMS)
            lines.append(DISPLAY.get(name, name).ljust(width) + cells)
        return "\n".join(lines)


def property_matrix(measures=None, budget=500, seed=0):
    """Run every checker for every measure handle."""
    if measures is None:
        measures = [get_measure(name) for name in CORE_MEASURES]
    pm = PropertyMatrix(budget=budget, seed=seed)
    for handle in measures:
        pm.verdicts[handle.name] = {
            "monotonicity": check_monotonicity(handle, budget, seed),
            "uniqueness": check_uniqueness(handle, budget, seed),
            "continuity": check_continuity(handle, seed=seed, budget=budget),
        }
    return pm
