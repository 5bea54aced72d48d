"""Worked counterexamples and the configurations behind them.

``CASES`` maps a case id to a :class:`RegistryCase`: the exact inputs, the
expected values with their tolerances, and a recomputation.  The same
configurations supply the targeted witnesses that the axiom checkers try
before random search (:func:`axiom_witnesses`).
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import measures_hard as mh
from . import measures_poly as mp
from .core import PointConfiguration, distances_from_points, validate_distance_matrix, validate_similarity_matrix
from .errors import UnknownCase
from .probes import ContinuityProbe, ProbePair, cosine_kernel

CORNERS = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))

REF_TOL = 5e-3
EXACT_TOL = 1e-9


# --- configurations -------------------------------------------------------

def square(points):
    return PointConfiguration("unit_square", np.asarray(points, dtype=float))


def corner_config(per_corner=4):
    return square([c for c in CORNERS for _ in range(per_corner)])


def grid_config(side=4):
    ticks = np.linspace(0.0, 1.0, side)
    return square([(x, y) for x in ticks for y in ticks])


def opposite_corners_config(per_corner=8):
    return square([(0.0, 0.0)] * per_corner + [(1.0, 1.0)] * per_corner)


def fifteen_plus_one_config(r=0.1):
    return square([(0.0, 0.0)] * 15 + [(r, 0.0)])


def doubled_config():
    ticks = np.linspace(0.0, 1.0, 4)
    pts = [(x, y) for x in ticks for y in (0.0, 1.0)]
    return square([p for p in pts for _ in range(2)])


def grid_with_corner_duplicate():
    pts = grid_config().points.copy()
    pts[5] = (0.0, 0.0)  # the (1/3, 1/3) point lands on the corner
    return square(pts)


def segment(points):
    return PointConfiguration("unit_segment", np.asarray(points, dtype=float))


def triple(d12, d13, d23):
    return validate_distance_matrix([[0.0, d12, d13], [d12, 0.0, d23], [d13, d23, 0.0]])


def dist(cfg):
    return distances_from_points(cfg)


DPP_S = np.array([[1.0, 0.2, 0.6], [0.2, 1.0, 0.7], [0.6, 0.7, 1.0]])
DPP_S_HAT = np.array([[1.0, 0.3, 0.6], [0.3, 1.0, 0.7], [0.6, 0.7, 1.0]])

VENDI_MONO = (np.array([0.0, 0.6, 2.0]), np.array([0.0, 0.6, 2.1]))
VENDI_UNIQ = (np.array([0.0, 0.2, 0.5]), np.array([0.0, 0.0, 0.5]))
RKE_UNIQ = (np.array([0.0, 1.1, 1.5]), np.array([0.0, 1.5, 1.5]))

HAMDIV_SQUARE = np.array(
    [[0.0, 1.0, 1.1, 1.0], [1.0, 0.0, 1.0, 1.1], [1.1, 1.0, 0.0, 1.0], [1.0, 1.1, 1.0, 0.0]]
)


def sim(angles):
    return validate_similarity_matrix(cosine_kernel(angles))


def species_q_grid(step=0.1, q_max=100.0):
    count = int(round(q_max / step))
    qs = np.round(np.arange(count + 1) * step, 10)
    return qs[qs != 1.0]


def species_scan(step=0.1):
    """Orders ``q`` where the distinct collection does NOT score lower."""
    s_distinct, s_dup = sim(RKE_UNIQ[0]), sim(RKE_UNIQ[1])
    bad = []
    margin = math.inf
    for q in species_q_grid(step):
        lo, hi = mp.species(s_distinct, q), mp.species(s_dup, q)
        margin = min(margin, hi - lo)
        if not lo < hi:
            bad.append(float(q))
    return bad, margin


# --- cases ----------------------------------------------------------------

@dataclass(frozen=True)
class CaseResult:
    case_id: str
    computed: dict
    expected: dict
    passed: bool
    failures: tuple = ()


@dataclass(frozen=True)
class RegistryCase:
    case_id: str
    claim: str
    inputs: dict
    expected: dict
    tolerance: dict
    compute: Callable = field(repr=False)

    def check(self):
        computed = self.compute()
        failures = []
        for key, want in self.expected.items():
            got = computed[key]
            tol = self.tolerance.get(key, 0.0)
            if isinstance(want, bool) or isinstance(got, (list, tuple)):
                ok = got == want
            elif math.isinf(want) or math.isinf(got):
                ok = got == want
            else:
                ok = abs(got - want) <= tol
            if not ok:
                failures.append(key)
        return CaseResult(self.case_id, computed, dict(self.expected), not failures, tuple(failures))


def _case_average_corners():
    corners, grid = corner_config(), grid_config()
    return RegistryCase(
        "average-corners",
        "Average: 4 points per unit-square corner scores 0.91, above the 4x4 grid's 0.71",
        {"corners": corners, "grid": grid},
        {"corners": (64 + 32 * math.sqrt(2)) / 120, "grid": 0.71},
        {"corners": 1e-3, "grid": 1e-2},
        lambda: {"corners": mp.average(dist(corners)), "grid": mp.average(dist(grid))},
    )


def _case_diameter_corners():
    left, right = opposite_corners_config(), grid_config()
    return RegistryCase(
        "diameter-corners",
        "Diameter: 8+8 points on opposite corners and the 4x4 grid both reach 1.41",
        {"opposite_corners": left, "grid": right},
        {"opposite_corners": 1.41, "grid": 1.41},
        {"opposite_corners": REF_TOL, "grid": REF_TOL},
        lambda: {"opposite_corners": mp.diameter(dist(left)), "grid": mp.diameter(dist(right))},
    )


def _case_sum_diameter_max():
    left, right = opposite_corners_config(), grid_config()

    def compute():
        a, b = mp.sum_diameter(dist(left)), mp.sum_diameter(dist(right))
        return {"opposite_corners": a, "grid": b, "degenerate_wins": a > b}

    return RegistryCase(
        "sum-diameter-max",
        "SumDiameter: the 8+8 opposite-corner layout attains 16*sqrt(2) and beats the grid",
        {"opposite_corners": left, "grid": right},
        {"opposite_corners": 16 * math.sqrt(2), "degenerate_wins": True},
        {"opposite_corners": EXACT_TOL},
        compute,
    )


def _case_bottleneck_duplicate():
    left, right = grid_config(), grid_with_corner_duplicate()
    return RegistryCase(
        "bottleneck-duplicate",
        "Bottleneck: a single duplicate pair drops an otherwise spread layout to 0",
        {"grid": left, "grid_with_duplicate": right},
        {"grid": 1.0 / 3.0, "grid_with_duplicate": 0.0},
        {"grid": EXACT_TOL, "grid_with_duplicate": 0.0},
        lambda: {"grid": mp.bottleneck(dist(left)), "grid_with_duplicate": mp.bottleneck(dist(right))},
    )


def _case_sum_bottleneck_15_1():
    left, right = fifteen_plus_one_config(0.1), doubled_config()
    return RegistryCase(
        "sum-bottleneck-15+1",
        "SumBottleneck: 15 coincident points plus one at distance r score r; a layout where "
        "every point has one duplicate scores 0",
        {"fifteen_plus_one": left, "doubled": right},
        {"fifteen_plus_one": 0.1, "doubled": 0.0},
        {"fifteen_plus_one": EXACT_TOL, "doubled": 0.0},
        lambda: {
            "fifteen_plus_one": mp.sum_bottleneck(dist(left)),
            "doubled": mp.sum_bottleneck(dist(right)),
        },
    )


def _case_energy_duplicate():
    cfg = grid_with_corner_duplicate()
    return RegistryCase(
        "energy-duplicate",
        "Energy is -inf as soon as any two points coincide",
        {"grid_with_duplicate": cfg},
        {"gamma=1": -math.inf, "gamma=0.5": -math.inf},
        {},
        lambda: {
            "gamma=1": mp.energy(dist(cfg), 1.0),
            "gamma=0.5": mp.energy(dist(cfg), 0.5),
        },
    )


def _case_hamdiv_segments():
    a, b = segment([0, 0, 1, 1]), segment([0, 1 / 3, 2 / 3, 1])
    return RegistryCase(
        "hamdiv-segments",
        "HamDiv: segment layouts 0,0,1,1 and 0,1/3,2/3,1 both have a shortest circuit of 2",
        {"duplicated": a, "spread": b},
        {"duplicated": 2.0, "spread": 2.0},
        {"duplicated": 0.0, "spread": 0.0},
        lambda: {"duplicated": mh.ham_div(dist(a)), "spread": mh.ham_div(dist(b))},
    )


def _case_vendi_monotonicity():
    before, after = VENDI_MONO
    return RegistryCase(
        "vendi-monotonicity",
        "Vendi: moving the third circle point 0.1 rad further away lowers the score 1.941 -> 1.916",
        {"angles_before": before, "angles_after": after},
        {"before": 1.941, "after": 1.916},
        {"before": REF_TOL, "after": REF_TOL},
        lambda: {"before": mp.vendi_score(sim(before)), "after": mp.vendi_score(sim(after))},
    )


def _case_vendi_uniqueness():
    distinct, dup = VENDI_UNIQ
    return RegistryCase(
        "vendi-uniqueness",
        "Vendi: replacing x2 by a copy of x1 raises the score 1.187 -> 1.233",
        {"angles_distinct": distinct, "angles_duplicate": dup},
        {"distinct": 1.187, "duplicate": 1.233},
        {"distinct": REF_TOL, "duplicate": REF_TOL},
        lambda: {"distinct": mp.vendi_score(sim(distinct)), "duplicate": mp.vendi_score(sim(dup))},
    )


def _case_dpp_monotonicity():
    return RegistryCase(
        "dpp-monotonicity",
        "DPP: raising s12 from 0.2 to 0.3 raises det from 0.278 to 0.312",
        {"S": DPP_S, "S_hat": DPP_S_HAT},
        {"S": 0.278, "S_hat": 0.312},
        {"S": 1e-3, "S_hat": 1e-3},
        lambda: {
            "S": mp.dpp_det(validate_similarity_matrix(DPP_S)),
            "S_hat": mp.dpp_det(validate_similarity_matrix(DPP_S_HAT)),
        },
    )


def _case_rke_uniqueness():
    distinct, dup = RKE_UNIQ
    return RegistryCase(
        "rke-uniqueness",
        "RKE: making x2 a duplicate of x3 raises the value 0.564 -> 0.584",
        {"angles_distinct": distinct, "angles_duplicate": dup},
        {"distinct": 0.564, "duplicate": 0.584},
        {"distinct": REF_TOL, "duplicate": REF_TOL},
        lambda: {"distinct": mp.rke(sim(distinct)), "duplicate": mp.rke(sim(dup))},
    )


def _case_species_scan(step=0.1):
    distinct, dup = RKE_UNIQ

    def compute():
        bad, margin = species_scan(step)
        return {"orders_not_lower": bad, "min_margin": margin, "all_lower": not bad}

    return RegistryCase(
        "species-q-scan",
        f"Species(q): on the RKE layouts the distinct collection scores lower for every q "
        f"in [0, 100] step {step:g}, q != 1",
        {"angles_distinct": distinct, "angles_duplicate": dup, "step": step},
        {"all_lower": True},
        {},
        compute,
    )


def _case_sum_bottleneck_blocks():
    mono_b = validate_distance_matrix(
        [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]
    )
    mono_a = validate_distance_matrix(
        [[0, 0, 2, 2], [0, 0, 2, 2], [2, 2, 0, 0], [2, 2, 0, 0]]
    )
    uniq_b = validate_distance_matrix(
        [[0, 0, 0, 10], [0, 0, 0, 10], [0, 0, 0, 10], [10, 10, 10, 0]]
    )
    uniq_a = validate_distance_matrix(
        [[0, 0, 9, 10], [0, 0, 9, 10], [9, 9, 0, 1], [10, 10, 1, 0]]
    )
    return RegistryCase(
        "sum-bottleneck-blocks",
        "SumBottleneck on four objects: doubling the gap between two duplicate pairs leaves "
        "0 unchanged; replacing one of three coinciding objects lowers 10 to 2",
        {"mono_B": mono_b, "mono_A": mono_a, "uniq_B": uniq_b, "uniq_A": uniq_a},
        {"mono_B": 0.0, "mono_A": 0.0, "uniq_B": 10.0, "uniq_A": 2.0},
        {k: EXACT_TOL for k in ("mono_B", "mono_A", "uniq_B", "uniq_A")},
        lambda: {
            "mono_B": mp.sum_bottleneck(mono_b),
            "mono_A": mp.sum_bottleneck(mono_a),
            "uniq_B": mp.sum_bottleneck(uniq_b),
            "uniq_A": mp.sum_bottleneck(uniq_a),
        },
    )


def _case_diameter_triple():
    b, a = triple(2, 2, 1), triple(2, 2, 2)
    return RegistryCase(
        "diameter-triple",
        "Diameter and SumDiameter: raising the 1 in distances (2, 2, 1) to 2 changes nothing",
        {"B": b, "A": a},
        {"diameter_B": 2.0, "diameter_A": 2.0, "sum_diameter_B": 6.0, "sum_diameter_A": 6.0},
        {},
        lambda: {
            "diameter_B": mp.diameter(b),
            "diameter_A": mp.diameter(a),
            "sum_diameter_B": mp.sum_diameter(b),
            "sum_diameter_A": mp.sum_diameter(a),
        },
    )


CIRCLES_TS = (0.5, 1.0, 2.5, 3.5, 5.0)


def _case_circles_triple():
    b, a = triple(4, 3, 2), triple(4, 4, 2)

    def compute():
        out = {}
        for t in CIRCLES_TS:
            out[f"unchanged_t={t:g}"] = mh.circles(b, t) == mh.circles(a, t)
        return out

    return RegistryCase(
        "circles-triple",
        "#Circles(t): raising the 3 in distances (4, 3, 2) to 4 leaves the value unchanged for every t",
        {"B": b, "A": a, "t": CIRCLES_TS},
        {f"unchanged_t={t:g}": True for t in CIRCLES_TS},
        {},
        compute,
    )


_BUILDERS = {
    "average-corners": _case_average_corners,
    "diameter-corners": _case_diameter_corners,
    "sum-diameter-max": _case_sum_diameter_max,
    "bottleneck-duplicate": _case_bottleneck_duplicate,
    "sum-bottleneck-15+1": _case_sum_bottleneck_15_1,
    "energy-duplicate": _case_energy_duplicate,
    "hamdiv-segments": _case_hamdiv_segments,
    "vendi-monotonicity": _case_vendi_monotonicity,
    "vendi-uniqueness": _case_vendi_uniqueness,
    "dpp-monotonicity": _case_dpp_monotonicity,
    "rke-uniqueness": _case_rke_uniqueness,
    "species-q-scan": _case_species_scan,
    "sum-bottleneck-blocks": _case_sum_bottleneck_blocks,
    "diameter-triple": _case_diameter_triple,
    "circles-triple": _case_circles_triple,
}

CASE_IDS = tuple(_BUILDERS)


def registry_case(case_id, species_step=0.1):
    if case_id not in _BUILDERS:
        raise UnknownCase(case_id)
    if case_id == "species-q-scan":
        return _case_species_scan(species_step)
    return _BUILDERS[case_id]()


# --- targeted axiom witnesses ---------------------------------------------

def _replace(cfg, index, point):
    pts = cfg.points.copy()
    pts[index] = point
    return PointConfiguration(cfg.space, pts)


def _dpair(a, b, source):
    a = a.d if hasattr(a, "d") else np.asarray(a, dtype=float)
    b = b.d if hasattr(b, "d") else np.asarray(b, dtype=float)
    return ProbePair(a, b, f"registry:{source}")


def _spair(angles_a, angles_b, source):
    return ProbePair(
        cosine_kernel(angles_a), cosine_kernel(angles_b), f"registry:{source}", "cosine",
        np.asarray(angles_a, float), np.asarray(angles_b, float),
    )


def _coinciding(n, other=None):
    """``n`` coinciding objects; with ``other``, element 0 sits at that distance."""
    d = np.zeros((n, n))
    if other is not None:
        d[0, 1:] = d[1:, 0] = other
    return d


def _monotonicity(name, params):
    out = []
    if name in ("diameter", "sum_diameter"):
        out.append(_dpair(triple(2, 2, 2), triple(2, 2, 1), "diameter-triple"))
    if name in ("bottleneck", "energy"):
        b = validate_distance_matrix([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
        a = validate_distance_matrix([[0, 0, 2], [0, 0, 2], [2, 2, 0]])
        out.append(_dpair(a, b, "duplicate-pair-gap"))
    if name == "sum_bottleneck":
        case = _case_sum_bottleneck_blocks()
        out.append(_dpair(case.inputs["mono_A"], case.inputs["mono_B"], "sum-bottleneck-blocks"))
    if name == "circles":
        out.append(_dpair(triple(4, 4, 2), triple(4, 3, 2), "circles-triple"))
    if name == "unique":
        out.append(_dpair(triple(2, 1, 1), triple(1, 1, 1), "unique-gap"))
    if name == "ham_div":
        a = HAMDIV_SQUARE.copy()
        a[0, 2] = a[2, 0] = 1.2
        out.append(_dpair(a, HAMDIV_SQUARE, "hamdiv-square"))
    if name == "vendi_score":
        # "A" must be the more spread input: the moved configuration
        out.append(_spair(VENDI_MONO[1], VENDI_MONO[0], "vendi-monotonicity"))
    if name == "dpp_det":
        out.append(ProbePair(DPP_S.copy(), DPP_S_HAT.copy(), "registry:dpp-monotonicity", "direct"))
    return out


def _uniqueness(name, params):
    out = []
    if name in ("average", "sum_average"):
        b = corner_config()
        a = _replace(b, 0, (0.5, 0.5))
        out.append(_dpair(dist(a), dist(b), "average-corners"))
    if name in ("diameter", "sum_diameter"):
        b = opposite_corners_config()
        a = _replace(b, 0, (0.5, 0.5))
        out.append(_dpair(dist(a), dist(b), "diameter-corners"))
    if name in ("bottleneck", "energy"):
        out.append(_dpair(_coinciding(3, 1.0), _coinciding(3), "three-coinciding"))
    if name == "sum_bottleneck":
        case = _case_sum_bottleneck_blocks()
        out.append(_dpair(case.inputs["uniq_A"], case.inputs["uniq_B"], "sum-bottleneck-blocks"))
    if name == "circles":
        t = params.get("t", 1.0)
        if t > 0:
            out.append(_dpair(_coinciding(2, t / 10), _coinciding(2), "circles-pair"))
    if name == "ham_div":
        b = segment([0, 0, 1, 1])
        a = segment([1 / 3, 0, 1, 1])
        out.append(_dpair(dist(a), dist(b), "hamdiv-segments"))
    if name == "vendi_score":
        out.append(_spair(VENDI_UNIQ[0], VENDI_UNIQ[1], "vendi-uniqueness"))
    if name == "dpp_det":
        out.append(_spair([0.5, 0.0, 0.0], [0.0, 0.0, 0.0], "three-coinciding"))
    if name in ("rke", "species"):
        out.append(_spair(RKE_UNIQ[0], RKE_UNIQ[1], "rke-uniqueness"))
    return out


def _continuity(name, params):
    out = []
    if name == "circles":
        t = params.get("t", 1.0)
        if t > 0:
            base = triple(t, 2 * t, 2 * t).d
            direction = np.zeros((3, 3))
            direction[0, 1] = direction[1, 0] = 1.0
            out.append(ContinuityProbe(base, direction, "registry:circles-threshold"))
    if name in ("unique", "unique_plus_bounded"):
        base = np.zeros((2, 2))
        direction = np.array([[0.0, 1.0], [1.0, 0.0]])
        out.append(ContinuityProbe(base, direction, "registry:duplicate-split"))
    return out


def axiom_witnesses(name, axiom, params=None):
    """Targeted (A, B) pairs or continuity probes for a measure, possibly empty."""
    params = params or {}
    return {"monotonicity": _monotonicity, "uniqueness": _uniqueness, "continuity": _continuity}[axiom](
        name, params
    )
