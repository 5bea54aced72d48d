"""Named measure handles.

A :class:`MeasureHandle` binds a measure function to its parameters and
declares whether it consumes distances or similarities.  Similarity-based
handles carry the kernel through which the axiom checkers feed them
(``cosine``: cosine of the arc distance between angles on the circle).
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Callable

from . import measures_hard as mh
from . import measures_poly as mp
from .core import DistanceMatrix, SimilarityMatrix
from .errors import UnknownMeasure

DISTANCE = "distance_based"
SIMILARITY = "similarity_based"

# measure rows of the property table, in display order
CORE_MEASURES = (
    "average",
    "sum_average",
    "diameter",
    "sum_diameter",
    "bottleneck",
    "sum_bottleneck",
    "energy",
    "circles",
    "unique",
    "ham_div",
    "vendi_score",
    "dpp_det",
    "rke",
    "species",
    "multi_dim_volume",
    "integral_max_clique",
)
EXTRA_MEASURES = ("unique_plus_bounded", "multi_dim_volume_normalized")

ALIASES = {
    "vendi": "vendi_score",
    "dpp": "dpp_det",
    "mdv": "multi_dim_volume",
    "imc": "integral_max_clique",
    "hamdiv": "ham_div",
}

DISPLAY = {
    "average": "Average",
    "sum_average": "SumAverage",
    "diameter": "Diameter",
    "sum_diameter": "SumDiameter",
    "bottleneck": "Bottleneck",
    "sum_bottleneck": "SumBottleneck",
    "energy": "Energy",
    "circles": "#Circles",
    "unique": "Unique",
    "ham_div": "HamDiv",
    "vendi_score": "Vendi Score",
    "dpp_det": "DPP",
    "rke": "RKE",
    "species": "Species",
    "multi_dim_volume": "MultiDimVolume",
    "integral_max_clique": "IntegralMaxClique",
    "unique_plus_bounded": "Unique+M'",
    "multi_dim_volume_normalized": "MultiDimVolume (normalized)",
}


@dataclass(frozen=True)
class MeasureHandle:
    name: str
    kind: str
    func: Callable
    params: dict = field(default_factory=dict)
    kernel: str | None = None
    exact_limit: int | None = None
    min_n: int = 2

    @property
    def label(self):
        base = DISPLAY.get(self.name, self.name)
        if self.params:
            inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
            return f"{base}({inner})"
        return base

    def __call__(self, x):
        if self.kind == DISTANCE and not isinstance(x, DistanceMatrix):
            x = DistanceMatrix(x)
        elif self.kind == SIMILARITY and not isinstance(x, SimilarityMatrix):
            x = SimilarityMatrix(x)
        return float(self.func(x, **self.params))


_SPECS = {
    "average": (DISTANCE, mp.average, {}, None, 2),
    "sum_average": (DISTANCE, mp.sum_average, {}, None, 2),
    "diameter": (DISTANCE, mp.diameter, {}, None, 2),
    "sum_diameter": (DISTANCE, mp.sum_diameter, {}, None, 2),
    "bottleneck": (DISTANCE, mp.bottleneck, {}, None, 2),
    "sum_bottleneck": (DISTANCE, mp.sum_bottleneck, {}, None, 2),
    "energy": (DISTANCE, mp.energy, {"gamma": 1.0}, None, 2),
    "circles": (DISTANCE, mh.circles, {"t": 1.0}, mh.N_MAX_CLIQUE, 1),
    "unique": (DISTANCE, mp.unique, {}, None, 1),
    "ham_div": (DISTANCE, mh.ham_div, {}, mh.N_MAX_HELD_KARP, 3),
    "vendi_score": (SIMILARITY, mp.vendi_score, {}, None, 1),
    "dpp_det": (SIMILARITY, mp.dpp_det, {}, None, 1),
    "rke": (SIMILARITY, mp.rke, {}, None, 1),
    "species": (SIMILARITY, mp.species, {"q": 2.0}, None, 1),
    "multi_dim_volume": (DISTANCE, mh.multi_dim_volume, {}, mh.N_MAX_CLIQUE, 2),
    "integral_max_clique": (DISTANCE, mh.integral_max_clique, {}, mh.N_MAX_CLIQUE, 2),
    "unique_plus_bounded": (DISTANCE, mp.unique_plus_bounded, {}, None, 2),
    "multi_dim_volume_normalized": (
        DISTANCE,
        mh.multi_dim_volume_normalized,
        {},
        mh.N_MAX_CLIQUE,
        2,
    ),
}


def default_params(name):
    name = ALIASES.get(name, name)
    if name not in _SPECS:
        raise UnknownMeasure(name)
    return dict(_SPECS[name][2])


def measure_names():
    return CORE_MEASURES + EXTRA_MEASURES


def get_measure(name, **params):
    """Build a handle; ``params`` override the defaults (``gamma``, ``q``, ``t``)."""
    name = ALIASES.get(name, name)
    if name not in _SPECS:
        raise UnknownMeasure(name)
    kind, func, defaults, limit, min_n = _SPECS[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"measure {name!r} does not take parameter(s) {sorted(unknown)}")
    merged = {**defaults, **{k: float(v) for k, v in params.items() if v is not None}}
    if name == "species":
        # validate the order eagerly
        mp.species([[1.0]], merged["q"])
    if name == "energy" and not merged["gamma"] > 0:
        raise ValueError("gamma must be positive")
    if name == "circles" and merged["t"] < 0:
        raise ValueError("t must be nonnegative")
    kernel = "cosine" if kind == SIMILARITY else None
    return MeasureHandle(name, kind, func, merged, kernel, limit, min_n)


def with_limit(handle, n_max):
    """Copy of ``handle`` whose exact solver uses ``n_max``."""
    if handle.exact_limit is None:
        return handle
    func = partial(handle.func, n_max=n_max)
    return MeasureHandle(handle.name, handle.kind, func, handle.params, handle.kernel, n_max, handle.min_n)
