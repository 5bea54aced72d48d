"""Seeded hill climbing over point configurations.

Each step moves one point (round-robin) to a proposal and keeps the move
only if the measure strictly increases.  Proposals alternate at random
between a Gaussian jitter around the current point and a uniform draw from
the whole space.  Restart ``r`` uses seed ``seed + r``; the best restart
wins, ties going to the lowest index.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .catalog import SIMILARITY, MeasureHandle
from .core import SPACES, TWO_PI, DistanceMatrix, PointConfiguration, SimilarityMatrix
from .errors import InstanceTooLarge, NTooSmall

STALE_HALVING = 5000
SPACE_DIAMETER = {"unit_square": np.sqrt(2.0), "unit_segment": 1.0, "unit_circle": np.pi}
RBF_SIGMA = 0.25


@dataclass(frozen=True)
class SearchConfig:
    """Settings for :func:`maximize`.

    ``proposal_scale`` defaults to a tenth of the space diameter.  Similarity
    measures see the points through ``kernel``: ``"cosine"`` of the arc
    distance (circle only) or ``"rbf"`` with width ``sigma``.
    """

    measure: MeasureHandle
    space: str = "unit_square"
    n: int = 16
    iterations: int = 20_000
    proposal_scale: float | None = None
    restarts: int = 1
    seed: int = 0
    kernel: str | None = None
    sigma: float = RBF_SIGMA

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.n < max(2, self.measure.min_n):
            raise NTooSmall(self.n, max(2, self.measure.min_n))
        limit = self.measure.exact_limit
        if limit is not None and self.n > limit:
            raise InstanceTooLarge(self.n, limit)
        if self.proposal_scale is not None and not self.proposal_scale > 0:
            raise ValueError("proposal_scale must be positive")
        if self.measure.kind == SIMILARITY:
            kernel = self.resolved_kernel
            if kernel == "cosine" and self.space != "unit_circle":
                raise ValueError("the cosine kernel needs unit_circle points")
            if kernel not in ("cosine", "rbf"):
                raise ValueError(f"unknown kernel {kernel!r}")

    @property
    def scale(self):
        if self.proposal_scale is not None:
            return float(self.proposal_scale)
        return 0.1 * SPACE_DIAMETER[self.space]

    @property
    def resolved_kernel(self):
        if self.kernel is not None:
            return self.kernel
        return "cosine" if self.space == "unit_circle" else "rbf"


@dataclass
class Trajectory:
    """Accepted steps of the winning restart plus its final state."""

    iterations: list = field(default_factory=list)
    values: list = field(default_factory=list)
    moved: list = field(default_factory=list)
    initial_value: float = float("nan")
    final: PointConfiguration | None = None
    final_value: float = float("nan")
    restart: int = 0
    restart_values: list = field(default_factory=list)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "value", "moved_index"])
        for it, v, m in zip(self.iterations, self.values, self.moved):
            w.writerow([it, repr(v), m])
        return buf.getvalue()


def _pair_distances(space, p, pts):
    """Distances from point ``p`` to every row of ``pts``."""
    if space == "unit_square":
        diff = pts - p
        return np.hypot(diff[:, 0], diff[:, 1])
    d = np.abs(pts[:, 0] - p[0])
    if space == "unit_circle":
        d = np.minimum(d, TWO_PI - d)
    return d


def _all_distances(space, pts):
    return np.stack([_pair_distances(space, p, pts) for p in pts])


def _uniform(rng, space):
    if space == "unit_square":
        return rng.random(2)
    if space == "unit_circle":
        return rng.random(1) * TWO_PI
    return rng.random(1)


def _jitter(rng, space, p, scale):
    q = p + scale * rng.standard_normal(p.shape)
    if space == "unit_circle":
        # the circle has no boundary, so wrap instead of clamping
        return np.mod(q, TWO_PI)
    return np.clip(q, 0.0, 1.0)


def _scorer(cfg):
    handle = cfg.measure
    if handle.kind != SIMILARITY:
        return lambda d: handle(DistanceMatrix(d))
    if cfg.resolved_kernel == "cosine":
        return lambda d: handle(SimilarityMatrix(np.cos(d)))
    sigma = cfg.sigma
    return lambda d: handle(SimilarityMatrix(np.exp(-((d / sigma) ** 2))))


def _climb(cfg, restart):
    rng = np.random.default_rng(cfg.seed + restart)
    space = cfg.space
    dim = SPACES[space]
    pts = np.array([_uniform(rng, space) for _ in range(cfg.n)]).reshape(cfg.n, dim)
    d = _all_distances(space, pts)
    score = _scorer(cfg)
    value = score(d)
    traj = Trajectory(initial_value=value, restart=restart)
    scale = cfg.scale
    stale = 0
    for it in range(1, cfg.iterations + 1):
        i = (it - 1) % cfg.n
        if rng.random() < 0.5:
            q = _jitter(rng, space, pts[i], scale)
        else:
            q = _uniform(rng, space)
        row = _pair_distances(space, q, pts)
        row[i] = 0.0
        trial = d.copy()
        trial[i, :] = row
        trial[:, i] = row
        v = score(trial)
        if v > value:
            pts[i] = q
            d = trial
            value = v
            stale = 0
            traj.iterations.append(it)
            traj.values.append(v)
            traj.moved.append(i)
        else:
            stale += 1
            if stale >= STALE_HALVING:
                scale *= 0.5
                stale = 0
    traj.final = PointConfiguration(space, pts)
    traj.final_value = value
    return traj


def maximize(cfg):
    """Hill-climb ``cfg.restarts`` times and return the best trajectory."""
    best = None
    values = []
    for r in range(cfg.restarts):
        traj = _climb(cfg, r)
        values.append(traj.final_value)
        if best is None or traj.final_value > best.final_value:
            best = traj
    best.restart_values = values
    return best


def corner_mass(cfg, radius=0.05):
    """Fraction of unit-square points within ``radius`` of the nearest corner."""
    if cfg.space != "unit_square":
        raise ValueError("corner_mass is defined for unit_square points")
    if cfg.n == 0:
        return 0.0
    p = cfg.points
    near = np.minimum(p, 1.0 - p)
    return float(np.mean(np.hypot(near[:, 0], near[:, 1]) <= radius))


def to_svg(cfg, size=512, margin=32, radius=4):
    """Scatter plot of a configuration as an SVG document."""
    inner = size - 2 * margin
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" '
        f'width="{size}" height="{size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if cfg.space == "unit_square":
        parts.append(
            f'<rect x="{margin}" y="{margin}" width="{inner}" height="{inner}" '
            'fill="none" stroke="black"/>'
        )
        xy = [(margin + x * inner, margin + (1.0 - y) * inner) for x, y in cfg.points]
    elif cfg.space == "unit_circle":
        c, r = size / 2, inner / 2
        parts.append(f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>')
        xy = [(c + r * np.cos(a), c - r * np.sin(a)) for (a,) in cfg.points]
    else:
        y = size / 2
        parts.append(f'<line x1="{margin}" y1="{y}" x2="{size - margin}" y2="{y}" stroke="black"/>')
        xy = [(margin + x * inner, y) for (x,) in cfg.points]
    for x, y in xy:
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius}" fill="steelblue" fill-opacity="0.7"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
