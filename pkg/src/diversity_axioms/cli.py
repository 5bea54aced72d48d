"""Command-line entry point.

Machine-readable JSON goes to stdout, tables and diagnostics to stderr.
Exit codes: 0 success, 1 expectation mismatch, 2 input or validation
error, 3 instance too large.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import axioms as ax
from .catalog import SIMILARITY, CORE_MEASURES, default_params, get_measure, measure_names
from .core import (
    SPACES,
    DistanceMatrix,
    SimilarityMatrix,
    distances_from_points,
    duplicate_classes,
    rbf_similarity_from_distances,
    validate_similarity_matrix,
)
from .errors import DiversityError, InstanceTooLarge
from .io import load_matrix, load_points, make_report, save_points, save_report, value_to_json
from .optimize import SearchConfig, corner_mass, maximize, to_svg
from .registry import CASE_IDS, registry_case

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(DiversityError):
    """Bad combination of flags or inputs."""


def _emit(payload):
    print(json.dumps(payload, indent=2, default=_json_default))


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _clean(value):
    """Recursively replace non-finite floats so the output is strict JSON."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (float, np.floating)):
        return value_to_json(float(value))
    return value


def _say(text=""):
    print(text, file=sys.stderr)


def _measure_params(args):
    params = {}
    for key in ("gamma", "q", "t"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


def _handle(name, args, strict=True):
    """Handle for ``name``; with ``strict=False`` flags it does not take are ignored."""
    params = _measure_params(args)
    if not strict:
        accepted = default_params(name)
        params = {k: v for k, v in params.items() if k in accepted}
    try:
        return get_measure(name, **params)
    except ValueError as exc:
        if isinstance(exc, DiversityError):
            raise
        raise InputError(str(exc)) from None


def _load_input(path, kind):
    if kind == "points":
        cfg = load_points(path)
        return cfg, distances_from_points(cfg)
    m = load_matrix(path, kind)
    return None, m


def _kernel_similarity(args, cfg, D):
    if args.kernel is None:
        raise InputError("similarity measures on distance or point input need --kernel cosine|rbf")
    if args.kernel == "cosine":
        if cfg is not None and cfg.space != "unit_circle":
            raise InputError("--kernel cosine needs unit_circle points")
        return validate_similarity_matrix(np.cos(D.d))
    if args.sigma is None or not args.sigma > 0:
        raise InputError("--kernel rbf needs a positive --sigma")
    return rbf_similarity_from_distances(D, args.sigma)


def _measure_input(handle, args, cfg, x):
    if handle.kind == SIMILARITY:
        if isinstance(x, SimilarityMatrix):
            return x
        return _kernel_similarity(args, cfg, x)
    if isinstance(x, SimilarityMatrix):
        raise InputError(f"{handle.name} needs distances; similarity input is not converted")
    return x


def _report_params(handle, args):
    params = dict(handle.params)
    if handle.kind == SIMILARITY and args.kind != "similarity":
        params["kernel"] = args.kernel
        if args.kernel == "rbf":
            params["sigma"] = args.sigma
    return params


def cmd_compute(args):
    handle = _handle(args.measure, args)
    cfg, x = _load_input(args.input, args.kind)
    value = handle(_measure_input(handle, args, cfg, x))
    report = make_report(handle.name, _report_params(handle, args), value)
    if args.output:
        save_report(report, args.output)
    _emit(report)
    return EXIT_OK


def cmd_validate(args):
    cfg, x = _load_input(args.input, args.kind)
    out = {"valid": True, "kind": args.kind, "n": x.n}
    if isinstance(x, DistanceMatrix):
        out["duplicate_classes"] = [list(map(int, c)) for c in duplicate_classes(x) if len(c) > 1]
    else:
        out["min_eigenvalue"] = float(x.spectrum()[0])
    if cfg is not None:
        out["space"] = cfg.space
    _emit(out)
    return EXIT_OK


def cmd_report(args):
    cfg, x = _load_input(args.input, args.kind)
    names = args.measures or list(measure_names())
    rows, skipped = [], []
    for name in names:
        handle = _handle(name, args, strict=bool(args.measures))
        is_sim = isinstance(x, SimilarityMatrix)
        if (handle.kind == SIMILARITY) != is_sim and (is_sim or args.kernel is None):
            skipped.append({"measure": handle.name, "reason": "input kind does not match"})
            continue
        try:
            value = handle(_measure_input(handle, args, cfg, x))
        except InstanceTooLarge as exc:
            skipped.append({"measure": handle.name, "reason": str(exc)})
            continue
        except DiversityError as exc:
            if not args.measures:
                skipped.append({"measure": handle.name, "reason": str(exc)})
                continue
            raise
        rows.append(make_report(handle.name, _report_params(handle, args), value))
    width = max([len(r["measure"]) for r in rows] + [7])
    for r in rows:
        _say(f"{r['measure']:<{width}}  {r['value']}")
    for s in skipped:
        _say(f"{s['measure']:<{width}}  skipped: {s['reason']}")
    out = {"n": x.n, "reports": rows, "skipped": skipped}
    if args.output:
        save_report(out, args.output)
    _emit(out)
    return EXIT_OK


def cmd_reproduce(args):
    if args.all:
        ids = CASE_IDS
    elif args.case:
        ids = args.case
    else:
        raise InputError("give --case ID (repeatable) or --all")
    step = 0.001 if args.full_species else 0.1
    results = [registry_case(cid, species_step=step).check() for cid in ids]
    width = max(len(r.case_id) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        shown = ", ".join(f"{k}={_fmt(v)}" for k, v in r.computed.items() if not isinstance(v, list))
        _say(f"{r.case_id:<{width}}  {status}  {shown}")
        for key in r.failures:
            _say(f"    {key}: computed {_fmt(r.computed[key])}, expected {_fmt(r.expected[key])}")
    payload = [
        {
            "case": r.case_id,
            "passed": r.passed,
            "computed": r.computed,
            "expected": r.expected,
            "failures": list(r.failures),
        }
        for r in results
    ]
    _emit(_clean({"cases": payload, "all_passed": all(r.passed for r in results)}))
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def _fmt(v):
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def cmd_axioms(args):
    if args.all:
        names = list(CORE_MEASURES)
        if args.extras:
            names += [n for n in measure_names() if n not in CORE_MEASURES]
    elif args.measure:
        names = args.measure
    else:
        raise InputError("give --measure NAME (repeatable) or --all")
    handles = [_handle(name, args, strict=not args.all) for name in names]
    pm = ax.property_matrix(handles, budget=args.budget, seed=args.seed)
    _say(pm.to_text())
    payload = pm.to_json()
    mismatches = pm.mismatches()
    payload["mismatches"] = [
        {"measure": m, "axiom": a, "expected": "✓" if want else "✗", "found": "✓" if got else "✗"}
        for m, a, want, got in mismatches
    ]
    payload["matches_expectation"] = not mismatches
    if args.witnesses:
        Path(args.witnesses).write_text(json.dumps(_clean(payload), indent=2) + "\n")
    for m in payload["mismatches"]:
        _say(f"mismatch: {m['measure']} {m['axiom']}: expected {m['expected']}, found {m['found']}")
    _emit(_clean(payload))
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_optimize(args):
    handle = _handle(args.measure, args)
    try:
        cfg = SearchConfig(
            handle,
            space=args.space,
            n=args.n,
            iterations=args.iters,
            proposal_scale=args.scale,
            restarts=args.restarts,
            seed=args.seed,
            kernel=args.kernel,
            sigma=args.sigma if args.sigma is not None else 0.25,
        )
    except ValueError as exc:
        if isinstance(exc, DiversityError):
            raise
        raise InputError(str(exc)) from None
    traj = maximize(cfg)
    out = {
        "measure": handle.name,
        "params": dict(handle.params),
        "space": cfg.space,
        "n": cfg.n,
        "iterations": cfg.iterations,
        "restarts": cfg.restarts,
        "seed": cfg.seed,
        "value": value_to_json(traj.final_value),
        "best_restart": traj.restart,
        "accepted_steps": len(traj.values),
    }
    if cfg.space == "unit_square":
        out["corner_mass"] = corner_mass(traj.final, 0.05)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "trajectory.csv").write_text(traj.to_csv())
        save_points(traj.final, out_dir / "points.json")
        (out_dir / "points.svg").write_text(to_svg(traj.final))
        out["files"] = [str(out_dir / f) for f in ("trajectory.csv", "points.json", "points.svg")]
    _say(f"{handle.label}: {traj.final_value:.6g} (restart {traj.restart})")
    _emit(out)
    return EXIT_OK


def _add_measure_params(p):
    p.add_argument("--gamma", type=float, help="Energy exponent")
    p.add_argument("--q", type=float, help="Species order")
    p.add_argument("--t", type=float, help="#Circles threshold")


def _add_kernel(p):
    p.add_argument("--kernel", choices=("cosine", "rbf"), help="similarity kernel for distance or point input")
    p.add_argument("--sigma", type=float, help="rbf kernel width")


def build_parser():
    parser = argparse.ArgumentParser(prog="diversity-axioms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    kinds = ("distance", "similarity", "points")

    p = sub.add_parser("compute", help="evaluate one measure on one input")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--kind", choices=kinds, default="distance")
    p.add_argument("--measure", required=True)
    p.add_argument("--output", type=Path, help="also write the JSON report here")
    _add_measure_params(p)
    _add_kernel(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="parse and validate an input file")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--kind", choices=kinds, default="distance")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="evaluate every applicable measure on one input")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--kind", choices=kinds, default="distance")
    p.add_argument("--measures", nargs="+", help="subset of measures (default: all)")
    p.add_argument("--output", type=Path)
    _add_measure_params(p)
    _add_kernel(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("reproduce", help="recompute the bundled reference cases")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--case", action="append", help="case id (repeatable)")
    g.add_argument("--all", action="store_true")
    p.add_argument("--full-species", action="store_true", help="scan q at step 0.001 instead of 0.1")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("axioms", help="search for axiom violations")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--measure", action="append", help="measure name (repeatable)")
    g.add_argument("--all", action="store_true")
    p.add_argument("--extras", action="store_true", help="with --all, add the extra constructions")
    p.add_argument("--budget", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witnesses", type=Path, help="write verdicts and witnesses JSON here")
    _add_measure_params(p)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("optimize", help="hill-climb a point configuration")
    p.add_argument("--measure", required=True)
    p.add_argument("--space", choices=tuple(SPACES), default="unit_square")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--iters", type=int, default=20_000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, help="initial jitter scale")
    p.add_argument("--out", type=Path, help="directory for trajectory.csv, points.json, points.svg")
    _add_measure_params(p)
    _add_kernel(p)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be at least 1")
    try:
        return args.func(args)
    except InstanceTooLarge as exc:
        _say(f"error: {exc}")
        return EXIT_LIMIT
    except (DiversityError, ValueError, OSError) as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
