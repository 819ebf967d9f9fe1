"""Command-line front end.

One subcommand per analyzer plus `train` and `qaoa` pipelines. Every run
writes a canonical `report.json` (sorted keys, 2-space indent, trailing
newline) whose `artifacts` array names every file the run produced, so a
byte-for-byte identical report means the whole run was reproduced. Exit
codes: 0 success, 2 usage problems, 3 circuit-spec parse failures, 4
numerical failures such as a diverging optimizer.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .analyzers import (
    SCHEMA,
    MetricSpec,
    entanglement_capability,
    entanglement_spectrum,
    expressibility,
    loss_landscape,
    parameter_histogram,
    reachability,
    training_path,
)
from .circuit import (
    CircuitDescriptor,
    CircuitSpecError,
    bind,
    parse_circuit_spec,
    qaoa_builder,
    serialize_circuit_spec,
)
from .library import max_cut_size, mean_cut_scorer, random_gnm_edges
from .simulator import sample, simulate
from .svg import heatmap, histogram_plot, line_plot, path_plot
from .trainer import DivergenceError, OptimizerConfig, ensemble_train


class UsageError(ValueError):
    """Semantically invalid flag combination or input file problem."""


def _load_circuit(path: str) -> CircuitDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read circuit file {path}: {exc}") from exc
    return parse_circuit_spec(text)


def _resolve_cli_seed(seed) -> int:
    if seed is None:
        return int(np.random.default_rng().integers(2**31))
    return int(seed)


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _grid_csv(phi_values, values) -> str:
    rows = []
    for i, p0 in enumerate(phi_values):
        for j, p1 in enumerate(phi_values):
            rows.append([float(p0), float(p1), float(values[i][j])])
    return _csv(["phi0", "phi1", "value"], rows)


def _trace_csv(trace) -> str:
    header, rows = trace.table()
    return _csv(header, rows)


def _require_cost(circuit: CircuitDescriptor, command: str) -> None:
    if circuit.cost is None:
        raise UsageError(
            f"the {command} command needs a circuit spec with a cost observable"
        )


def _optimizer_config(args, seed: int) -> OptimizerConfig:
    return OptimizerConfig(method=args.method, learning_rate=args.lr,
                           steps=args.steps, seed=seed)


def _best_trace(traces):
    best = min(range(len(traces)), key=lambda r: float(traces[r].losses.min()))
    trace = traces[best]
    at = int(np.argmin(trace.losses))
    return best, trace, trace.thetas[at].copy(), float(trace.losses[at])


def _training_summary(traces) -> dict:
    best, _, best_theta, best_loss = _best_trace(traces)
    return {
        "schema": SCHEMA,
        "kind": "training",
        "restarts": len(traces),
        "steps": int(traces[0].losses.shape[0] - 1),
        "final_losses": [float(t.losses[-1]) for t in traces],
        "best_restart": best,
        "best_loss": best_loss,
        "best_theta": [float(v) for v in best_theta],
    }


def _cmd_expressibility(args, seed: int):
    circuit = _load_circuit(args.circuit)
    report = expressibility(circuit, args.samples, args.measure,
                            bins=args.bins, seed=seed)
    hist = report.fidelity_histogram
    base = report.baseline
    svg = histogram_plot(
        [("circuit", hist.bin_edges, hist.masses, "bar"),
         ("haar", base.bin_edges, base.masses, "line")],
        f"fidelity distribution ({args.measure} = {report.value:.4f})",
        "fidelity",
    )
    rows = [
        [float(hist.bin_edges[b]), float(hist.bin_edges[b + 1]),
         float(hist.masses[b]), float(base.masses[b])]
        for b in range(hist.masses.shape[0])
    ]
    files = {
        "expressibility.svg": svg,
        "fidelity_histogram.csv": _csv(
            ["bin_lo", "bin_hi", "observed", "haar"], rows),
    }
    return report.to_dict(), files


def _cmd_entanglement(args, seed: int):
    circuit = _load_circuit(args.circuit)
    report = entanglement_capability(circuit, args.samples, args.measure,
                                     seed=seed)
    return report.to_dict(), {}


def _cmd_spectrum(args, seed: int):
    circuit = _load_circuit(args.circuit)
    report = entanglement_spectrum(circuit, args.samples, args.measure,
                                   bins=args.bins, seed=seed)
    ranks = np.arange(1, report.profile.shape[0] + 1)
    svg = line_plot(
        [("circuit", ranks, report.profile),
         ("haar reference", ranks, report.reference.profile)],
        f"entanglement spectrum (esd = {report.esd:.4f})",
        "rank", "mean xi",
    )
    rows = [
        [int(r), float(report.profile[r - 1]),
         float(report.reference.profile[r - 1])]
        for r in ranks
    ]
    files = {
        "spectrum.svg": svg,
        "spectrum_profile.csv": _csv(["rank", "xi_mean", "xi_reference"], rows),
    }
    return report.to_dict(), files


def _cmd_train(args, seed: int):
    circuit = _load_circuit(args.circuit)
    _require_cost(circuit, "train")
    traces = ensemble_train(circuit, _optimizer_config(args, seed),
                            args.restarts)
    files = {
        f"trace_{t.restart_id}.csv": _trace_csv(t) for t in traces
    }
    steps = np.arange(traces[0].losses.shape[0])
    files["loss_curves.svg"] = line_plot(
        [(f"restart {t.restart_id}", steps, t.losses) for t in traces],
        "training loss", "step", "loss",
    )
    result = _training_summary(traces)
    result["seed"] = seed
    return result, files


def _parse_theta(text: str | None, circuit: CircuitDescriptor):
    if text is None:
        return np.zeros(circuit.n_params)
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"cannot parse --theta value {text!r}") from exc
    return np.asarray(values)


def _cmd_landscape(args, seed: int):
    circuit = _load_circuit(args.circuit)
    _require_cost(circuit, "landscape")
    trace = None
    theta_star = None
    if args.basis == "pca":
        traces = ensemble_train(circuit, _optimizer_config(args, seed), 1)
        trace = traces[0]
        if args.theta is None:
            _, _, theta_star, _ = _best_trace(traces)
    if theta_star is None:
        theta_star = _parse_theta(args.theta, circuit)
    grid = loss_landscape(circuit, theta_star, basis_mode=args.basis,
                          metric=MetricSpec(), points=args.points,
                          scan_range=args.scan_range, seed=seed, trace=trace)
    files = {
        "landscape.csv": _grid_csv(grid.phi_values, grid.values),
        "landscape.svg": heatmap(grid.phi_values, grid.phi_values,
                                 grid.values, "loss landscape",
                                 "phi0", "phi1"),
    }
    return grid.to_dict(), files


def _cmd_path(args, seed: int):
    circuit = _load_circuit(args.circuit)
    _require_cost(circuit, "path")
    if args.overlay and args.mode != "pca":
        raise UsageError("--overlay requires --mode pca")
    traces = ensemble_train(circuit, _optimizer_config(args, seed),
                            args.restarts)
    overlay = None
    if args.overlay:
        _, best_trace, best_theta, _ = _best_trace(traces)
        overlay = loss_landscape(circuit, best_theta, basis_mode="pca",
                                 metric=MetricSpec(), points=args.points,
                                 scan_range=args.scan_range, seed=seed,
                                 trace=best_trace)
    path = training_path(traces, mode=args.mode, overlay=overlay,
                         perplexity=args.perplexity, iters=args.iters,
                         seed=seed)
    rows = [
        [int(path.restarts[i]), int(path.steps[i]), float(path.losses[i]),
         float(path.coords[i, 0]), float(path.coords[i, 1])]
        for i in range(path.coords.shape[0])
    ]
    files = {
        "path.csv": _csv(["restart", "step", "loss", "x", "y"], rows),
        "path.svg": path_plot(path.coords, path.restarts,
                              f"training paths ({args.mode})"),
    }
    if overlay is not None:
        files["overlay.csv"] = _grid_csv(overlay.phi_values, overlay.values)
    return path.to_dict(), files


def _cmd_histogram(args, seed: int):
    circuit = _load_circuit(args.circuit)
    _require_cost(circuit, "histogram")
    traces = ensemble_train(circuit, _optimizer_config(args, seed),
                            args.restarts)
    series = parameter_histogram(traces, bins=args.bins)
    rows = []
    for t in range(series.n_steps):
        for p in range(series.n_params):
            for b in range(series.bins):
                rows.append([t, p, float(series.bin_edges[p][b]),
                             float(series.bin_edges[p][b + 1]),
                             float(series.masses[t, p, b])])
    files = {
        "parameter_histograms.csv": _csv(
            ["step", "param", "bin_lo", "bin_hi", "mass"], rows),
    }
    steps = np.arange(series.n_steps)
    for p in range(series.n_params):
        centers = 0.5 * (series.bin_edges[p][:-1] + series.bin_edges[p][1:])
        files[f"param_{p}.svg"] = heatmap(
            steps, centers, series.masses[:, p, :],
            f"theta_{p} marginal over training", "step", f"theta_{p}",
        )
    result = series.to_dict()
    result["seed"] = seed
    return result, files


def _cmd_reachability(args, seed: int):
    circuit = _load_circuit(args.circuit)
    _require_cost(circuit, "reachability")
    config = OptimizerConfig(method=args.method, learning_rate=args.lr,
                             steps=args.steps, seed=None)
    report = reachability(circuit, args.samples, args.restarts,
                          config=config, seed=seed)
    return report.to_dict(), {}


def _cmd_qaoa(args, seed: int):
    edges = random_gnm_edges(args.nodes, args.edges, seed=seed)
    circuit = qaoa_builder(edges, args.p, n_nodes=args.nodes)
    traces = ensemble_train(circuit, _optimizer_config(args, seed),
                            args.restarts)
    best, best_trace, best_theta, best_loss = _best_trace(traces)

    state = simulate(bind(circuit, best_theta))
    counts = sample(state, args.shots, seed + 10_000)
    sampled_cut = mean_cut_scorer(edges)(counts.bit_matrix())

    grid = loss_landscape(circuit, best_theta, basis_mode="pca",
                          metric=MetricSpec(), points=args.points,
                          scan_range=args.scan_range, seed=seed,
                          trace=best_trace)
    path = training_path(traces, mode=args.mode, perplexity=args.perplexity,
                         iters=args.iters, seed=seed)

    files = {f"trace_{t.restart_id}.csv": _trace_csv(t) for t in traces}
    files["circuit.spec.json"] = serialize_circuit_spec(circuit)
    files["landscape.csv"] = _grid_csv(grid.phi_values, grid.values)
    files["landscape.svg"] = heatmap(grid.phi_values, grid.phi_values,
                                     grid.values, f"qaoa p={args.p} loss",
                                     "phi0", "phi1")
    path_rows = [
        [int(path.restarts[i]), int(path.steps[i]), float(path.losses[i]),
         float(path.coords[i, 0]), float(path.coords[i, 1])]
        for i in range(path.coords.shape[0])
    ]
    files["path.csv"] = _csv(["restart", "step", "loss", "x", "y"], path_rows)
    files["path.svg"] = path_plot(path.coords, path.restarts,
                                  f"qaoa p={args.p} training paths")

    result = {
        "schema": SCHEMA,
        "kind": "qaoa",
        "nodes": args.nodes,
        "edges": [[int(u), int(v)] for u, v in edges],
        "p": args.p,
        "optimum_cut": max_cut_size(edges, args.nodes),
        "expected_cut_at_best": len(edges) / 2.0 - best_loss,
        "sampled_mean_cut": float(sampled_cut),
        "shots": args.shots,
        "training": _training_summary(traces),
        "seed": seed,
    }
    return result, files


_COMMANDS = {
    "expressibility": _cmd_expressibility,
    "entanglement": _cmd_entanglement,
    "spectrum": _cmd_spectrum,
    "train": _cmd_train,
    "landscape": _cmd_landscape,
    "path": _cmd_path,
    "histogram": _cmd_histogram,
    "reachability": _cmd_reachability,
    "qaoa": _cmd_qaoa,
}


def _add_training_flags(sub, restarts_default: int) -> None:
    sub.add_argument("--steps", type=int, default=100)
    sub.add_argument("--restarts", type=int, default=restarts_default)
    sub.add_argument("--lr", type=float, default=0.05)
    sub.add_argument("--method", choices=("gd", "adam"), default="adam")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqc-lens",
        description="Analyze parameterized quantum circuits: expressibility, "
                    "entanglement, landscapes, and training behavior.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def new(name: str, needs_circuit: bool = True):
        p = sub.add_parser(name)
        if needs_circuit:
            p.add_argument("--circuit", required=True,
                           help="path to a JSON circuit spec")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default="pqc-lens-out",
                       help="output directory (created if absent)")
        return p

    p = new("expressibility")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--measure", choices=("kld", "jsd"), default="kld")
    p.add_argument("--bins", type=int, default=75)

    p = new("entanglement")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--measure", choices=("meyer-wallach", "scott"),
                   default="meyer-wallach")

    p = new("spectrum")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--measure", choices=("kld", "jsd"), default="kld")
    p.add_argument("--bins", type=int, default=75)

    p = new("train")
    _add_training_flags(p, restarts_default=1)

    p = new("landscape")
    _add_training_flags(p, restarts_default=1)
    p.add_argument("--basis", choices=("random", "pca"), default="random")
    p.add_argument("--theta", default=None,
                   help="comma-separated center parameters (default zeros, "
                        "or the trained optimum with --basis pca)")
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--range", dest="scan_range", type=float, default=math.pi)

    p = new("path")
    _add_training_flags(p, restarts_default=5)
    p.add_argument("--mode", choices=("pca", "tsne"), default="pca")
    p.add_argument("--overlay", action="store_true",
                   help="also evaluate the loss on the projection grid "
                        "(pca mode only)")
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--range", dest="scan_range", type=float, default=math.pi)
    p.add_argument("--perplexity", type=float, default=30.0)
    p.add_argument("--iters", type=int, default=1000)

    p = new("histogram")
    _add_training_flags(p, restarts_default=8)
    p.add_argument("--bins", type=int, default=75)

    p = new("reachability")
    _add_training_flags(p, restarts_default=5)
    p.add_argument("--samples", type=int, default=1000,
                   help="number of Haar states for the reference minimum")

    p = new("qaoa", needs_circuit=False)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True,
                   help="edge count of the random graph")
    p.add_argument("--p", type=int, default=1)
    _add_training_flags(p, restarts_default=5)
    p.add_argument("--shots", type=int, default=1024)
    p.add_argument("--mode", choices=("pca", "tsne"), default="pca")
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--range", dest="scan_range", type=float, default=math.pi)
    p.add_argument("--perplexity", type=float, default=30.0)
    p.add_argument("--iters", type=int, default=1000)

    return parser


def _manifest(args, seed: int) -> dict:
    doc = {k: v for k, v in vars(args).items()}
    doc["seed"] = seed
    return doc


def run(argv=None) -> int:
    """Parse argv, run one command, write its outputs. Returns exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    seed = _resolve_cli_seed(args.seed)
    try:
        result, files = _COMMANDS[args.command](args, seed)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CircuitSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report = {
        "schema": SCHEMA,
        "command": args.command,
        "manifest": _manifest(args, seed),
        "result": result,
        "artifacts": sorted(list(files) + ["report.json"]),
    }
    os.makedirs(args.out, exist_ok=True)
    for name, content in files.items():
        with open(os.path.join(args.out, name), "w", encoding="utf-8",
                  newline="\n") as fh:
            fh.write(content)
    with open(os.path.join(args.out, "report.json"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
