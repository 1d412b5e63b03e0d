"""Command-line surface driving all experiments.

Every subcommand accepts --seed, --out, --format, --config, and --no-plot.
Results go to stdout; when --out is given the delimited output (CSV, or a
matrix file for cyclic-demo) is written there and a rendered figure is
saved next to it with a .png suffix unless --no-plot is passed.

Option precedence is flags over config file over built-in defaults; the
config file is a flat JSON object keyed by option names.

Exit codes: 0 on success, 1 on validation or usage errors, 2 on numerical
failures (defective eigenbasis, unqualified operators, and the like).
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import golden, plots
from .errors import GraphSamplingError
from .experiments import (
    cyclic_downsample_demo,
    cyclic_shift,
    frame_bound_check,
    gen_erdos_renyi,
    success_curve,
)
from .filterbank import analyze, channel_energy_report, make_channel, synthesize
from .graph_core import (
    bandlimited_signal,
    build_shift,
    real_if_close,
    spectral_decompose,
)
from .matio import read_matrix, write_matrix, write_signal_csv
from .sampler_design import (
    DesignResult,
    brute_force_optimal_sampler,
    greedy_optimal_sampler,
    random_sampler,
    sigma_min_of_subset,
)
from .sampling import (
    apply_sampling,
    build_interpolator,
    interpolate,
    make_sampling_operator,
)
from .ssl import fit_band_coefficients, knn_graph, label_targets, predict_labels

_COMMON_DEFAULTS = {"seed": 0, "out": None, "format": "dense-csv", "no_plot": False}

_DEFAULTS = {
    "decompose": {"input": None, "normalize": False, "ordering": "descending"},
    "sample": {"input": None, "indices": None, "signal": None, "bandwidth": None},
    "interpolate": {
        "input": None,
        "indices": None,
        "bandwidth": None,
        "samples": None,
        "values": None,
        "signal": None,
    },
    "design": {"input": None, "bandwidth": None, "count": None, "policy": "greedy"},
    "er-success": {"n": 50, "bandwidth": 10, "p_grid": "0.1,0.2,0.3,0.5", "trials": 25, "directed": False},
    "frame-bound": {"n": 200, "p": 0.3, "bandwidth": 5, "count": 60, "trials": 50},
    "cyclic-demo": {"n": 8},
    "filterbank": {
        "input": None,
        "bands": None,
        "split": None,
        "policy": "greedy",
        "signal": None,
        "threshold": None,
    },
    "classify": {
        "features": None,
        "count": 2,
        "k_neighbors": 12,
        "bandwidth": None,
        "policy": "greedy",
        "unlabeled": False,
    },
    "golden-example": {},
}


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    sub.add_argument("--out", default=None, help="write delimited output to this path")
    sub.add_argument(
        "--format",
        choices=["dense-csv", "matrix-market"],
        default=None,
        help="matrix file format for inputs and matrix outputs",
    )
    sub.add_argument("--config", default=None, help="JSON file with option defaults")
    sub.add_argument(
        "--no-plot",
        dest="no_plot",
        action="store_const",
        const=True,
        default=None,
        help="skip figure rendering next to --out",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsampling",
        description="Sampling theory for graph signals: decomposition, recovery, design, experiments.",
    )
    commands = parser.add_subparsers(dest="command")

    p = commands.add_parser("decompose", help="eigendecompose a graph shift")
    p.add_argument("--input", help="matrix file with the graph shift")
    p.add_argument("--normalize", action="store_const", const=True, default=None,
                   help="scale the spectral radius to 1 before decomposing")
    p.add_argument("--ordering", choices=["descending", "none"], default=None)
    _add_common(p)

    p = commands.add_parser("sample", help="sample a signal at chosen vertices")
    p.add_argument("--input", help="matrix file with the graph shift")
    p.add_argument("--indices", help="comma-separated vertex indices, e.g. 0,1,3")
    p.add_argument("--signal", help="signal CSV to sample (default: random bandlimited)")
    p.add_argument("--bandwidth", "--k", type=int, help="bandwidth of the generated random signal")
    _add_common(p)

    p = commands.add_parser("interpolate", help="recover a signal from its samples")
    p.add_argument("--input", help="matrix file with the graph shift")
    p.add_argument("--indices", help="comma-separated sampled vertex indices")
    p.add_argument("--bandwidth", "--k", type=int, help="bandwidth assumed for recovery")
    p.add_argument("--samples", help="CSV holding the sampled values")
    p.add_argument("--values", help="inline comma-separated sampled values")
    p.add_argument("--signal", help="optional original signal CSV for an error column")
    _add_common(p)

    p = commands.add_parser("design", help="design a sampling set for a bandwidth")
    p.add_argument("--input", help="matrix file with the graph shift")
    p.add_argument("--bandwidth", "--k", type=int, help="band the design must span")
    p.add_argument("--count", "--m", type=int, help="number of samples to select")
    p.add_argument("--policy", choices=["greedy", "brute-force", "random"], default=None)
    _add_common(p)

    p = commands.add_parser("er-success", help="random-sampling success rates on random graphs")
    p.add_argument("--n", type=int, help="graph size")
    p.add_argument("--bandwidth", "--k", type=int, help="band to sample (also the subset size)")
    p.add_argument("--p-grid", dest="p_grid",
                   help="connection probabilities: 'a,b,c' or 'start:stop:step'")
    p.add_argument("--trials", type=int, help="graphs per probability")
    p.add_argument("--directed", action="store_const", const=True, default=None)
    _add_common(p)

    p = commands.add_parser("frame-bound", help="empirical frame bounds of sampled eigenvector blocks")
    p.add_argument("--n", type=int, help="graph size")
    p.add_argument("--p", type=float, help="connection probability")
    p.add_argument("--bandwidth", "--k", type=int, help="band width")
    p.add_argument("--count", "--m", type=int, help="samples per trial")
    p.add_argument("--trials", type=int, help="random subset draws")
    _add_common(p)

    p = commands.add_parser("cyclic-demo", help="downsample a cyclic graph to half size")
    p.add_argument("--n", type=int, help="even cyclic graph size")
    _add_common(p)

    p = commands.add_parser("filterbank", help="split, sample, and rebuild a full-band signal")
    p.add_argument("--input", help="matrix file with the graph shift")
    p.add_argument("--bands", help="spectral bands like '0:3,3:5' (slices of the ordered spectrum)")
    p.add_argument("--split", type=int, help="two-channel split point (alternative to --bands)")
    p.add_argument("--policy", choices=["greedy", "random-with-retry"], default=None)
    p.add_argument("--signal", help="signal CSV to analyze (default: random full-band)")
    p.add_argument("--threshold", type=float, help="flag channels with sampled energy above this")
    _add_common(p)

    p = commands.add_parser("classify", help="label a feature set by querying a few labels")
    p.add_argument("--features", help="CSV of feature rows, optional final integer label column")
    p.add_argument("--count", "--m", type=int, help="number of labels to query")
    p.add_argument("--k-neighbors", dest="k_neighbors", type=int)
    p.add_argument("--bandwidth", "--k", type=int, help="spectral bandwidth (default: --count)")
    p.add_argument("--policy", choices=["greedy", "random"], default=None)
    p.add_argument("--unlabeled", action="store_const", const=True, default=None,
                   help="feature file has no label column; skip accuracy")
    _add_common(p)

    p = commands.add_parser("golden-example", help="run the bundled five-node walkthrough")
    _add_common(p)

    return parser


def _effective_options(args) -> dict:
    command = args.command
    opts = dict(_COMMON_DEFAULTS)
    opts.update(_DEFAULTS[command])
    if args.config is not None:
        with open(args.config, encoding="utf-8") as handle:
            loaded = json.load(handle)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in loaded.items():
            norm = key.replace("-", "_")
            if norm not in opts:
                raise ValueError(f"unknown config key {key!r} for command {command!r}")
            opts[norm] = value
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        opts[key] = value
    return opts


def _require(opts, *names):
    for name in names:
        if opts.get(name) is None:
            raise ValueError(f"missing required option --{name.replace('_', '-')}")


def _parse_indices(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(i) for i in text)
    return tuple(int(tok) for tok in str(text).split(",") if tok.strip())


def _parse_grid(text) -> list:
    text = str(text)
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        return [round(v, 10) for v in np.arange(start, stop + step / 2, step)]
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _read_vector(path) -> np.ndarray:
    from .matio import read_signal_csv

    table = read_signal_csv(path)
    if "value_re" in table and "value_im" in table:
        return table["value_re"] + 1j * table["value_im"]
    if "value" in table:
        return table["value"]
    first = next(iter(table))
    return table[first]


def _load_decomposition(opts, normalize=False, ordering="descending"):
    mat = read_matrix(opts["input"], opts["format"])
    shift = build_shift(mat, normalize=normalize)
    return shift, spectral_decompose(shift, ordering=ordering)


def _figure_path(opts) -> str:
    return str(Path(opts["out"]).with_suffix(".png"))


def _want_plot(opts) -> bool:
    return opts["out"] is not None and not opts["no_plot"]


def _print_matrix(name, matrix):
    text = np.array2string(
        np.real(np.asarray(matrix)), precision=2, suppress_small=True, floatmode="fixed"
    )
    print(f"{name}:\n{text}")


def _cmd_decompose(opts) -> int:
    _require(opts, "input")
    _, decomp = _load_decomposition(opts, normalize=opts["normalize"], ordering=opts["ordering"])
    lam = decomp.eigenvalues
    print(f"vertices: {decomp.n}  ordering: {decomp.order_tag}")
    print("eigenvalues:", np.array2string(lam, precision=4, suppress_small=True))
    if opts["out"]:
        write_signal_csv(opts["out"], [("index", np.arange(decomp.n)), ("eigenvalue", lam)])
        if _want_plot(opts):
            plots.save_eigenvalues(_figure_path(opts), lam)
    return 0


def _cmd_sample(opts) -> int:
    _require(opts, "input", "indices")
    _, decomp = _load_decomposition(opts)
    indices = _parse_indices(opts["indices"])
    psi = make_sampling_operator(indices, decomp.n)
    if opts["signal"]:
        signal = _read_vector(opts["signal"])
    else:
        k = opts["bandwidth"] or len(indices)
        rng = np.random.default_rng(opts["seed"])
        signal = bandlimited_signal(decomp, rng.standard_normal(k))
    values = apply_sampling(psi, signal)
    print("sampled vertices:", ",".join(str(i) for i in indices))
    print("sampled values:", np.array2string(real_if_close(values), precision=4))
    if opts["out"]:
        write_signal_csv(
            opts["out"],
            [("position", np.arange(psi.m)), ("vertex", np.array(indices)), ("value", values)],
        )
        if _want_plot(opts):
            plots.save_recovery(_figure_path(opts), [], values)
    return 0


def _cmd_interpolate(opts) -> int:
    _require(opts, "input", "indices", "bandwidth")
    _, decomp = _load_decomposition(opts)
    indices = _parse_indices(opts["indices"])
    psi = make_sampling_operator(indices, decomp.n)
    if opts["samples"]:
        values = _read_vector(opts["samples"])
    elif opts["values"] is not None:
        values = np.array([float(tok) for tok in str(opts["values"]).split(",") if tok.strip()])
    else:
        raise ValueError("provide sampled values via --samples or --values")
    interp = build_interpolator(psi, decomp, opts["bandwidth"])
    recovered = interpolate(interp, values)
    print("recovered:", np.array2string(real_if_close(recovered), precision=4))
    columns = [("vertex", np.arange(decomp.n)), ("recovered", recovered)]
    original = None
    if opts["signal"]:
        original = _read_vector(opts["signal"])
        err = np.abs(recovered - original)
        columns += [("original", original), ("abs_error", err)]
        print(f"max abs error vs original: {err.max():.3e}")
    if opts["out"]:
        write_signal_csv(opts["out"], columns)
        if _want_plot(opts):
            plots.save_recovery(
                _figure_path(opts), original if original is not None else [], recovered
            )
    return 0


def _cmd_design(opts) -> int:
    _require(opts, "input", "bandwidth", "count")
    _, decomp = _load_decomposition(opts)
    k, m = opts["bandwidth"], opts["count"]
    if opts["policy"] == "greedy":
        result = greedy_optimal_sampler(decomp, k, m)
    elif opts["policy"] == "brute-force":
        result = brute_force_optimal_sampler(decomp, k, m)
    else:
        psi = random_sampler(decomp.n, m, opts["seed"])
        result = DesignResult(
            indices=psi.indices,
            sigma_min=sigma_min_of_subset(decomp, k, psi.indices),
            trace=(),
        )
    print("chosen vertices:", ",".join(str(i) for i in result.indices))
    print(f"smallest singular value: {result.sigma_min:.6f}")
    if opts["out"]:
        if result.trace:
            steps = np.arange(1, len(result.trace) + 1)
            verts = np.array([i for i, _ in result.trace])
            scores = np.array([s for _, s in result.trace])
        else:
            steps = np.arange(1, len(result.indices) + 1)
            verts = np.array(result.indices)
            scores = np.full(len(result.indices), result.sigma_min)
        write_signal_csv(opts["out"], [("step", steps), ("vertex", verts), ("sigma_min", scores)])
        if _want_plot(opts) and result.trace:
            plots.save_design_trace(_figure_path(opts), result.trace)
    return 0


def _cmd_er_success(opts) -> int:
    ps = _parse_grid(opts["p_grid"])
    curve = success_curve(
        opts["n"], opts["bandwidth"], ps, opts["trials"],
        seed=opts["seed"], directed=opts["directed"],
    )
    for p, rate in curve.points:
        print(f"p={p:.3f}  success_rate={rate:.3f}")
    if opts["out"]:
        xs = np.array([p for p, _ in curve.points])
        ys = np.array([r for _, r in curve.points])
        write_signal_csv(opts["out"], [("p", xs), ("success_rate", ys)])
        if _want_plot(opts):
            plots.save_curve(
                _figure_path(opts), xs, ys, "connection probability", "success rate",
                title=f"n={curve.n}, k={curve.k}, {curve.trials} trials",
            )
    return 0


def _cmd_frame_bound(opts) -> int:
    shift = gen_erdos_renyi(opts["n"], opts["p"], seed=[opts["seed"], 0])
    decomp = spectral_decompose(shift)
    report = frame_bound_check(
        decomp, opts["bandwidth"], opts["count"], opts["trials"], seed=[opts["seed"], 1]
    )
    low, high = report.implied_bounds
    print(f"max deviation: {report.max_deviation:.4f}")
    print(f"fraction within 1/2: {report.fraction_within_half:.3f}")
    print(f"implied frame bounds: [{low:.2f}, {high:.2f}] for {report.sample_count} samples")
    if report.used_conjugate:
        print("note: complex basis, conjugate-transpose products used")
    if opts["out"]:
        write_signal_csv(
            opts["out"],
            [("trial", np.arange(len(report.deviations))), ("deviation", report.deviations)],
        )
        if _want_plot(opts):
            plots.save_deviations(_figure_path(opts), report.deviations)
    return 0


def _cmd_cyclic_demo(opts) -> int:
    n = opts["n"]
    sampled = cyclic_downsample_demo(n)
    half = cyclic_shift(n // 2).weights.real
    _print_matrix(f"sampled shift ({n} -> {n // 2})", sampled.shift)
    gap = float(np.abs(sampled.shift - half).max())
    print(f"max entry deviation from the half-size cyclic shift: {gap:.2e}")
    if opts["out"]:
        write_matrix(opts["out"], real_if_close(sampled.shift, tol=1e-8), opts["format"])
        if _want_plot(opts):
            plots.save_matrix(_figure_path(opts), sampled.shift, title=f"{n} -> {n // 2}")
    return 0 if gap <= 1e-8 else 2


def _cmd_filterbank(opts) -> int:
    _require(opts, "input")
    _, decomp = _load_decomposition(opts)
    n = decomp.n
    if opts["bands"]:
        bands = []
        for part in str(opts["bands"]).split(","):
            start, stop = (int(t) for t in part.split(":"))
            bands.append(range(start, stop))
    elif opts["split"]:
        bands = [range(opts["split"]), range(opts["split"], n)]
    else:
        raise ValueError("provide bands via --bands or --split")
    bank = [
        make_channel(decomp, band, psi_policy=opts["policy"], seed=[opts["seed"], i])
        for i, band in enumerate(bands)
    ]
    if opts["signal"]:
        signal = _read_vector(opts["signal"])
    else:
        rng = np.random.default_rng(opts["seed"])
        signal = rng.standard_normal(n)
    samples = analyze(bank, signal)
    rebuilt = synthesize(bank, samples)
    energies, flags = channel_energy_report(bank, signal, threshold=opts["threshold"])
    error = float(np.linalg.norm(rebuilt - signal) / max(np.linalg.norm(signal), 1e-300))
    for i, codec in enumerate(bank):
        mark = "  FLAGGED" if flags[i] else ""
        print(
            f"channel {i}: band {codec.band[0]}..{codec.band[-1]}  "
            f"vertices {codec.psi.indices}  energy {energies[i]:.4f}{mark}"
        )
    print(f"reconstruction relative error: {error:.3e}")
    if opts["out"]:
        write_signal_csv(
            opts["out"],
            [
                ("vertex", np.arange(n)),
                ("original", signal),
                ("reconstructed", rebuilt),
                ("abs_error", np.abs(rebuilt - signal)),
            ],
        )
        if _want_plot(opts):
            plots.save_energies(_figure_path(opts), energies, flags)
    return 0


def _cmd_classify(opts) -> int:
    _require(opts, "features")
    table = read_matrix(opts["features"], "dense-csv").real
    if opts["unlabeled"]:
        features, labels = table, None
    else:
        if table.shape[1] < 2:
            raise ValueError("labeled feature file needs at least two columns")
        features, labels = table[:, :-1], table[:, -1].astype(int)

    decomp = spectral_decompose(knn_graph(features, opts["k_neighbors"]))
    k = opts["bandwidth"] or opts["count"]
    if opts["policy"] == "greedy":
        psi = make_sampling_operator(
            greedy_optimal_sampler(decomp, k, opts["count"]).indices, decomp.n
        )
    else:
        psi = random_sampler(decomp.n, opts["count"], opts["seed"])
    print("queried vertices:", ",".join(str(i) for i in psi.indices))
    if labels is None:
        print("no labels available; nothing to fit")
        return 0

    pm, targets, binary = label_targets(labels)
    fit = fit_band_coefficients(
        psi, decomp, k, pm[list(psi.indices)], require_qualified=False
    )
    pred = predict_labels(decomp, fit)
    predicted = pred if binary else np.argmax(pred, axis=1)
    accuracy = float(np.mean(predicted == targets))
    print(f"accuracy: {accuracy:.4f}")
    if opts["out"]:
        write_signal_csv(
            opts["out"],
            [
                ("item", np.arange(decomp.n)),
                ("predicted", np.asarray(predicted, dtype=float)),
                ("actual", np.asarray(targets, dtype=float)),
            ],
        )
        if _want_plot(opts):
            coords = np.real(decomp.vectors[:, :2])
            plots.save_label_scatter(_figure_path(opts), coords, predicted, sampled=psi.indices)
    return 0


def _cmd_golden_example(opts) -> int:
    stages = golden.walkthrough()
    order = [
        ("shift", "graph shift"),
        ("eigenvalues", "eigenvalues"),
        ("basis", "eigenvector basis"),
        ("signal", "bandwidth-3 signal"),
        ("spectrum", "spectrum"),
        ("first_difference", "first-order difference"),
        ("sampling_matrix", "sampling matrix (vertices 0,1,3)"),
        ("sampled_values", "sampled values"),
        ("interpolation_matrix", "interpolation matrix"),
        ("sampled_basis", "sampled-graph basis"),
        ("sampled_eigenvalues", "sampled eigenvalues"),
        ("sampled_shift", "sampled graph shift"),
        ("sampled_difference", "sampled first-order difference"),
        ("recovered", "recovered signal"),
    ]
    for key, label in order:
        _print_matrix(label, stages[key])
    deviations = golden.verify(stages)
    worst = max(deviations.values())
    print(f"max deviation from reference values: {worst:.2e} (tolerance {golden.TOLERANCE})")
    if opts["out"]:
        write_signal_csv(
            opts["out"],
            [
                ("vertex", np.arange(5)),
                ("signal", stages["signal"]),
                ("first_difference", stages["first_difference"]),
                ("recovered", stages["recovered"]),
            ],
        )
        if _want_plot(opts):
            plots.save_recovery(_figure_path(opts), stages["signal"], stages["recovered"])
    return 0 if worst <= golden.TOLERANCE else 2


_HANDLERS = {
    "decompose": _cmd_decompose,
    "sample": _cmd_sample,
    "interpolate": _cmd_interpolate,
    "design": _cmd_design,
    "er-success": _cmd_er_success,
    "frame-bound": _cmd_frame_bound,
    "cyclic-demo": _cmd_cyclic_demo,
    "filterbank": _cmd_filterbank,
    "classify": _cmd_classify,
    "golden-example": _cmd_golden_example,
}


def cli_dispatch(argv=None) -> int:
    """Parse arguments, run one subcommand, and map failures to exit codes."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        opts = _effective_options(args)
        return _HANDLERS[args.command](opts)
    except np.linalg.LinAlgError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except GraphSamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc, ValueError) else 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
