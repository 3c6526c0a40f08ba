"""Command-line interface over the store, learners, solver, and plots.

Exit codes: 0 success, 1 data/domain error, 2 usage error.  ``--format
json`` switches data commands to machine-readable output.  The store
directory comes from ``--store`` or the ``DECISIONLAB_STORE`` environment
variable.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import correlation, leveling, lineargaussian, markov, mdp, store, svgplot
from .errors import DecisionLabError, EmptySample

DEFAULT_STORE = "./decisionlab-store"


def _open_store(args) -> store.HistoryStore:
    return store.HistoryStore.open(args.store)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _read_table(path: str, skip: int) -> list[list[str]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[skip:]


def _parse_pair(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 2:
        raise ValueError(f"pair spec must be industry:index, got {spec!r}")
    return int(parts[0]), int(parts[1])


def _aligned_values(series_list: list[store.TimeSeries]) -> tuple[list[float], list[list[float]]]:
    """Intersect series on common times; returns (times, values per series)."""
    common = set(series_list[0].times)
    for s in series_list[1:]:
        common &= set(s.times)
    times = sorted(common)
    out = []
    for s in series_list:
        lookup = dict(s.points)
        out.append([lookup[t] for t in times])
    return times, out


def _prediction_times(series: store.TimeSeries, k: int) -> list[float]:
    times = series.times
    step = times[-1] - times[-2] if len(times) >= 2 else 1.0
    return [times[-1] + step * (i + 1) for i in range(k)]


# --- subcommand handlers ------------------------------------------------------


def cmd_ingest(args) -> int:
    st = _open_store(args)
    rules = store.load_rules(args.rules)
    if args.create_missing:
        for rule in rules:
            if st.get_industry(rule.industry_id) is None:
                st.upsert_industry(store.Industry(rule.industry_id, f"industry-{rule.industry_id}"))
            if st.get_index(rule.index_id) is None:
                st.upsert_index(store.IndexDef(rule.index_id, f"index-{rule.index_id}"))
    table = _read_table(args.csv, args.skip)
    result = st.convert_spreadsheet(table, rules)
    st.save(args.store)
    text = f"wrote {result.written} observations\n"
    for warning in result.warnings:
        text += f"warning: {warning}\n"
    _emit(args, {"written": result.written, "warnings": result.warnings}, text)
    return 0


def cmd_series(args) -> int:
    st = _open_store(args)
    time_range = None
    if args.start is not None or args.end is not None:
        time_range = (args.start, args.end)
    series = st.get_series(args.industry, args.index, time_range)
    text = "".join(f"{t:g} {v!r}\n" for t, v in series.points)
    _emit(
        args,
        {
            "industry_id": series.industry_id,
            "index_id": series.index_id,
            "points": [[t, v] for t, v in series.points],
        },
        text or "(empty series)\n",
    )
    return 0


def cmd_predict_gaussian(args) -> int:
    st = _open_store(args)
    series = st.get_series(args.industry, args.index)
    model = lineargaussian.fit_mle(series)
    beliefs = lineargaussian.predict_horizon(series.values[-1], model, args.horizon)
    times = _prediction_times(series, args.horizon)
    rows = [
        {"time": t, "mean": b.mean, "std": b.std} for t, b in zip(times, beliefs)
    ]
    text = "".join(f"{t:g} {b.mean:.6f} {b.std:.6f}\n" for t, b in zip(times, beliefs))
    _emit(
        args,
        {"model": {"a": model.a, "b": model.b, "sigma": model.sigma}, "beliefs": rows},
        text,
    )
    return 0


def cmd_predict_markov(args) -> int:
    st = _open_store(args)
    scheme = leveling.load_scheme(args.scheme)
    series_list = [st.get_series(args.industry, idx) for idx in scheme.index_ids]
    _, values = _aligned_values(series_list)
    values_by_index = dict(zip(scheme.index_ids, values))
    labels = leveling.label_history(values_by_index, scheme)
    n = scheme.level_count
    matrix = markov.learn_transition_matrix(labels, n, laplace=args.laplace)
    start = [0.0] * n
    start[labels[-1]] = 1.0
    distributions = []
    dist = start
    for _ in range(args.steps):
        dist = markov.predict_distribution(dist, matrix, 1)
        distributions.append([float(p) for p in dist])
    text = "labels: " + " ".join(str(l) for l in labels) + "\n"
    for step, d in enumerate(distributions, start=1):
        text += f"step {step}: " + " ".join(f"{p:.6f}" for p in d) + "\n"
    _emit(
        args,
        {
            "labels": labels,
            "matrix": [[float(c) for c in row] for row in matrix],
            "distributions": distributions,
        },
        text,
    )
    return 0


def cmd_correlate(args) -> int:
    st = _open_store(args)
    x_ind, x_idx = _parse_pair(args.x)
    y_ind, y_idx = _parse_pair(args.y)
    series = [st.get_series(x_ind, x_idx), st.get_series(y_ind, y_idx)]
    control_values = None
    if args.partial:
        z_ind, z_idx = _parse_pair(args.partial)
        series.append(st.get_series(z_ind, z_idx))
    _, values = _aligned_values(series)
    if len(values[0]) < 2:
        raise EmptySample("fewer than 2 overlapping observations")
    sample = correlation.PairedSample(values[0], values[1])
    if args.partial:
        control_values = values[2]
    report = correlation.compute_report(
        sample,
        ratio_bins=args.ratio,
        total_levels=args.total,
        control=control_values,
    )
    text = correlation.format_report(sample, report)
    _emit(
        args,
        {
            "n": len(sample),
            "pearson": report.pearson,
            "kendall_tau": report.kendall_tau,
            "spearman": report.spearman,
            "ratio": report.ratio,
            "total": report.total,
            "partial": report.partial,
            "report": text,
        },
        text,
    )
    return 0


def cmd_mdp_solve(args) -> int:
    model = mdp.load_mdp(args.spec)
    utilities, iterations = mdp.value_iteration(model, args.epsilon)
    policy = mdp.extract_policy(model, utilities)
    text = f"converged in {iterations} iterations\n"
    for s, name in enumerate(model.state_names):
        text += f"{name}: U={utilities[s]:.6f} action={model.action_names[policy[s]]}\n"
    _emit(
        args,
        {
            "states": list(model.state_names),
            "actions": list(model.action_names),
            "utilities": [float(u) for u in utilities],
            "policy": [int(a) for a in policy],
            "iterations": iterations,
        },
        text,
    )
    return 0


def cmd_plot(args) -> int:
    with open(args.plotspec, "r", encoding="utf-8") as fh:
        spec = svgplot.PlotSpec.from_dict(json.load(fh))
    st = _open_store(args)
    if spec.kind == "distribution":
        series = st.get_series(spec.industry, spec.index)
        model = lineargaussian.fit_mle(series)
        last_time = series.times[-1]
        steps = int(spec.year - last_time)
        if steps < 1:
            raise ValueError(f"target year {spec.year} is not after the series end {last_time:g}")
        belief = lineargaussian.predict_horizon(series.values[-1], model, steps)[-1]
        document = svgplot.emit_distribution_svg(
            belief,
            x_label=spec.x_label or f"index {spec.index} in {spec.year}",
            y_label=spec.y_label or "probability density",
        )
    elif spec.kind == "trend":
        series = st.get_series(spec.industry, spec.index)
        model = lineargaussian.fit_mle(series)
        beliefs = lineargaussian.predict_horizon(series.values[-1], model, spec.horizon)
        document = svgplot.emit_trend_svg(
            series,
            beliefs,
            prediction_times=_prediction_times(series, spec.horizon),
            x_label=spec.x_label or "year",
            y_label=spec.y_label or f"index {spec.index}",
        )
    else:
        xs = st.get_series(spec.x_industry, spec.x_index)
        ys = st.get_series(spec.y_industry, spec.y_index)
        _, values = _aligned_values([xs, ys])
        document = svgplot.emit_scatter_svg(
            values[0],
            values[1],
            x_label=spec.x_label or f"index {spec.x_index}",
            y_label=spec.y_label or f"index {spec.y_index}",
        )
    Path(spec.output).write_text(document, encoding="utf-8")
    _emit(args, {"output": spec.output}, f"wrote {spec.output}\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(store.HistoryStore.open(args.store), Path(args.templates))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decisionlab",
        description="Decision-analytics workbench: stores, learners, correlation, MDP solving, plots.",
    )
    parser.add_argument(
        "--store",
        default=os.environ.get("DECISIONLAB_STORE", DEFAULT_STORE),
        help="store directory (default: $DECISIONLAB_STORE or %(default)s)",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a CSV table into the store via a rule file")
    p.add_argument("csv")
    p.add_argument("rules")
    p.add_argument("--skip", type=int, default=0, help="header rows to skip")
    p.add_argument("--create-missing", action="store_true",
                   help="register stub industries/indices referenced by rules")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("series", help="print the stored series for industry and index")
    p.add_argument("industry", type=int)
    p.add_argument("index", type=int)
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--end", type=float, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("predict", help="predict future index values")
    psub = p.add_subparsers(dest="method", required=True)

    pg = psub.add_parser("gaussian", help="linear-Gaussian horizon prediction")
    pg.add_argument("industry", type=int)
    pg.add_argument("index", type=int)
    pg.add_argument("--horizon", type=int, default=5)
    pg.set_defaults(func=cmd_predict_gaussian)

    pm = psub.add_parser("markov", help="discrete state-distribution prediction")
    pm.add_argument("industry", type=int)
    pm.add_argument("--scheme", required=True, help="leveling scheme file")
    pm.add_argument("--steps", type=int, default=5)
    pm.add_argument("--laplace", action="store_true")
    pm.set_defaults(func=cmd_predict_markov)

    p = sub.add_parser("correlate", help="correlation report for two series")
    p.add_argument("x", help="industry:index of the X series")
    p.add_argument("y", help="industry:index of the Y series")
    p.add_argument("--ratio", type=int, default=None, metavar="BINS",
                   help="add correlation ratio with this many x-bins")
    p.add_argument("--total", type=int, default=None, metavar="LEVELS",
                   help="add total correlation at this many levels")
    p.add_argument("--partial", default=None, metavar="PAIR",
                   help="industry:index of a control series for partial correlation")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("mdp", help="Markov decision process commands")
    msub = p.add_subparsers(dest="mdp_command", required=True)
    ms = msub.add_parser("solve", help="value-iterate a model file")
    ms.add_argument("spec")
    ms.add_argument("--epsilon", type=float, default=1e-8)
    ms.set_defaults(func=cmd_mdp_solve)

    p = sub.add_parser("plot", help="render an SVG plot from a JSON plot spec")
    p.add_argument("plotspec")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("serve", help="run the HTTP/JSON service")
    p.add_argument("port", type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--templates", default="./templates",
                   help="directory for template documents")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DecisionLabError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
