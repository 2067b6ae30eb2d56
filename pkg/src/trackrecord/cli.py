"""Pipeline driver: ingest, work scores, researcher indicators, serve.

The three batch commands mirror the offline workflow (aggregate the
network, score works, aggregate per researcher); ``serve`` loads the
artifacts read-only and runs the HTTP API.

Exit codes: 0 success, 1 usage, 2 I/O, 3 validation/format.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import CONFIG_ENV_VAR, ServiceConfig, load_config, resolve_config_path
from .errors import (
    ArtifactError,
    ConfigError,
    InconsistencyError,
    SourceFormatError,
    StoreError,
    TrackRecordError,
    ValidationError,
)
from .graph import (
    apply_cleaning_rules,
    graph_summary,
    load_graph,
    merge_sources,
    parse_source_file,
    save_graph,
)
from .indicators import compute_researcher_indicators
from .profiles import apply_facets, FacetSelection
from .store import ProfileStore, TokenTable
from .workscores import (
    IndicatorParams,
    compute_work_scores,
    load_scores_csv,
    require_scores_for,
    save_scores_csv,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; this pipeline reserves 2 for I/O.
    def error(self, message: str):  # noqa: D102
        raise _UsageError(message)


def _source_pair(value: str) -> tuple[str, str]:
    tag, sep, path = value.partition("=")
    if not sep or not tag or not path:
        raise argparse.ArgumentTypeError("expected TAG=PATH")
    return tag, path


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trackrecord", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser(
        "ingest", help="aggregate JSONL sources into a cleaned graph artifact"
    )
    p_ingest.add_argument(
        "--source",
        action="append",
        required=True,
        type=_source_pair,
        metavar="TAG=PATH",
        help="source tag and JSONL path; repeat per source, order = precedence",
    )
    p_ingest.add_argument("--dataset-year", type=int, required=True)
    p_ingest.add_argument("--out", required=True, help="graph artifact path")
    p_ingest.add_argument("--rejects", help="rejects report path (default OUT.rejects.jsonl)")
    p_ingest.add_argument("--report", help="removal report path (default OUT.report.json)")

    p_scores = sub.add_parser(
        "compute-work-scores",
        aliases=["export-scores"],
        help="compute the four work-level scores and dump them as CSV",
    )
    p_scores.add_argument("--graph", required=True)
    p_scores.add_argument("--params", help="config file supplying indicator params")
    p_scores.add_argument("--out", required=True, help="scores CSV path")

    p_res = sub.add_parser(
        "compute-researcher",
        help="compute researcher-level indicators for every stored profile",
    )
    p_res.add_argument("--graph", required=True)
    p_res.add_argument("--scores", required=True)
    p_res.add_argument("--profiles", required=True, help="profile store JSON")
    p_res.add_argument("--out", required=True, help="indicators JSON path")

    p_serve = sub.add_parser("serve", help="serve the HTTP API from a config file")
    p_serve.add_argument(
        "--config",
        help=f"config JSON path (the {CONFIG_ENV_VAR} env var overrides this)",
    )
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_ingest(args: argparse.Namespace) -> int:
    out = Path(args.out)
    rejects_path = Path(args.rejects) if args.rejects else out.with_suffix(out.suffix + ".rejects.jsonl")
    report_path = Path(args.report) if args.report else out.with_suffix(out.suffix + ".report.json")

    streams = []
    all_rejects: list[dict[str, object]] = []
    malformed = 0
    for tag, path in args.source:
        parsed = parse_source_file(path, tag)
        streams.append(parsed.records)
        malformed += parsed.malformed
        all_rejects.extend(
            {"source": tag, "line": r.line, "reason": r.reason} for r in parsed.rejects
        )

    draft = merge_sources(streams)
    graph, cleaning = apply_cleaning_rules(draft, args.dataset_year)
    save_graph(graph, out)

    with open(rejects_path, "w", encoding="utf-8") as fh:
        for row in all_rejects:
            fh.write(json.dumps(row, sort_keys=True) + "\n")

    report = {
        "dataset_year": graph.dataset_year,
        "current_year": graph.current_year,
        "parse_rejects": len(all_rejects),
        "parse_malformed": malformed,
        **cleaning.to_dict(),
    }
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")

    summary = graph_summary(graph).to_dict()
    print(f"graph written to {out}")
    for key, value in summary.items():
        print(f"  {key}: {value}")
    print(f"  current_year: {graph.current_year}")
    print("removals:")
    for key, value in cleaning.to_dict().items():
        print(f"  {key}: {value}")
    if all_rejects:
        print(f"  parse_rejects: {len(all_rejects)} (see {rejects_path})")
    return EXIT_OK


def _load_params(path: str | None) -> IndicatorParams:
    if path is None:
        return IndicatorParams()
    return load_config(path).params


def cmd_compute_work_scores(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    params = _load_params(args.params)
    scores, diagnostics = compute_work_scores(graph, params)
    save_scores_csv(args.out, scores)
    print(f"scores for {len(scores)} works written to {args.out}")
    for name in ("influence", "popularity"):
        result = diagnostics.get(name)
        if result is None:
            continue
        status = "converged" if result.converged else "NOT converged"
        print(
            f"  {name}: {status} after {result.iterations} iterations "
            f"(L1 residual {result.residual:.3e})"
        )
    return EXIT_OK


def cmd_compute_researcher(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    scores = load_scores_csv(args.scores)
    require_scores_for(graph, scores)
    store = ProfileStore.load(args.profiles, graph)

    out: dict[str, dict[str, object]] = {}
    for orcid in store.orcids():
        profile = store.get(orcid)
        assert profile is not None
        unresolved = [e.doi for e in profile.entries if not e.resolved]
        if unresolved:
            print(
                f"warning: {orcid}: skipping {len(unresolved)} unresolved "
                f"entries ({', '.join(unresolved[:3])}{'...' if len(unresolved) > 3 else ''})",
                file=sys.stderr,
            )
        resolved = apply_facets(profile, graph.works, FacetSelection())
        works_with_scores = [
            (graph.works[e.doi], scores[e.doi]) for e in resolved if e.resolved
        ]
        indicators = compute_researcher_indicators(
            works_with_scores, profile.inactive_periods, graph.current_year
        )
        out[orcid] = indicators.to_json_dict()

    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"indicators for {len(out)} profiles written to {args.out}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .orcid import FileRecordProvider
    from .service import ServiceState, create_app

    config_path = resolve_config_path(args.config)
    if config_path is None:
        print("serve needs --config or the config env var", file=sys.stderr)
        return EXIT_USAGE
    config = load_config(config_path)
    state = _state_from_config(config)
    if config.records_path:
        state.provider = FileRecordProvider(config.records_path)
    app = create_app(state)
    print(
        f"ready: serving {len(state.graph.works)} works, "
        f"{len(state.store)} profiles on http://{config.host}:{config.port}",
        flush=True,
    )
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


def _state_from_config(config: ServiceConfig):
    from .service import ServiceState

    if not config.graph_path:
        raise ConfigError("config needs data.graph")
    if not config.scores_path:
        raise ConfigError("config needs data.scores")
    if not Path(config.graph_path).exists():
        raise ConfigError(f"graph file not found: {config.graph_path}")
    if not Path(config.scores_path).exists():
        raise ConfigError(f"scores file not found: {config.scores_path}")
    graph = load_graph(config.graph_path)
    if config.dataset_year is not None and config.dataset_year != graph.dataset_year:
        raise ConfigError(
            f"config dataset_year {config.dataset_year} does not match "
            f"graph dataset_year {graph.dataset_year}"
        )
    scores = load_scores_csv(config.scores_path)
    require_scores_for(graph, scores)
    if config.profiles_path:
        store = ProfileStore.load(config.profiles_path, graph)
    else:
        store = ProfileStore()
    tokens = TokenTable.load(config.tokens_path) if config.tokens_path else TokenTable()
    return ServiceState(
        graph=graph, scores=scores, params=config.params, store=store, tokens=tokens
    )


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

_COMMANDS = {
    "ingest": cmd_ingest,
    "compute-work-scores": cmd_compute_work_scores,
    "export-scores": cmd_compute_work_scores,
    "compute-researcher": cmd_compute_researcher,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SourceFormatError, ArtifactError, StoreError, ConfigError,
            ValidationError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TrackRecordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
