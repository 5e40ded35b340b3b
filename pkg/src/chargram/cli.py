"""Operator command line: build artifacts, query them, evaluate, serve."""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import artifacts as art
from . import evaluation
from .errors import ChargramError

DEFAULT_ARTIFACTS = "./artifacts"


def _load(directory: str) -> art.Artifacts:
    try:
        return art.load_artifacts(directory)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc


def _emit(data, as_json: bool, text_lines) -> None:
    if as_json:
        click.echo(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
def main():
    """Character n-gram search and text mining engine."""


@main.group()
def index():
    """Build and inspect the index artifacts."""


@index.command("build")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--k", default=15, show_default=True, help="suffix truncation depth")
def index_build(corpus_dir, out_dir, k):
    """Ingest a corpus directory and write the full artifact set."""
    started = time.time()
    try:
        built = art.build_artifacts(corpus_dir, out_dir, k=k)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc
    stats = built.stats()
    click.echo(
        f"indexed {stats['documents']} documents "
        f"({stats['total_unigrams']} characters, alphabet {stats['alphabet_size']}) "
        f"in {time.time() - started:.1f}s -> {out_dir}"
    )
    for err in built.corpus.errors:
        click.echo(f"warning: {err}", err=True)


@index.command("stats")
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def index_stats(directory, as_json):
    """Print index statistics."""
    stats = _load(directory).stats()
    _emit(stats, as_json, [f"{key}: {value}" for key, value in stats.items()])


@main.command()
@click.option("--q", "query", required=True)
@click.option("--limit", default=10, show_default=True)
@click.option("--min-match-len", default=3, show_default=True)
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def search(query, limit, min_match_len, directory, as_json):
    """Search the corpus."""
    loaded = _load(directory)
    try:
        results = loaded.search(query, limit=limit, min_match_len=min_match_len)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc
    data = [
        {
            "doc_id": r.doc_id,
            "title": r.title,
            "exact": r.exact,
            "matched_len": r.matched_len,
            "log_score": r.log_score,
            "snippets": [{"text": s.text, "start": s.start, "score": s.score} for s in r.snippets],
        }
        for r in results
    ]
    lines = []
    for i, r in enumerate(results, start=1):
        kind = "exact" if r.exact else f"partial({r.matched_len})"
        lines.append(f"{i:2d}. [{kind}] {r.title}  score={r.log_score:.3f}  ({r.doc_id})")
        for s in r.snippets[:1]:
            lines.append(f"      …{s.text}…")
    _emit(data, as_json, lines or ["no results"])


@main.command()
@click.option("--q", "query", required=True)
@click.option("--limit", default=10, show_default=True)
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def related(query, limit, directory, as_json):
    """Related queries for a search term."""
    loaded = _load(directory)
    try:
        results = loaded.related_queries(query, limit=limit)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc
    data = [{"text": r.text, "edit_op": r.edit_op, "log_prob": r.log_prob} for r in results]
    _emit(data, as_json, [f"{r.text}  ({r.edit_op}, {r.log_prob:.3f})" for r in results] or ["none"])


@main.command()
@click.option("--doc", "doc_id", required=True)
@click.option("--limit", default=20, show_default=True)
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def similar(doc_id, limit, directory, as_json):
    """Documents most similar to the given one."""
    loaded = _load(directory)
    try:
        ranked = loaded.related_documents(doc_id, limit=limit)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc
    data = [{"doc_id": d, "similarity": s} for d, s in ranked]
    lines = [f"{s:.4f}  {loaded.corpus.get_document(d).title}  ({d})" for d, s in ranked]
    _emit(data, as_json, lines or ["none"])


@main.command()
@click.option("--a", "doc_a", required=True)
@click.option("--b", "doc_b", required=True)
@click.option("--delta", default=0.2, show_default=True)
@click.option("--min-len", default=3, show_default=True)
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def compare(doc_a, doc_b, delta, min_len, directory, as_json):
    """Shared sequences between two documents."""
    loaded = _load(directory)
    try:
        sequences = loaded.compare(doc_a, doc_b, delta=delta, min_len=min_len)
    except ChargramError as exc:
        raise click.ClickException(str(exc)) from exc
    text_a = loaded.corpus.get_document(doc_a).text
    data = [
        {
            "a_start": s.a_start,
            "a_len": s.a_len,
            "b_start": s.b_start,
            "b_len": s.b_len,
            "edit_distance": s.edit_distance,
            "seed": s.seed,
        }
        for s in sequences
    ]
    lines = [
        f"ed={s.edit_distance:2d}  a[{s.a_start}:{s.a_start + s.a_len}] ~ "
        f"b[{s.b_start}:{s.b_start + s.b_len}]  {text_a[s.a_start : s.a_start + min(s.a_len, 60)]!r}"
        for s in sequences
    ]
    _emit(data, as_json, lines or ["no shared sequences"])


@main.command()
@click.option("--gazetteer", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def entities(gazetteer, directory, as_json):
    """Extract gazetteer entities and store them with the artifacts."""
    loaded = _load(directory)
    occurrences = art.write_entities(loaded, gazetteer)
    data = [
        {"entity": o.entity, "type": o.entity_type, "doc_id": o.doc_id, "positions": o.positions}
        for o in occurrences
    ]
    lines = [f"{o.entity} [{o.entity_type}] in {o.doc_id} at {o.positions}" for o in occurrences]
    _emit(data, as_json, lines or ["no matches"])
    if not as_json:
        click.echo(f"stored {len(occurrences)} entity records")


@main.group(name="eval")
def eval_group():
    """Ranking evaluation reports."""


@eval_group.command("report")
@click.option("--judgments", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--system", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--b", "--B", "b", default=1000, show_default=True, help="bootstrap resamples")
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def eval_report(judgments, system, b, seed, as_json):
    """Correlation and NDCG report with bootstrap confidence intervals."""
    try:
        judged = evaluation.read_judgments_csv(judgments)
        rankings = evaluation.read_rankings_csv(system)
        report = evaluation.display_bias_report(judged, rankings)
    except (ChargramError, KeyError, ValueError) as exc:
        raise click.ClickException(f"could not build report: {exc}") from exc
    intervals = {}
    for measure in ("footrule_system", "m_system", "ndcg_log2_system", "ndcg_position_system"):
        values = [row[measure] for row in report["per_query"]]
        intervals[measure] = evaluation.bootstrap_ci(values, b=b, seed=seed)
    report["bootstrap"] = {"b": b, "seed": seed, "by_query": {k: list(v) for k, v in intervals.items()}}
    lines = ["per-query averages (system vs consensus):"]
    for measure, (lo, hi) in intervals.items():
        avg = report["averages"]["by_query"][measure]
        lines.append(f"  {measure:24s} {avg:.3f}  [{lo:.3f} - {hi:.3f}]")
    lines.append("per-user consensus agreement:")
    for row in report["per_user"]:
        lines.append(
            f"  {row['user_id']:12s} footrule={row['footrule_consensus']:.3f} m={row['m_consensus']:.3f}"
        )
    _emit(report, as_json, lines)


@main.command()
@click.option("--artifacts", "directory", default=DEFAULT_ARTIFACTS, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False), help="built web UI directory")
def serve(directory, host, port, ui_dir):
    """Serve the JSON API (and the web UI, when built)."""
    import uvicorn

    from .service import create_app

    loaded = _load(directory)
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent.parent / "frontend" / "dist"
        ui_dir = str(bundled) if bundled.is_dir() else None
    app = create_app(loaded, ui_dir=ui_dir)
    click.echo(f"serving on http://{host}:{port}/ (api at /api/v1)")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
