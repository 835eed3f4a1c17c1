"""The forge command line: run experiments, report, validate, simulate."""

from __future__ import annotations

import json
from pathlib import Path

import click

from spellforge.dsl import canonicalize, parse_rule, parse_spell
from spellforge.metrics import ELEMENT_POOL


@click.group()
def main():
    """Natural-language game mechanics toolkit."""


@main.command(name="run")
@click.option("--experiment", type=click.Choice(["nl2dsl", "roundtrip"]), required=True)
@click.option("--plan", "plan_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
def run_cmd(experiment: str, plan_path: str, out_dir: str):
    """Execute an experiment plan; resumes a partial run in OUT."""
    from spellforge.harness import ExperimentPlan, report, run_nl2dsl, run_roundtrip

    plan = ExperimentPlan.load(plan_path)
    if plan.experiment != experiment:
        raise click.ClickException(f"plan file is for {plan.experiment!r}, not {experiment!r}")
    runner = run_nl2dsl if experiment == "nl2dsl" else run_roundtrip
    records = runner(plan, out_dir)
    summary = report(records)
    (Path(out_dir) / "report.json").write_text(json.dumps(summary, indent=1), "utf-8")
    (Path(out_dir) / "report.txt").write_text(summary["text"] + "\n", "utf-8")
    click.echo(f"{len(records)} records in {out_dir}")
    click.echo(summary["text"])


@main.command(name="report")
@click.option("--in", "in_dir", type=click.Path(exists=True), required=True)
def report_cmd(in_dir: str):
    """Summarize the records of a finished (or partial) run."""
    from spellforge.harness import load_records, report

    summary = report(load_records(in_dir))
    click.echo(summary["text"])


@main.command(name="validate")
@click.argument("script_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["spell", "automata", "auto"]), default="auto")
@click.option("--elements", default=",".join(ELEMENT_POOL), show_default=True)
def validate_cmd(script_file: str, kind: str, elements: str):
    """Validate one DSL document and print its repair report."""
    raw = Path(script_file).read_text("utf-8")
    if kind == "auto":
        kind = "automata" if '"behavior"' in raw or "'behavior'" in raw else "spell"
    if kind == "spell":
        script, result = parse_spell(raw, [e for e in elements.split(",") if e])
    else:
        script, result = parse_rule(raw, [])
    click.echo(f"kind: {kind}")
    click.echo(f"outcome: {result.outcome}")
    for violation in result.violations:
        click.echo(f"  violation {violation.path or '<root>'}: {violation.kind} ({violation.detail})")
    for repair in result.repairs:
        click.echo(f"  repair {repair.path or '<root>'}: {repair.action} {repair.before!r} -> {repair.after!r}")
    click.echo(canonicalize(script))


@main.command(name="sim")
@click.option("--rule", "rule_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--ticks", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--width", type=int, default=48, show_default=True)
@click.option("--height", type=int, default=32, show_default=True)
@click.option("--render/--no-render", default=False, help="Print the final grid as ASCII art.")
def sim_cmd(rule_file: str, ticks: int, seed: int, width: int, height: int, render: bool):
    """Install a material rule and run it on a small grid."""
    from spellforge.sandbox import Grid, MaterialRegistry, grid_hash, run

    raw = Path(rule_file).read_text("utf-8")
    rule, result = parse_rule(raw, [])
    if result.outcome == "fizzled":
        raise click.ClickException(f"rule rejected: {[v.detail for v in result.violations]}")
    registry = MaterialRegistry()
    type_id = registry.register(rule)
    grid = Grid(width, height)
    blob = max(2, min(width, height) // 6)
    grid.paint(width // 2, height // 3, type_id, radius=blob)
    start = grid.count_of(type_id)
    reports = run(grid, registry, seed=seed, ticks=ticks)
    click.echo(f"material: {rule.name} (outcome {result.outcome})")
    click.echo(f"cells: {start} painted, {grid.count_of(type_id)} after {ticks} ticks")
    click.echo(f"evaluations: {sum(r.evaluated for r in reports)}, swaps: {sum(r.swaps for r in reports)}")
    click.echo(f"grid hash: {grid_hash(grid):016x}")
    if render:
        chars = {0: ".", type_id: "#"}
        for y in range(height):
            click.echo("".join(chars.get(grid.type_at(x, y), "?") for x in range(width)))


@main.command(name="corpus")
@click.option("--kind", type=click.Choice(["spell", "automata"]), required=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--provider", default="mock", show_default=True, help='"mock" regenerates the builtin corpus deterministically.')
@click.option("--provider-config", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--count", type=int, default=100, show_default=True)
def corpus_cmd(kind: str, out_path: str, provider: str, provider_config: str | None, count: int):
    """Regenerate an input-description corpus."""
    if provider == "mock":
        from spellforge.assets import data_json

        items = data_json(f"corpus_{kind}.json")[:count]
    else:
        from spellforge.harness import resolve_provider
        from spellforge.pipeline import generate

        p = resolve_provider({"name": "live", "provider_id": provider}, provider_config)
        prompt = (
            f"Generate {count} unique, creative one-line task descriptions for a "
            f"{'magical spell' if kind == 'spell' else 'falling-sand material'} design tool. "
            "One description per line, no numbering."
        )
        response = generate(p, prompt)
        lines = [line.strip() for line in response.raw_text.splitlines() if line.strip()]
        items = [{"id": f"{kind}-{i:03d}", "text": text} for i, text in enumerate(lines[:count])]
    Path(out_path).write_text(json.dumps(items, indent=1), "utf-8")
    click.echo(f"{len(items)} descriptions -> {out_path}")


@main.command(name="serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8765, show_default=True)
@click.option("--provider-config", type=click.Path(exists=True, dir_okay=False), default=None)
def serve_cmd(host: str, port: int, provider_config: str | None):
    """Serve the HTTP/stream gateway used by the web sandbox."""
    import uvicorn

    from spellforge.service import create_app

    uvicorn.run(create_app(provider_config_path=provider_config), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
