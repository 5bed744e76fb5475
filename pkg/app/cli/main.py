import asyncio
import json
import logging
import os
from typing import Any, List, NoReturn, Optional

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from app.core.config import settings
from app.core.limits import ResourceLimitError
from app.models.schemas import (
    METHOD_ALIASES,
    ClassifyReport,
    ExponentVector,
    GeneralReport,
    Method,
    MethodOutcome,
    PairExponents,
    PipelineReport,
    RunConfig,
)
from app.services.conditions import BUNDLED_CONDITIONS, ConditionEngine, ConditionTableError

app = typer.Typer(help="Decide when tetrahedral curves are arithmetically Cohen-Macaulay.")
console = Console()
err_console = Console(stderr=True)

USAGE = "expected --p as six comma-separated nonnegative integers, e.g. --p 2,1,1,1,1,2"
CONFIG_PATH = "acm_conditions.yaml"


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="DEBUG, INFO, WARNING or ERROR (default from ACMTETRA_LOG_LEVEL)"
    ),
):
    """
    Classify tetrahedral curves (p1..p6) with five independent deciders.
    """
    level = (log_level or settings.LOG_LEVEL).upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        _fail(f"Unknown log level: {level}")
    _configure_logging(level)
    try:
        settings.validate()
    except ValueError as e:
        _fail(f"Configuration error: {e}")


def _fail(message: str) -> NoReturn:
    err_console.print(f"[red]{message}[/red]")
    raise typer.Exit(code=1)


def _parse_vector(text: Optional[str]) -> ExponentVector:
    if not text:
        _fail(f"Missing vector: {USAGE}")
    try:
        return ExponentVector.parse(text)
    except ValueError as e:
        _fail(f"Invalid vector: {e}\nUsage: {USAGE}")


def _parse_methods(names: List[str]) -> List[Method]:
    methods: List[Method] = []
    for name in names:
        if name == "all":
            candidates = list(Method)
        elif name in METHOD_ALIASES:
            candidates = [METHOD_ALIASES[name]]
        else:
            try:
                candidates = [Method(name)]
            except ValueError:
                _fail(f"Unknown method '{name}'. Choose from: {', '.join(METHOD_ALIASES)}, all")
        methods.extend(m for m in candidates if m not in methods)
    return methods


def _run_config(**fields: Any) -> RunConfig:
    try:
        cfg = RunConfig(**{k: v for k, v in fields.items() if v is not None})
    except ValidationError as e:
        _fail(f"Invalid options: {e}")
    if cfg.conditions_path and not os.path.exists(cfg.conditions_path):
        _fail(f"Condition table not found: {cfg.conditions_path}")
    return cfg


def _engine(cfg: RunConfig) -> ConditionEngine:
    try:
        return ConditionEngine(cfg.conditions_path)
    except ConditionTableError as e:
        _fail(str(e))


def _emit(text: str, out: Optional[str]) -> None:
    """Data goes to --out or stdout, never through the Rich console."""
    if out:
        with open(out, "w") as f:
            f.write(text)
        err_console.print(f"[green]Written to {os.path.abspath(out)}[/green]")
    else:
        typer.echo(text, nl=not text.endswith("\n"))


def _dump(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def _describe(outcome: MethodOutcome) -> str:
    if outcome.skipped:
        return f"skipped: {outcome.skipped}"
    if outcome.error:
        return f"error: {outcome.error}"
    verdict = outcome.verdict
    assert verdict is not None
    parts = []
    if verdict.condition:
        text = f"condition ({verdict.condition.condition})"
        if verdict.condition.inequality:
            text += f" {verdict.condition.inequality}"
        if verdict.condition.epsilon is not None:
            text += f", epsilon={verdict.condition.epsilon}"
        parts.append(text)
    if verdict.witness:
        parts.append(f"witness {verdict.witness.as_tuple()}")
    if verdict.graph_certificate:
        cert = verdict.graph_certificate
        if cert.chordal:
            parts.append("elimination order " + " ".join(cert.elimination_order or []))
        else:
            parts.append("chordless cycle " + " ".join(cert.chordless_cycle or []))
    if verdict.betti is not None:
        parts.append(f"{sum(verdict.betti.values())} Betti numbers")
    if verdict.normalization != "identity":
        parts.append(f"normalized by {verdict.normalization}")
    return "; ".join(parts) or "-"


def _verdict_cell(outcome: MethodOutcome) -> str:
    if outcome.verdict is None:
        return "[yellow]n/a[/yellow]"
    return "[green]ACM[/green]" if outcome.verdict.acm else "[red]not ACM[/red]"


@app.command()
def init(
    force: bool = typer.Option(False, "--force", "-f", help="Overwrite an existing table"),
):
    """
    Scaffold an editable copy of the closed-form condition table.
    """
    if os.path.exists(CONFIG_PATH) and not force:
        console.print(f"[yellow]Condition table already found at {CONFIG_PATH}[/yellow]")
        if not typer.confirm("Do you want to overwrite it?"):
            console.print("[dim]Aborted.[/dim]")
            raise typer.Exit()

    with open(BUNDLED_CONDITIONS) as src, open(CONFIG_PATH, "w") as dst:
        dst.write(src.read())

    console.print(f"[bold green]Condition table created at {CONFIG_PATH}[/bold green]")
    console.print(f"Try it with `acmtetra crosscheck --max 3 --conditions {CONFIG_PATH}`.")


@app.command()
def classify(
    p: Optional[str] = typer.Option(None, "--p", help="Exponent vector p1,...,p6"),
    method: List[str] = typer.Option(
        ["all"], "--method", "-m", help="closed|witness|chordal|betti|reisner|all (repeatable)"
    ),
    output_format: str = typer.Option("text", "--format", help="text|json"),
    explain: bool = typer.Option(False, "--explain", help="Show the condition trace and flags"),
    conditions: Optional[str] = typer.Option(None, "--conditions", help="Custom condition table"),
    homology_max_vertices: Optional[int] = typer.Option(None, "--homology-max-vertices"),
    betti_max_vertices: Optional[int] = typer.Option(None, "--betti-max-vertices"),
    transversal_cap: Optional[int] = typer.Option(None, "--transversal-cap"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the report to a file"),
):
    """
    Classify one curve with the selected methods. Exit 2 if they disagree.
    """
    from app.services.deciders import agree, decide_all
    from app.services.numeric_classifier import normalize, sufficient_condition_flags

    vector = _parse_vector(p)
    methods = _parse_methods(method)
    if output_format not in ("text", "json"):
        _fail(f"Unsupported format for classify: {output_format}")
    cfg = _run_config(
        methods=methods,
        output_format=output_format,
        conditions_path=conditions,
        homology_max_vertices=homology_max_vertices,
        betti_max_vertices=betti_max_vertices,
        transversal_cap=transversal_cap,
        out=out,
    )
    engine = _engine(cfg)

    normalized, tag = normalize(vector)
    outcomes = decide_all(vector, cfg.methods, cfg, engine)
    report = ClassifyReport(
        p=vector.p,
        normalized=normalized.p,
        normalization=tag,
        outcomes=outcomes,
        agree=agree(outcomes),
        trace=engine.trace(normalized) if explain else None,
        flags=sufficient_condition_flags(normalized) if explain else None,
    )

    if cfg.output_format == "json":
        _emit(_dump(report), cfg.out)
    else:
        _print_classify(report)

    if not report.agree:
        err_console.print(f"[bold red]Methods disagree on ({vector}).[/bold red]")
        raise typer.Exit(code=2)


def _print_classify(report: ClassifyReport) -> None:
    from app.services.homology_oracle import BettiTable

    vector = ",".join(map(str, report.p))
    title = f"Curve ({vector})"
    if report.normalization != "identity":
        title += f"  normalized to ({','.join(map(str, report.normalized))}) by {report.normalization}"
    table = Table(title=title)
    table.add_column("Method", style="cyan")
    table.add_column("Verdict")
    table.add_column("Certificate")
    for outcome in report.outcomes:
        table.add_row(outcome.method.value, _verdict_cell(outcome), _describe(outcome))
    console.print(table)

    for outcome in report.outcomes:
        if outcome.verdict and outcome.verdict.betti:
            grid = BettiTable.from_json_map(outcome.verdict.betti).render_grid()
            console.print(Panel(grid, title="Betti table of the dual", border_style="blue"))

    if report.trace is not None:
        console.print("\n[bold]Condition trace (normalized vector):[/bold]")
        for res in report.trace:
            if res.matched:
                console.print(f"[green][MATCH][/green] {res.rule_name}")
            else:
                console.print(f"[dim][SKIP]  {res.rule_name}[/dim]")
    if report.flags is not None:
        console.print("\n[bold]Sufficient-condition flags:[/bold]")
        for name, value in report.flags.items():
            console.print(f"  {name}: {value}")


@app.command()
def pipeline(
    p: Optional[str] = typer.Option(None, "--p", help="Exponent vector p1,...,p6"),
    output_format: str = typer.Option("text", "--format", help="text|json"),
    transversal_cap: Optional[int] = typer.Option(None, "--transversal-cap"),
    cycle_max_vertices: Optional[int] = typer.Option(None, "--cycle-max-vertices"),
    out: Optional[str] = typer.Option(None, "--out"),
):
    """
    Print every stage: I, its polarization J, the dual of J, the graph G,
    its complement and induced cycles, the chordality certificate and the verdict.
    """
    from app.services.alexander import alexander_dual
    from app.services.graphs import complement, graph_from_ideal, induced_cycles, is_chordal
    from app.services.ideal_core import render_ideal, tetrahedral_ideal
    from app.services.polarization import polarize_ideal

    if output_format not in ("text", "json"):
        _fail(f"Unsupported format for pipeline: {output_format}")
    vector = _parse_vector(p)
    cfg = _run_config(
        methods=[Method.CHORDAL],
        transversal_cap=transversal_cap,
        cycle_max_vertices=cycle_max_vertices,
        out=out,
    )
    try:
        ideal = tetrahedral_ideal(vector)
        polarized = polarize_ideal(ideal)
        dual = alexander_dual(polarized, cap=cfg.transversal_cap)
    except ResourceLimitError as e:
        _fail(str(e))
    graph = graph_from_ideal(dual)
    co_graph = complement(graph)
    certificate = is_chordal(co_graph)
    try:
        cycles: Optional[List[List[str]]] = [
            co_graph.names(cycle) for cycle in induced_cycles(co_graph, 4, cfg.cycle_max_vertices)
        ]
    except ResourceLimitError:
        cycles = None
    report = PipelineReport(
        p=vector.p,
        ideal=render_ideal(ideal),
        polarization=render_ideal(polarized),
        dual=render_ideal(dual),
        graph_vertices=graph.names(graph.vertices),
        graph_edges=[(graph.name(u), graph.name(v)) for u, v in graph.edge_list()],
        complement_edges=[(graph.name(u), graph.name(v)) for u, v in co_graph.edge_list()],
        certificate=certificate,
        induced_cycles=cycles,
        acm=certificate.chordal,
    )

    if output_format == "json":
        _emit(_dump(report), cfg.out)
        return

    lines = [
        f"curve:        ({vector})",
        f"ideal I:      {report.ideal}",
        f"polarization: {report.polarization}",
        f"dual:         {report.dual}",
        "graph G:",
        *(f"  {line}" for line in graph.render().splitlines()),
        "complement:",
        *(f"  {line}" for line in co_graph.render().splitlines()),
    ]
    if cycles is None:
        lines.append(f"induced cycles: over the cap of {cfg.cycle_max_vertices} vertices")
    else:
        lines.append(f"induced cycles: {len(cycles)}")
        lines.extend("  " + " - ".join(cycle) for cycle in cycles)
    if certificate.chordal:
        order = " ".join(certificate.elimination_order or [])
        lines.append(f"certificate:  chordal, elimination order {order}")
    else:
        cycle = " ".join(certificate.chordless_cycle or [])
        lines.append(f"certificate:  not chordal, chordless cycle {cycle}")
    lines.append(f"verdict:      {'ACM' if report.acm else 'not ACM'}")
    _emit("\n".join(lines) + "\n", cfg.out)


@app.command(name="enumerate")
def enumerate_cmd(
    max_value: int = typer.Option(..., "--max", help="Largest exponent to enumerate"),
    method: str = typer.Option("closed", "--method", "-m", help="closed|witness|chordal|betti|reisner"),
    output_format: str = typer.Option("text", "--format", help="text|json|csv|html"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes"),
    conditions: Optional[str] = typer.Option(None, "--conditions"),
    homology_max_vertices: Optional[int] = typer.Option(None, "--homology-max-vertices"),
    betti_max_vertices: Optional[int] = typer.Option(None, "--betti-max-vertices"),
    transversal_cap: Optional[int] = typer.Option(None, "--transversal-cap"),
    out: Optional[str] = typer.Option(None, "--out"),
):
    """
    One row per vector in {0..max}^6, in lexicographic order.
    """
    from app.services.census import enumerate_rows, rows_to_csv
    from app.services.reporter import Reporter

    if max_value < 0:
        _fail("--max must be nonnegative")
    methods = _parse_methods([method])
    if len(methods) != 1:
        _fail("enumerate takes exactly one method")
    cfg = _run_config(
        methods=methods,
        output_format=output_format,
        jobs=jobs,
        conditions_path=conditions,
        homology_max_vertices=homology_max_vertices,
        betti_max_vertices=betti_max_vertices,
        transversal_cap=transversal_cap,
        out=out,
    )
    _engine(cfg)

    try:
        rows = asyncio.run(enumerate_rows(max_value, methods[0], cfg))
    except ResourceLimitError as e:
        _fail(f"{e}. Raise the cap or choose another method.")

    if cfg.output_format == "csv":
        _emit(rows_to_csv(rows), cfg.out)
    elif cfg.output_format == "json":
        _emit(json.dumps([row.model_dump(mode="json") for row in rows], indent=2), cfg.out)
    elif cfg.output_format == "html":
        path = Reporter().generate_census(rows, max_value, output_path=cfg.out or "census.html")
        console.print(f"[bold green]Census written: {path}[/bold green]")
    else:
        acm = sum(1 for row in rows if row.acm)
        table = Table(title=f"{len(rows)} vectors with entries <= {max_value} ({methods[0].value})")
        for column in ("p", "ACM", "condition", "witness"):
            table.add_column(column)
        for row in rows:
            table.add_row(
                ",".join(map(str, row.p)),
                "yes" if row.acm else "no",
                row.condition or "",
                str(row.witness.as_tuple()) if row.witness else "",
            )
        console.print(table)
        console.print(f"{acm} ACM, {len(rows) - acm} not ACM")


@app.command()
def crosscheck(
    max_value: int = typer.Option(..., "--max", help="Largest exponent to check"),
    with_homology: bool = typer.Option(False, "--with-homology", help="Add the Betti and Reisner oracles"),
    output_format: str = typer.Option("text", "--format", help="text|json|html"),
    jobs: Optional[int] = typer.Option(None, "--jobs"),
    conditions: Optional[str] = typer.Option(None, "--conditions"),
    homology_max_vertices: Optional[int] = typer.Option(None, "--homology-max-vertices"),
    betti_max_vertices: Optional[int] = typer.Option(None, "--betti-max-vertices"),
    transversal_cap: Optional[int] = typer.Option(None, "--transversal-cap"),
    out: Optional[str] = typer.Option(None, "--out"),
):
    """
    Compare the deciders on every vector with entries <= max. Exit 2 on any discrepancy.
    """
    from app.services.census import HOMOLOGY_METHODS, NUMERIC_METHODS
    from app.services.census import crosscheck as run_crosscheck
    from app.services.reporter import Reporter

    if max_value < 0:
        _fail("--max must be nonnegative")
    if output_format == "csv":
        _fail("crosscheck reports as text, json or html")
    cfg = _run_config(
        methods=NUMERIC_METHODS + (HOMOLOGY_METHODS if with_homology else []),
        output_format=output_format,
        jobs=jobs,
        conditions_path=conditions,
        homology_max_vertices=homology_max_vertices,
        betti_max_vertices=betti_max_vertices,
        transversal_cap=transversal_cap,
        out=out,
    )
    _engine(cfg)

    with err_console.status(f"Cross-checking {(max_value + 1) ** 6} vectors..."):
        report = asyncio.run(run_crosscheck(max_value, with_homology, cfg))

    if cfg.output_format == "json":
        _emit(_dump(report), cfg.out)
    elif cfg.output_format == "html":
        path = Reporter().generate_crosscheck(report, output_path=cfg.out or "crosscheck.html")
        console.print(f"[bold green]Cross-check report written: {path}[/bold green]")
    else:
        console.print(
            f"{report.total} vectors, {report.acm_count} ACM, "
            f"methods: {', '.join(m.value for m in report.methods)}"
        )
        for name, count in report.skipped.items():
            console.print(f"[yellow]{name} skipped on {count} vectors (resource limits)[/yellow]")
        if report.ok:
            console.print("[bold green]0 discrepancies[/bold green]")
        for d in report.discrepancies:
            console.print(f"[red]({','.join(map(str, d.p))}): {d.verdicts} {d.errors}[/red]")

    if not report.ok:
        err_console.print(f"[bold red]{len(report.discrepancies)} discrepancies found.[/bold red]")
        raise typer.Exit(code=2)


@app.command()
def general(
    pairs_file: str = typer.Argument(..., help='JSON file {"n": int, "p": [[...], ...]}'),
    method: str = typer.Option("chordal", "--method", "-m", help="chordal|closed|witness"),
    output_format: str = typer.Option("text", "--format", help="text|json"),
    out: Optional[str] = typer.Option(None, "--out"),
):
    """
    Decide Cohen-Macaulayness of any unmixed height-two monomial ideal given by its pair exponents.
    """
    from app.services.alexander import dual_generators_direct
    from app.services.graphs import acm_via_chordality
    from app.services.ideal_core import render_ideal
    from app.services.numeric_classifier import classify_closed_form, classify_witness

    if output_format not in ("text", "json"):
        _fail(f"Unsupported format for general: {output_format}")
    chosen = _parse_methods([method])[0]
    try:
        with open(pairs_file) as f:
            pairs = PairExponents.model_validate(json.load(f))
    except FileNotFoundError:
        _fail(f"File not found: {pairs_file}")
    except json.JSONDecodeError as e:
        _fail(f"Malformed JSON in {pairs_file}: {e}")
    except ValidationError as e:
        _fail(f"Invalid pair matrix: {e}")

    if chosen is Method.CHORDAL:
        verdict = acm_via_chordality(pairs)
    elif chosen in (Method.CLOSED_FORM, Method.WITNESS):
        if pairs.n != 4:
            _fail(f"The {chosen.value} method needs n = 4 (a tetrahedral curve); got n = {pairs.n}.")
        vector = ExponentVector.of(*(power for _, _, power in pairs.pairs()))
        verdict = classify_closed_form(vector) if chosen is Method.CLOSED_FORM else classify_witness(vector)
    else:
        _fail(f"general supports chordal, closed and witness, not {chosen.value}")

    report = GeneralReport(n=pairs.n, dual=render_ideal(dual_generators_direct(pairs)), verdict=verdict)
    if output_format == "json":
        _emit(_dump(report), out)
        return
    outcome = MethodOutcome(method=chosen, verdict=verdict)
    console.print(f"n = {pairs.n}, dual: {report.dual}")
    console.print(f"{chosen.value}: {_verdict_cell(outcome)}  ({_describe(outcome)})")


if __name__ == "__main__":
    app()
