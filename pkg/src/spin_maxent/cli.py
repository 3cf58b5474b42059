"""CLI interface for spin-maxent."""

import json
import logging
import sys
from enum import Enum

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from spin_maxent.config import SolverOptions
from spin_maxent.core.obslevel import (
    constraints_from_state,
    level_description,
    named_level,
    registered_levels,
    resolve_level,
)
from spin_maxent.core.solver import reconstruct
from spin_maxent.core.states import BellFamily, ReferenceState, reference_state
from spin_maxent.core.verify import Suite, run_suite
from spin_maxent.exceptions import Infeasible, SpinMaxEntError
from spin_maxent.models.reports import ReconstructionReport, ReconstructionRequest
from spin_maxent.utils.io import (
    build_report,
    constraints_to_request,
    dump_model,
    format_csv,
    parse_grid,
    read_request,
    request_to_constraints,
    write_report,
    write_text,
)
from spin_maxent.utils.obs_parser import format_observable

EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFICATION = 3

app = typer.Typer(
    name="spin-maxent",
    help="Maximum-entropy reconstruction of spin-1/2 density matrices",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)

# typer may run on a vendored click, so the class comes from typer.BadParameter.
UsageError = next(cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "UsageError")


class TableFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


class SchemaKind(str, Enum):
    REQUEST = "request"
    REPORT = "report"


def _configure_logging(verbose: bool) -> None:
    logger = logging.getLogger("spin_maxent")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=err_console, show_path=False))
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False


def _fail(message: str, code: int = EXIT_USAGE) -> None:
    err_console.print(f"[red]ERROR: {escape(message)}[/red]")
    raise typer.Exit(code)


def _error_line(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        return f"Invalid request ({location}): {first['msg']}"
    return str(exc)


@app.command("reconstruct")
def reconstruct_command(
    input_path: str = typer.Argument(..., help="Request JSON file ('-' for stdin)"),
    output_path: str = typer.Argument(..., help="Report JSON file ('-' for stdout)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose output"),
):
    """Reconstruct the maximum-entropy state from measured means."""
    _configure_logging(verbose)
    try:
        request = read_request(input_path)
        c = request_to_constraints(request)
    except OSError as e:
        _fail(f"Cannot read request: {e}")
    except (ValueError, SpinMaxEntError) as e:
        _fail(_error_line(e))

    try:
        result = reconstruct(c, request.options)
    except Infeasible as e:
        _fail(f"Infeasible: {e}", EXIT_INFEASIBLE)
    except SpinMaxEntError as e:
        _fail(f"Reconstruction failed: {e}")

    write_report(build_report(result), output_path)
    if output_path != "-":
        console.print(
            f"[green]Reconstructed {request.n_spins}-spin state[/green] "
            f"(method {result.method}, S = {result.entropy:.10g} nats)"
        )
        console.print(f"   Report: {output_path}")


@app.command()
def expect(
    state: ReferenceState = typer.Option(..., "--state", help="Reference state"),
    level: str = typer.Option(..., "--level", "-l", help="Level key or level file"),
    phi: float = typer.Option(0.0, "--phi", help="Relative phase"),
    theta: float = typer.Option(0.0, "--theta", help="Polar parameter of the single spin"),
    family: BellFamily = typer.Option(BellFamily.PSI, "--family", help="Bell family"),
    output: str = typer.Option("-", "--output", "-o", help="Request JSON file ('-' for stdout)"),
):
    """Print the exact means of a reference state as a reconstruction request."""
    _configure_logging(False)
    try:
        pure = reference_state(state, phi, theta, family)
        c = constraints_from_state(pure.projector(), resolve_level(level, n=pure.n))
    except (ValueError, KeyError, SpinMaxEntError) as e:
        _fail(str(e))
    write_text(dump_model(constraints_to_request(c)), output)


@app.command("entropy-table")
def entropy_table(
    state: ReferenceState = typer.Option(..., "--state", help="Reference state"),
    levels: str = typer.Option(..., "--levels", help="Comma-separated level keys or files"),
    phi_grid: str = typer.Option("0", "--phi-grid", help="start:stop:step or a single phase"),
    theta: float = typer.Option(0.0, "--theta", help="Polar parameter of the single spin"),
    family: BellFamily = typer.Option(BellFamily.PSI, "--family", help="Bell family"),
    fmt: TableFormat = typer.Option(TableFormat.TABLE, "--format", "-f", help="Output format"),
    generic: bool = typer.Option(
        False, "--generic", help="Disable closed forms and use the generic solver"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose output"),
):
    """Reconstruction entropy (nats) per phase and level."""
    _configure_logging(verbose)
    options = SolverOptions(disable_closed_forms=generic)
    keys = [key.strip() for key in levels.split(",") if key.strip()]
    try:
        phis = parse_grid(phi_grid)
        sample = reference_state(state, phis[0], theta, family)
        resolved = [resolve_level(key, n=sample.n) for key in keys]
        rows = []
        for phi in phis:
            rho = reference_state(state, phi, theta, family).projector()
            row = [phi]
            for level in resolved:
                row.append(reconstruct(constraints_from_state(rho, level), options).entropy)
            rows.append(row)
    except Infeasible as e:
        _fail(f"Infeasible: {e}", EXIT_INFEASIBLE)
    except (ValueError, KeyError, SpinMaxEntError) as e:
        _fail(str(e))

    if fmt is TableFormat.CSV:
        typer.echo(format_csv(["phi"] + keys, rows), nl=False)
    elif fmt is TableFormat.JSON:
        payload = [{"phi": row[0], "entropy": dict(zip(keys, row[1:]))} for row in rows]
        typer.echo(json.dumps({"units": "nats", "state": state.value, "rows": payload}, indent=2))
    else:
        table = Table(title=f"Entropy (nats), {state.value}", header_style="bold magenta")
        table.add_column("phi", style="cyan")
        for key in keys:
            table.add_column(key, style="green", justify="right")
        for row in rows:
            table.add_row(f"{row[0]:.4f}", *(f"{value:.6f}" for value in row[1:]))
        console.print(table)


@app.command()
def verify(
    suite: Suite = typer.Option(Suite.ALL, "--suite", "-s", help="Suite to run"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Verbose output"),
):
    """Run a verification suite; exit 3 if any check fails."""
    _configure_logging(verbose)
    console.print(f"[cyan]Running {suite.value} verification...[/cyan]")
    checks = run_suite(suite)

    table = Table(title="Verification", show_header=True, header_style="bold magenta")
    table.add_column("Suite", style="cyan")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Observed", justify="right")
    table.add_column("Expected", justify="right")
    table.add_column("Tolerance", justify="right")
    for check in checks:
        result = "[green]PASS[/]" if check.passed else "[red]FAIL[/]"
        table.add_row(
            check.suite,
            check.name,
            result,
            f"{check.observed:.6e}",
            f"{check.expected:.6e}",
            f"{check.tolerance:.1e}",
        )
    console.print(table)

    failed = [check for check in checks if not check.passed]
    if failed:
        err_console.print(f"[red]ERROR: {len(failed)}/{len(checks)} checks failed[/red]")
        raise typer.Exit(EXIT_VERIFICATION)
    console.print(f"\n[green]All {len(checks)} checks passed![/green]")


@app.command()
def levels():
    """List the registered observation levels."""
    table = Table(title="Observation Levels", show_header=True, header_style="bold magenta")
    table.add_column("Key", style="cyan")
    table.add_column("Spins", justify="right")
    table.add_column("Observables", style="green")
    table.add_column("Description")
    for key in registered_levels():
        level = named_level(key)
        flag = " [yellow](INFERRED)[/yellow]" if level.inferred else ""
        table.add_row(
            key,
            str(level.n),
            ", ".join(format_observable(obs) for obs in level.observables),
            level_description(key) + flag,
        )
    console.print(table)


@app.command()
def schema(kind: SchemaKind = typer.Argument(..., help="request or report")):
    """Print the JSON schema of the request or report format."""
    model = ReconstructionRequest if kind is SchemaKind.REQUEST else ReconstructionReport
    typer.echo(json.dumps(model.model_json_schema(), indent=2))


@app.command()
def version():
    """Show version information."""
    from spin_maxent import __version__

    console.print(f"spin-maxent version {__version__}")


def main() -> None:
    """Console entry point; argument errors exit with the usage code."""
    try:
        code = app(standalone_mode=False)
    except UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except typer.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code or 0)


if __name__ == "__main__":
    main()
