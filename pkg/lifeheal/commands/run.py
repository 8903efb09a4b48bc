from pathlib import Path

import click

from lifeheal.commands.common import reported_errors
from lifeheal.config.settings import settings
from lifeheal.schemas.report import Report
from lifeheal.services.runner_services import RunOptions, exit_status, run
from lifeheal.services.scenario_services import load_scenario


def echo_summary(report: Report) -> None:
    totals = report.totals
    click.echo(
        f"{totals.events} events: {totals.full_snapshots} full snapshots, {totals.selective_saves} selective saves, "
        f"{totals.skips} skips; {totals.losses_detected} lost, {totals.losses_healed} healed, "
        f"{totals.unhealed_losses} unhealed"
        + (f", {totals.losses_missed} missed" if totals.losses_missed is not None else "")
    )


@click.command("run")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Scenario file to execute.")
@click.option("--memory", "memory_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Healer memory file, loaded before and written after the run.")
@click.option("--no-healer", is_flag=True, help="Detect losses only, without healing.")
@click.option("--oracle-check", is_flag=True, help="Compare every event against oracle ground truth.")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Where the JSON report is written.")
@click.option("--snapshot-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory for per-event snapshot files.")
def run_command(
    scenario_path: Path,
    memory_path: Path | None,
    no_healer: bool,
    oracle_check: bool,
    report_path: Path,
    snapshot_dir: Path | None,
):
    """
    Run a scenario with or without the healer.

    Exits 1 when a healer run leaves a loss unhealed.
    """
    with reported_errors():
        scenario = load_scenario(scenario_path)
        options = RunOptions(
            healer=not no_healer,
            memory_path=memory_path or settings.memory_path,
            oracle_check=oracle_check,
            report_path=report_path,
            snapshot_dir=snapshot_dir or settings.snapshot_dir,
        )
        report = run(scenario, options)
    echo_summary(report)
    raise click.exceptions.Exit(exit_status(report))
