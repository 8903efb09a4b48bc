from pathlib import Path

import click

from lifeheal.commands.common import reported_errors
from lifeheal.commands.run import echo_summary
from lifeheal.services.runner_services import RunOptions, run
from lifeheal.services.scenario_services import load_scenario


@click.command("oracle")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Scenario file to execute.")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Where the JSON report is written.")
def oracle_command(scenario_path: Path, report_path: Path):
    """Detection-only run annotated with oracle ground truth. Never touches memory."""
    with reported_errors():
        scenario = load_scenario(scenario_path)
        report = run(scenario, RunOptions(healer=False, oracle_check=True, report_path=report_path))
    echo_summary(report)
