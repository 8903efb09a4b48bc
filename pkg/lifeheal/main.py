import logging

import click

from lifeheal.commands import memory, oracle, run
from lifeheal.config.settings import settings

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Logging level (defaults to LIFEHEAL_LOG_LEVEL).")
def cli(log_level: str | None):
    """Simulate component stop-start events and heal the data they lose."""
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


cli.add_command(run.run_command)
cli.add_command(memory.inspect_memory_command)
cli.add_command(memory.reset_memory_command)
cli.add_command(oracle.oracle_command)
