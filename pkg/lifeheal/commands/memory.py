from pathlib import Path

import click

from lifeheal.commands.common import reported_errors
from lifeheal.services.runner_services import memory_inspect, reset_memory


@click.command("inspect-memory")
@click.argument("memory_path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Print the canonical JSON document.")
def inspect_memory_command(memory_path: Path, as_json: bool):
    """List the safe (MS) and failing (MF) abstract states of a memory file."""
    with reported_errors():
        listing = memory_inspect(memory_path, machine=as_json)
    click.echo(listing, nl=False)


@click.command("reset-memory")
@click.argument("memory_path", type=click.Path(dir_okay=False, path_type=Path))
def reset_memory_command(memory_path: Path):
    """Overwrite a memory file with an empty memory."""
    with reported_errors():
        reset_memory(memory_path)
    click.echo(f"Memory reset: {memory_path}")
