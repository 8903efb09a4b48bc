from contextlib import contextmanager
from typing import Iterator

import click

from lifeheal.exceptions import LifehealError


@contextmanager
def reported_errors() -> Iterator[None]:
    """Turn a LifehealError into `Error: <detail>` on stderr and the error's exit status."""
    try:
        yield
    except LifehealError as e:
        click.echo(f"Error: {e.detail}", err=True)
        raise click.exceptions.Exit(e.exit_code) from e
