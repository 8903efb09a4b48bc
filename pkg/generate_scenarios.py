from pathlib import Path

import click

from lifeheal.models.oracle import GeneratorLimits
from lifeheal.services.oracle_services import generate_scenario
from lifeheal.storage.documents import write_json


def write_scenarios(directory: Path, seeds: range, limits: GeneratorLimits) -> list[Path]:
    """
    Generates one scenario file per seed.

    Args:
        directory (Path): Output directory.
        seeds (range): Seeds to generate.
        limits (GeneratorLimits): Size bounds and the adversarial switch.

    Returns:
        list[Path]: The files written.
    """
    prefix = "adversarial" if limits.adversarial else "generated"
    written = []
    for seed in seeds:
        scenario = generate_scenario(seed, limits)
        path = directory / f"{prefix}_{seed:04d}.json"
        write_json(path, scenario.model_dump(mode="json"))
        written.append(path)
    return written


@click.command()
@click.option("--out", "directory", type=click.Path(file_okay=False, path_type=Path), default=Path("generated"))
@click.option("--first-seed", type=int, default=0)
@click.option("--count", type=int, default=20)
@click.option("--adversarial", is_flag=True, help="Hide a value-dependent fault the abstraction cannot see.")
def main(directory: Path, first_seed: int, count: int, adversarial: bool):
    """Write seeded random scenario files for `lifeheal run`."""
    limits = GeneratorLimits(adversarial=adversarial)
    written = write_scenarios(directory, range(first_seed, first_seed + count), limits)
    click.echo(f"Wrote {len(written)} scenarios to {directory}")


if __name__ == "__main__":
    main()
