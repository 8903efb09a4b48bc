from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    A configuration class for managing simulator settings using Pydantic.

    Attributes:
        memory_path (Path): Default location of the healer memory file.
        snapshot_dir (Path): Directory receiving per-event snapshot files, relative
            to the working directory unless absolute.
        log_level (str): Level applied to the root logger by the CLI.
        max_components (int): Upper bound on components per generated scenario.
        max_variables (int): Upper bound on variables per generated component.
        max_events (int): Upper bound on scripted events per generated scenario.

    Configurations:
        env_prefix (str): Every setting is read from `LIFEHEAL_<NAME>`.
        env_file (str): Specifies the path to the `.env` file for loading environment variables.
    """

    memory_path: Path = Path("healer_memory.json")
    snapshot_dir: Path = Path("snapshots")
    log_level: str = "WARNING"
    max_components: int = 3
    max_variables: int = 6
    max_events: int = 4

    model_config = SettingsConfigDict(env_prefix="LIFEHEAL_", env_file=".env", extra="ignore")


# Initialize the settings object, which will automatically load values from the .env file
settings = Settings()
