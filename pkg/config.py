# config.py
import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    """
    Run-wide defaults. Every field can be overridden from the environment
    (or a .env file in the working directory) and then by CLI flags.
    """

    seed: int = 0
    budget: int = 10_000_000
    fourier_budget: int = 500_000_000
    concurrency: int = 1
    max_dimension: int = 5
    qmc_points: int = 32
    sampled_grid: int = 64

    def override(self, **kwargs) -> "Settings":
        """A copy with the non-None keyword values applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


_ENVIRONMENT = {
    "seed": "NEWTON_SEED",
    "budget": "NEWTON_BUDGET",
    "fourier_budget": "NEWTON_FOURIER_BUDGET",
    "concurrency": "NEWTON_CONCURRENCY",
    "max_dimension": "NEWTON_MAX_DIMENSION",
    "qmc_points": "NEWTON_QMC_POINTS",
    "sampled_grid": "NEWTON_SAMPLED_GRID",
}


def _int_from_env(name: str) -> int:
    value = os.environ.get(name)
    try:
        return int(value.replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}.")


def load_settings(dotenv_path: str = None) -> Settings:
    """
    Loads settings from environment variables.

    Args:
        dotenv_path (str, optional): A .env file to load first. Defaults to
            the one in the current working directory, if any.

    Returns:
        Settings: Defaults with every NEWTON_* variable applied.

    Raises:
        ValueError: If a variable is set but is not an integer.
    """
    load_dotenv(dotenv_path or os.path.join(os.getcwd(), ".env"))
    values = {field: _int_from_env(name) for field, name in _ENVIRONMENT.items() if os.environ.get(name)}
    return Settings(**values)
