"""Runtime configuration.

Caps and defaults come from environment variables (optionally loaded from a
``.env`` file). Every capped operation also accepts an explicit ``cap``
argument; ``None`` falls back to the values here.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """Caps and defaults for exhaustive checks."""

    equation_cap: int = 10**8
    monoid_cap: int = 10**4
    oracle_cap: int = 2**20
    fooling_pair_cap: int = 10**6
    pumping_cap: int = 10**5
    seed: int = 0
    log_level: str = "WARNING"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def get_settings() -> Settings:
    """Read settings from the environment.

    Returns:
        Settings with every cap resolved.

    Raises:
        ValueError: If a variable is set but not a non-negative integer.
    """
    defaults = Settings()
    return Settings(
        equation_cap=_int_env("OOO_EQUATION_CAP", defaults.equation_cap),
        monoid_cap=_int_env("OOO_MONOID_CAP", defaults.monoid_cap),
        oracle_cap=_int_env("OOO_ORACLE_CAP", defaults.oracle_cap),
        fooling_pair_cap=_int_env("OOO_FOOLING_PAIR_CAP", defaults.fooling_pair_cap),
        pumping_cap=_int_env("OOO_PUMPING_CAP", defaults.pumping_cap),
        seed=_int_env("OOO_SEED", defaults.seed),
        log_level=os.getenv("OOO_LOG_LEVEL", defaults.log_level).upper(),
    )
