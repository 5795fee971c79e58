"""Scan configuration: environment defaults, command-line overrides."""

import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from sympy import isprime

from ..errors import ConfigError

load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class ScanConfig:
    p: int = 3
    disc_min: int = -1000
    disc_max: int = -3
    per_entry_time_limit_seconds: float = 300.0
    output_path: str = "zassenhaus.jsonl"
    provider_path: Optional[str] = None
    grh_flag: bool = True
    parallelism: int = 1
    seed: int = 0
    record_timings: bool = False

    @classmethod
    def from_env(cls, **overrides) -> "ScanConfig":
        """MASSEY_* environment values, then any non-None override."""
        try:
            config = cls(
                p=int(os.getenv("MASSEY_PRIME", "3")),
                per_entry_time_limit_seconds=float(os.getenv("MASSEY_TIME_LIMIT", "300")),
                output_path=os.getenv("MASSEY_OUTPUT", "zassenhaus.jsonl"),
                provider_path=os.getenv("MASSEY_PROVIDER") or None,
                grh_flag=_env_bool("MASSEY_GRH", "1"),
                parallelism=int(os.getenv("MASSEY_JOBS", "1")),
                seed=int(os.getenv("MASSEY_SEED", "0")),
                record_timings=_env_bool("MASSEY_TIMINGS", "0"),
            )
        except ValueError as e:
            raise ConfigError(f"malformed MASSEY_* environment value: {e}")
        config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
        config.validate()
        return config

    def validate(self):
        """Raises ConfigError on the first violated constraint."""
        if self.p == 2 or not isprime(self.p):
            raise ConfigError(f"p={self.p} is not an odd prime")
        if not self.disc_min <= self.disc_max < 0:
            raise ConfigError(f"expected disc_min <= disc_max < 0, got [{self.disc_min}, {self.disc_max}]")
        if self.per_entry_time_limit_seconds <= 0:
            raise ConfigError("time limit must be positive")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if self.provider_path and not os.path.exists(self.provider_path):
            raise ConfigError(f"provider file {self.provider_path} does not exist")
        if not self.output_path:
            raise ConfigError("no output path")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
