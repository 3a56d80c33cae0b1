import dataclasses
import os
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from src.main.errors import BadParameter

_ENV_PREFIX = "LIEHERM_"


@dataclass(frozen=True)
class EngineConfig:
    # Randomized checks
    seed: int = 0                   # Seed for falsifier samples and metric grids
    trials: int = 32                # Samples drawn by transversality_falsifier

    # Scans
    scan_range: int = 10            # |A|, |C| bound for semidef_scan
    jobs: int = 1                   # Worker processes for scans and multi-scenario runs
    obstruction_bound: int = 1      # Integer combination bound for obstruction_scan candidates

    # Matching
    rescale_magnitudes: Tuple[str, ...] = ("1",)  # Moduli tried by match_up_to_rescaling

    # UX
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "EngineConfig":
        """
        Read LIEHERM_SEED, LIEHERM_TRIALS, LIEHERM_SCAN_RANGE, LIEHERM_JOBS,
        LIEHERM_OBSTRUCTION_BOUND, LIEHERM_RESCALE_MAGNITUDES (comma separated)
        and LIEHERM_LOG_LEVEL. Missing variables keep their defaults.

        Raises:
            BadParameter: if an integer variable does not parse
        """
        environ = os.environ if environ is None else environ
        values = {}
        for f in dataclasses.fields(cls):
            raw = environ.get(_ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.name == "rescale_magnitudes":
                values[f.name] = tuple(part.strip() for part in raw.split(",") if part.strip())
            elif f.name == "log_level":
                values[f.name] = raw.upper()
            else:
                try:
                    values[f.name] = int(raw)
                except ValueError:
                    raise BadParameter(f.name, f"expected an integer, got {raw!r}")
        return cls(**values)

    def with_overrides(self, **overrides) -> "EngineConfig":
        """Copy with the given non-None fields replaced."""
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})
