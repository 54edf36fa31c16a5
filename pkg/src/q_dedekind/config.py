"""
Configuration management for the q-Dedekind audit tools
"""

import os
from dataclasses import dataclass, field
from pathlib import Path

from .exact_arith import is_prime

OUTPUT_DIR_ENV = "Q_DEDEKIND_OUTPUT_DIR"


@dataclass
class Config:
    """Configuration settings for computations and audit runs"""

    # p-adic defaults
    default_prime: int = 3
    precision: int = 8

    # Euler-number cache
    cache_enabled: bool = True
    cache_max_size: int = 4096

    # Desk-scale cap on Riemann sums (number of points p^N)
    max_points: int = 10**6

    # Sweep execution
    parallelism: int = 1

    # Reports
    output_dir: Path = field(default_factory=lambda: Path("reports"))
    output_format: str = "json"

    # vp the oracle differences must reach at the deepest level
    oracle_threshold: int = 4

    # Logging
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @classmethod
    def from_env(cls) -> "Config":
        """Create configuration, honouring only the output directory override"""
        output_dir = os.getenv(OUTPUT_DIR_ENV)
        if output_dir:
            return cls(output_dir=Path(output_dir))
        return cls()

    def validate(self) -> None:
        """Validate configuration settings"""
        if not is_prime(self.default_prime) or self.default_prime < 3:
            raise ValueError("default_prime must be an odd prime")
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if self.cache_max_size < 1:
            raise ValueError("cache_max_size must be positive")
        if self.max_points < 1:
            raise ValueError("max_points must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be 'json' or 'csv'")
        if self.oracle_threshold < 1:
            raise ValueError("oracle_threshold must be positive")
        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError("log_level must be a standard logging level name")
