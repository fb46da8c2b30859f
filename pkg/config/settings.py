"""
Configuration management for the heat-conduction solver.

Uses Pydantic Settings for type-safe configuration with environment variable support.
Only diagnostics and parallelism are tunable here; numerical defaults live with the
code that applies them so simulation results never depend on the environment.
"""
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings loaded from ``HEATROD_*`` environment variables or a .env file.

    All settings have sensible defaults.
    """

    model_config = SettingsConfigDict(
        env_prefix="HEATROD_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    log_to_file: bool = Field(
        default=False,
        description="Also write a timestamped log file under log_dir"
    )
    log_dir: str = Field(
        default="logs",
        description="Directory for log files"
    )

    # Execution
    compare_workers: int = Field(
        default=4,
        ge=1,
        le=16,
        description="Worker threads used by the compare command"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalize and validate the logging level name."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    def is_debug_mode(self) -> bool:
        """Check if debug logging is enabled."""
        return self.log_level == "DEBUG"


# Global settings instance
settings = Settings()
