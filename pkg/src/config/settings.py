# src/config/settings.py
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache


class Settings(BaseSettings):
    """Numerical and logging settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="BELLBOX_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Tolerances
    construction_tolerance: float = Field(default=1e-12, gt=0)
    table_tolerance: float = Field(default=1e-10, gt=0)
    report_tolerance: float = Field(default=1e-9, gt=0)
    branch_threshold: float = Field(default=1e-15, ge=0)
    norm_warning_threshold: float = Field(default=1e-6, gt=0)

    # Rule solver
    solver_max_iterations: int = Field(default=200, ge=1)
    solver_residual_target: float = Field(default=1e-10, gt=0)

    # Multi-start perturbation search
    search_initial_step: float = Field(default=0.25, gt=0)
    search_min_step: float = Field(default=1e-7, gt=0)
    search_max_sweeps: int = Field(default=400, ge=1)
    angle_search_min_step: float = Field(default=1e-6, gt=0)

    # Property suites and scans
    property_seed: int = Field(default=20140915)
    default_grid: int = Field(default=100, ge=2)

    # Figure
    svg_width: int = Field(default=800, ge=100)
    svg_height: int = Field(default=600, ge=100)

    # Logging
    log_level: str = Field(default="INFO")
    log_file: str = Field(default="")


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
