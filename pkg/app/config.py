from pydantic_settings import BaseSettings
from functools import lru_cache
from typing import List


class Settings(BaseSettings):
    # Application
    app_name: str = "Stieltjes Moment Certification Toolkit"
    app_env: str = "development"
    debug: bool = False
    log_json: bool = True
    tool_version: str = "1.0.0"

    # Size ceilings, enforced before any computation starts
    max_terms: int = 64
    max_depth: int = 6
    max_hankel_order: int = 12
    max_minor_order: int = 5
    max_qtp_matrix_size: int = 10

    # Pointwise SM sampling grid (rationals as "p/q" strings)
    psm_grid: List[str] = ["0", "1/4", "1/2", "1", "2", "4"]

    # Reports
    report_term_cap: int = 16  # per-level terms kept in serialized iteration reports

    # Recursive matrices
    jacobi_size: int = 6

    # Explore runs
    max_workers: int = 4

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


@lru_cache
def get_settings() -> Settings:
    return Settings()


def clear_settings_cache():
    """Clear the settings cache to reload from .env."""
    get_settings.cache_clear()
