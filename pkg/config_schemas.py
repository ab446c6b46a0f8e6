# config_schemas.py
"""
Pydantic schema models for configuration validation
Keeps solver budgets, table requests and environment settings within sane bounds
"""

import logging
import os
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from constants import DEFAULT_NODE_BUDGET, EnvironmentKeys, LoggingDefaults, SolverDefaults
from graph_core import ProductFamily
from verifiers import ParamKind

logger = logging.getLogger("ConfigSchemas")

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigValidationError(Exception):
    """Raised when configuration validation fails"""
    pass


class SolveConfig(BaseModel):
    """Exact solver settings"""
    node_budget: Optional[int] = Field(
        None,
        ge=1,
        description="Maximum search nodes before giving up (None = environment default)"
    )
    use_column_pruning: bool = Field(
        True,
        description="Apply column-window lower bounds on product instances"
    )
    canonical_certificate: bool = Field(
        False,
        description="Return the lexicographically smallest minimum set"
    )
    parallel_width: int = Field(
        0,
        ge=0,
        le=SolverDefaults.MAX_PARALLEL_WIDTH,
        description="Worker processes for the root branches (0 = sequential)"
    )

    def effective_node_budget(self) -> int:
        """Resolve the budget, falling back to DOMLAB_BUDGET or the built-in default"""
        if self.node_budget is not None:
            return self.node_budget
        return get_default_node_budget()

    class Config:
        validate_assignment = True


class EnvironmentConfigModel(BaseModel):
    """Environment-driven settings (DOMLAB_* variables)"""
    node_budget: int = Field(
        DEFAULT_NODE_BUDGET,
        ge=1,
        description="Default search node budget"
    )
    log_directory: Optional[str] = Field(
        None,
        description="Directory for per-module log files"
    )
    log_level: str = Field(
        LoggingDefaults.LEVEL,
        description="Console log level"
    )

    @field_validator('log_level')
    def validate_log_level(cls, v):
        """Validate log level name"""
        level = str(v).strip().upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"Log level must be one of {', '.join(_LOG_LEVELS)}")
        return level

    @field_validator('log_directory')
    def validate_log_directory(cls, v):
        if v is not None and not v.strip():
            return None
        return v

    class Config:
        validate_assignment = True


class TableRequestModel(BaseModel):
    """Grid request behind the table command"""
    param: ParamKind = Field(..., description="Parameter to tabulate")
    family: ProductFamily = Field(..., description="Product family")
    n_min: int = Field(..., ge=1, le=1000, description="Smallest path/cycle order")
    n_max: int = Field(..., ge=1, le=1000, description="Largest path/cycle order")
    m_min: int = Field(..., ge=1, le=1000, description="Smallest clique order")
    m_max: int = Field(..., ge=1, le=1000, description="Largest clique order")
    with_solver: bool = Field(False, description="Run the exact solver per row")
    with_construction: bool = Field(False, description="Build and check the construction per row")
    workers: int = Field(1, ge=1, le=SolverDefaults.MAX_PARALLEL_WIDTH, description="Rows evaluated concurrently")

    @model_validator(mode='after')
    def validate_ranges(self):
        """Ensure ranges are ordered and inside the family's domain"""
        if self.family == ProductFamily.OTHER:
            raise ValueError("Tables need the path-clique or cycle-clique family")
        if self.n_min > self.n_max:
            raise ValueError(f"n range is empty: {self.n_min}..{self.n_max}")
        if self.m_min > self.m_max:
            raise ValueError(f"m range is empty: {self.m_min}..{self.m_max}")
        if self.m_min < 2:
            raise ValueError("Clique order m must be at least 2")
        if self.family == ProductFamily.CYCLE_CLIQUE and self.n_min < 2:
            raise ValueError("Cycle order n must be at least 2")
        return self

    def grid(self):
        """Grid points in (n, m) order"""
        return [(n, m)
                for n in range(self.n_min, self.n_max + 1)
                for m in range(self.m_min, self.m_max + 1)]

    class Config:
        validate_assignment = True


# Validation Functions

def validate_config_dict(config_data: Dict[str, Any], config_class: BaseModel) -> BaseModel:
    """
    Validate configuration dictionary against Pydantic model

    Args:
        config_data: Configuration data dictionary
        config_class: Pydantic model class to validate against

    Returns:
        Validated configuration model instance

    Raises:
        ConfigValidationError: If validation fails
    """
    try:
        return config_class(**config_data)
    except ValidationError as e:
        error_msg = f"Configuration validation failed for {config_class.__name__}: {str(e)}"
        logger.error(error_msg)
        raise ConfigValidationError(error_msg) from e
    except Exception as e:
        error_msg = f"Unexpected configuration validation error: {str(e)}"
        logger.error(error_msg)
        raise ConfigValidationError(error_msg) from e


def validate_environment_config() -> EnvironmentConfigModel:
    """
    Validate environment-based configuration

    Returns:
        Validated environment model

    Raises:
        ConfigValidationError: If validation fails
    """
    from dotenv import load_dotenv

    load_dotenv()

    config_data = {
        'node_budget': os.getenv(EnvironmentKeys.NODE_BUDGET, DEFAULT_NODE_BUDGET),
        'log_directory': os.getenv(EnvironmentKeys.LOG_DIRECTORY),
        'log_level': os.getenv(EnvironmentKeys.LOG_LEVEL, LoggingDefaults.LEVEL),
    }

    return validate_config_dict(config_data, EnvironmentConfigModel)


def get_default_node_budget() -> int:
    """Node budget from DOMLAB_BUDGET, or the built-in default when unset or invalid"""
    try:
        return validate_environment_config().node_budget
    except ConfigValidationError as e:
        logger.warning(f"Ignoring invalid {EnvironmentKeys.NODE_BUDGET}: using {DEFAULT_NODE_BUDGET} ({e})")
        return DEFAULT_NODE_BUDGET


def safe_config_validation(config_data: Dict[str, Any], config_class: BaseModel, fallback=None):
    """
    Safely validate configuration with fallback

    Args:
        config_data: Configuration data to validate
        config_class: Pydantic model class
        fallback: Fallback value if validation fails

    Returns:
        Validated config or fallback value
    """
    try:
        return validate_config_dict(config_data, config_class)
    except ConfigValidationError as e:
        logger.warning(f"Configuration validation failed, using fallback: {e}")
        return fallback


if __name__ == "__main__":
    # Example usage and testing
    print("Testing configuration validation...")

    try:
        cfg = SolveConfig(node_budget=1000, canonical_certificate=True)
        print(f"✓ Solve config valid: budget={cfg.effective_node_budget()}")
    except Exception as e:
        print(f"✗ Solve config failed: {e}")

    try:
        request = validate_config_dict(
            {'param': 'dom', 'family': 'cycle-clique', 'n_min': 2, 'n_max': 9, 'm_min': 3, 'm_max': 5},
            TableRequestModel
        )
        print(f"✓ Table request valid: {len(request.grid())} grid points")
    except ConfigValidationError as e:
        print(f"✗ Table request failed: {e}")

    try:
        validate_config_dict(
            {'param': 'dom', 'family': 'path-clique', 'n_min': 5, 'n_max': 3, 'm_min': 3, 'm_max': 3},
            TableRequestModel
        )
        print("✗ Empty range should have failed")
    except ConfigValidationError:
        print("✓ Empty range correctly rejected")
