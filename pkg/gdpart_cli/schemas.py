"""
Pydantic schemas for CLI options and reports.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from gdpart_core.projection import METHODS


# ============================================================================
# REPORT SCHEMAS
# ============================================================================

class DimensionImbalance(BaseModel):
    """Imbalance of one weight dimension."""
    label: str
    value: float


class MetricsReport(BaseModel):
    """Quality report of a partition, printed by every partitioning command."""
    n: int
    m: int
    k: int
    locality: float = Field(..., ge=0.0, le=1.0)
    cut_edges: int = Field(..., ge=0)
    imbalance: List[DimensionImbalance]
    part_sizes: List[int]
    algorithm: Optional[str] = None
    seed: Optional[int] = None

    @classmethod
    def from_summary(cls, summary: Dict[str, Any], algorithm: str = None, seed: int = None) -> 'MetricsReport':
        return cls(**summary, algorithm=algorithm, seed=seed)


# ============================================================================
# OPTION SCHEMAS
# ============================================================================

class PartitionOptions(BaseModel):
    """Validated flag bundle of `gdpart partition`."""
    graph: Path
    k: int = Field(default=2, ge=1)
    epsilon: float = Field(default=0.05, ge=0.0)
    weights: Optional[Path] = None
    weight_spec: str = 'unit,degree'
    iters: int = Field(default=100, ge=0)
    projection: str = 'alternating_one_shot'
    seed: int = 0
    out: Optional[str] = None
    trace: Optional[str] = None
    round_trials: int = Field(default=8, ge=1)
    drop_isolated: bool = False
    threads: int = Field(default=1, ge=1)

    @field_validator('projection')
    @classmethod
    def normalize_projection(cls, value: str) -> str:
        method = value.replace('-', '_')
        if method not in METHODS:
            raise ValueError(f"unknown projection '{value}'")
        return method


class HashOptions(BaseModel):
    """Validated flag bundle of `gdpart hash`."""
    graph: Path
    k: int = Field(default=2, ge=1)
    seed: int = 0
    out: Optional[str] = None
