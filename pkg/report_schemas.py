# report_schemas.py
"""
Pydantic models for every machine-readable record the CLI emits
Field order of each model is the JSON key order
"""

import json
import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

logger = logging.getLogger("ReportSchemas")


class SchemaValidationError(Exception):
    """Raised when a report does not match its schema"""
    pass


class TableRowModel(BaseModel):
    """One grid point of a table run"""
    family: str = Field(..., description="path-clique or cycle-clique")
    param: str = Field(..., description="dom, idom, dom12, 2dom or sdom")
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    formula: Optional[int] = Field(None, ge=0, description="Closed-form value, absent outside every guard")
    solver: Optional[int] = Field(None, ge=0, description="Exact value, absent when not requested or over budget")
    construction: Optional[int] = Field(None, ge=0, description="Size of a verified construction")
    agree: bool

    @model_validator(mode='after')
    def validate_agreement(self):
        """agree must equal 'all present values are equal'"""
        present = {v for v in (self.formula, self.solver, self.construction) if v is not None}
        if self.agree != (len(present) <= 1):
            raise ValueError(f"agree={self.agree} contradicts values {sorted(present)}")
        return self


class ErratumReportModel(BaseModel):
    """Outcome of one counterexample reproduction"""
    claim: Literal["sitthiwirattham-path", "sitthiwirattham-cycle", "gravier-bound"]
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    claimed: int = Field(..., ge=0)
    exact: int = Field(..., ge=0)
    verdict: Literal["REFUTED", "CONSISTENT"]

    @model_validator(mode='after')
    def validate_verdict(self):
        """Equality claims fail on any mismatch, the bound only when it is exceeded"""
        if self.claim == "gravier-bound":
            refuted = self.claimed < self.exact
        else:
            refuted = self.claimed != self.exact
        if (self.verdict == "REFUTED") != refuted:
            raise ValueError(f"verdict {self.verdict} contradicts claimed={self.claimed}, exact={self.exact}")
        return self


class SolveReportModel(BaseModel):
    """Result of the solve command"""
    family: Optional[str] = None
    param: str
    n: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=1)
    value: int = Field(..., ge=0)
    certificate: List[List[int]] = Field(..., description="[i, j] pairs on product instances, [id] otherwise")
    nodes: int = Field(..., ge=0)
    canonical: bool = False

    @model_validator(mode='after')
    def validate_certificate_size(self):
        if len(self.certificate) != self.value:
            raise ValueError(f"certificate has {len(self.certificate)} vertices for value {self.value}")
        return self


class FormulaReportModel(BaseModel):
    """Closed-form value with the branch that produced it"""
    family: str
    param: str
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    value: int = Field(..., ge=0)
    source: str


class VerifyReportModel(BaseModel):
    """Verdict of the verify command"""
    param: str
    ok: bool
    witness: Optional[List[int]] = Field(None, description="Failing vertex as [i, j] or [id]")
    reason: Optional[str] = None

    @model_validator(mode='after')
    def validate_witness(self):
        if self.ok and (self.witness is not None or self.reason is not None):
            raise ValueError("a passing verdict carries no witness")
        if not self.ok and (self.witness is None or self.reason is None):
            raise ValueError("a failing verdict needs a witness and a reason")
        return self


def validate_report(model_class: BaseModel, data: Dict[str, Any]) -> BaseModel:
    """
    Validate data against a report model

    Raises:
        SchemaValidationError: If validation fails
    """
    try:
        return model_class(**data)
    except ValidationError as e:
        error_msg = f"Report validation failed for {model_class.__name__}: {str(e)}"
        logger.error(error_msg)
        raise SchemaValidationError(error_msg) from e
    except Exception as e:
        error_msg = f"Unexpected error validating {model_class.__name__}: {str(e)}"
        logger.error(error_msg)
        raise SchemaValidationError(error_msg) from e


def model_to_dict(model: BaseModel, exclude_none: bool = False) -> Dict[str, Any]:
    """Convert a report model to a dictionary in field order"""
    return model.model_dump(exclude_none=exclude_none)


def to_json_line(model: BaseModel) -> str:
    """One JSON object per line with keys in field order"""
    return json.dumps(model_to_dict(model), ensure_ascii=False)
