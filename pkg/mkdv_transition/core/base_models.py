"""
Base model classes for the mKdV transition-region toolkit.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel, Field
from returns.result import Failure

from .problem_types import ErrorKind, Stage


class StageError(BaseModel):
    """Failure payload carried by every pipeline ``Result``."""

    kind: ErrorKind = Field(..., description="Validation or numerical failure")
    stage: Stage = Field(..., description="Pipeline stage that failed")
    message: str = Field(..., description="Human readable diagnostic")
    details: Dict[str, Any] = Field(default_factory=dict, description="Machine readable context")

    @property
    def exit_code(self) -> int:
        """CLI exit code for this failure."""
        return 2 if self.kind == ErrorKind.VALIDATION else 3

    def to_payload(self) -> Dict[str, Any]:
        """JSON-ready error envelope."""
        return {"error": self.model_dump(mode="json")}

    def __str__(self) -> str:
        return f"[{self.stage.value}] {self.message}"


def validation_failure(stage: Stage, message: str, **details: Any) -> Failure:
    """Wrap an input-validation diagnostic in a ``Failure``."""
    return Failure(StageError(kind=ErrorKind.VALIDATION, stage=stage, message=message, details=details))


def numerical_failure(stage: Stage, message: str, **details: Any) -> Failure:
    """Wrap a numerical diagnostic (non-convergence, blow-up) in a ``Failure``."""
    return Failure(StageError(kind=ErrorKind.NUMERICAL, stage=stage, message=message, details=details))


class ComplexValue(BaseModel):
    """JSON form of a complex number."""

    re: float = Field(..., description="Real part")
    im: float = Field(..., description="Imaginary part")

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class TabularModel(BaseModel, ABC):
    """Domain objects that export to a CSV table with a fixed column order."""

    model_config = {"arbitrary_types_allowed": True}

    @abstractmethod
    def columns(self) -> list[str]:
        """Column order of the exported table."""
        pass

    @abstractmethod
    def to_frame(self) -> pd.DataFrame:
        """Table view of the object, columns in ``columns()`` order."""
        pass
