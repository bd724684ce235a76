"""Models for quantization results."""

from enum import Enum

from pydantic import BaseModel, Field

from ..constants import SCHEMA_VERSION
from .oracle import OracleResult
from .potential import QuantizationMode, Representation
from .timings import StopwatchData

__all__ = [
    "PropertyResult",
    "PropertyStatus",
    "QESPolyReport",
    "RootClass",
    "RootEntry",
    "RootReport",
    "SolveResult",
    "VerifyReport",
]


class RootClass(Enum):
    """Classification of a determinant root across truncation orders."""

    qes_exact = "QES-exact"
    converging = "Converging"
    spurious = "Spurious"


class RootEntry(BaseModel):
    """One root of D_N(E) at one truncation order."""

    N: int = Field(..., title="Truncation order", example=12)

    level: int = Field(
        ...,
        title="Position among the roots at this order",
        description="Counts from 0 upward in energy",
        example=4,
    )

    energy: str = Field(
        ...,
        title="Root at full working precision",
        example="47.61384996271032826394913287104535720193066045",
    )

    classification: RootClass = Field(
        ...,
        alias="class",
        title="Classification",
        example=RootClass.converging,
    )

    delta: str | None = Field(
        None,
        title="Distance to the nearest root at the previous order",
        description="Null at the first order and for QES-exact roots",
        example="6.2e-4",
    )

    class Config:
        allow_population_by_field_name = True

    @property
    def value(self) -> float:
        """Energy rounded to double precision."""
        return float(self.energy)


class RootReport(BaseModel):
    """Roots of the OPPQ determinant over a range of truncation orders."""

    potential: dict[str, str] = Field(
        ..., title="Potential parameters", example={"g": "1", "m": "-13"}
    )

    representation: Representation = Field(
        ..., title="Moment representation", example=Representation.psi_u
    )

    mode: QuantizationMode = Field(
        ..., title="Determinant assembly", example=QuantizationMode.full
    )

    digits: int = Field(..., title="Working precision", example=60)

    window: tuple[str, str] = Field(
        ..., title="Energy window searched", example=("-10", "70")
    )

    entries: list[RootEntry] = Field(..., title="Roots, by order and level")

    def orders(self) -> list[int]:
        """Truncation orders in the report, ascending."""
        return sorted({e.N for e in self.entries})

    def roots_at(self, N: int) -> list[RootEntry]:
        """Roots at one truncation order, lowest first."""
        return sorted(
            (e for e in self.entries if e.N == N), key=lambda e: e.level
        )

    def energies_at(self, N: int) -> list[float]:
        """Root energies at one order in double precision."""
        return [e.value for e in self.roots_at(N)]

    def qes_energies(self) -> list[float]:
        """QES-exact energies at the highest order."""
        orders = self.orders()
        if not orders:
            return []
        return [
            e.value
            for e in self.roots_at(orders[-1])
            if e.classification == RootClass.qes_exact
        ]


class SolveResult(BaseModel):
    """Document written by a solve run."""

    schema_: str = Field(
        SCHEMA_VERSION, alias="schema", title="Document schema version"
    )

    report: RootReport = Field(..., title="Roots of the determinants")

    oracle: OracleResult | None = Field(
        None, title="Oracle eigenvalues, if the oracle was run"
    )

    timings: list[StopwatchData] = Field(
        default_factory=list, title="Timings of the pipeline stages"
    )

    class Config:
        allow_population_by_field_name = True


class QESPolyReport(BaseModel):
    """Quantizing polynomial of a QES potential and its roots."""

    schema_: str = Field(
        SCHEMA_VERSION, alias="schema", title="Document schema version"
    )

    potential: dict[str, str] = Field(..., title="Potential parameters")

    n_star: int = Field(..., title="Degree of the QES polynomial", example=3)

    sigma_star: int = Field(..., title="Parity sector", example=0)

    coefficients: list[str] = Field(
        ...,
        title="Coefficients in ascending powers of E",
        description="Normalized so the largest has magnitude 1",
    )

    roots: list[str] = Field(..., title="Real roots, ascending")

    class Config:
        allow_population_by_field_name = True


class PropertyStatus(Enum):
    """Outcome of a property check."""

    passed = "PASS"
    failed = "FAIL"
    skipped = "SKIP"


class PropertyResult(BaseModel):
    """Outcome of one property check."""

    name: str = Field(..., title="Property", example="orthonormality")

    status: PropertyStatus = Field(..., title="Outcome")

    detail: str = Field("", title="Measured values or reason for skipping")


class VerifyReport(BaseModel):
    """Outcome of the property suite."""

    properties: list[PropertyResult] = Field(..., title="Checked properties")

    @property
    def failed(self) -> bool:
        """Whether any property failed."""
        return any(
            p.status == PropertyStatus.failed for p in self.properties
        )
