"""Models for the double-precision spectral oracle."""

from enum import Enum

from pydantic import BaseModel, Extra, Field, validator

__all__ = [
    "OracleConfig",
    "OracleLevel",
    "OracleMethod",
    "OracleResult",
]


class OracleMethod(Enum):
    """Eigenvalue method used by the oracle."""

    grid = "GridNumerov"
    harmonic = "HarmonicBasis"


class OracleConfig(BaseModel):
    """Settings of the spectral oracle."""

    method: OracleMethod = Field(
        OracleMethod.grid,
        title="Eigenvalue method",
        description=(
            "GridNumerov discretizes the half line with a three-point"
            " stencil and extrapolates in the spacing. HarmonicBasis"
            " diagonalizes the Hamiltonian in oscillator eigenfunctions and"
            " is only available for the sextic family."
        ),
        example=OracleMethod.grid,
    )

    points: int = Field(
        4000,
        title="Grid points at the coarsest spacing",
        description="The spacing is halved twice for the extrapolation",
        example=4000,
    )

    extent: float | None = Field(
        None,
        title="Half-line extent of the grid",
        description=(
            "Defaults to the classical turning point of the highest level"
            " plus a margin of several decay lengths"
        ),
        example=6.0,
    )

    basis_size: int = Field(
        160,
        title="Oscillator states per parity sector",
        description="The estimate compares this size with three quarters",
        example=160,
    )

    tolerance: float = Field(
        1e-5,
        title="Required agreement between refinements",
        example=1e-5,
    )

    class Config:
        extra = Extra.forbid

    @validator("points", "basis_size")
    def _validate_positive(cls, v: int) -> int:
        if v < 16:
            raise ValueError("must be at least 16")
        return v

    @validator("tolerance")
    def _validate_tolerance(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("must be positive")
        return v


class OracleLevel(BaseModel):
    """One eigenvalue found by the oracle."""

    index: int = Field(
        ...,
        title="Level index within the parity sector",
        description="Counts from 0 upward in energy",
        example=4,
    )

    sigma: int = Field(
        ..., title="Parity sector (0 for Bender–Dunne)", example=0
    )

    energy: float = Field(..., title="Eigenvalue", example=47.613209)

    error: float = Field(
        ...,
        title="Error estimate",
        description="Difference between the two best refinements",
        example=3e-8,
    )


class OracleResult(BaseModel):
    """Eigenvalues of a potential computed by the oracle."""

    potential: dict[str, str] = Field(
        ..., title="Potential parameters", example={"g": "1", "m": "-13"}
    )

    config: OracleConfig = Field(..., title="Oracle settings")

    levels: list[OracleLevel] = Field(..., title="Levels, lowest first")

    def energies(self, sigma: int | None = None) -> list[float]:
        """Energies of one parity sector, or of all levels if `None`."""
        return [
            level.energy
            for level in self.levels
            if sigma is None or level.sigma == sigma
        ]
