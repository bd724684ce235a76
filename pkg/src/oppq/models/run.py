"""Models for a quantization run document."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, Extra, Field, root_validator, validator

from ..constants import MIN_DIGITS
from ..services.potential import PotentialSpec
from ..services.precision import Precision, is_scalar_text
from .oracle import OracleConfig, OracleMethod
from .potential import Family, QuantizationMode, Representation

__all__ = [
    "OutputFormat",
    "RunConfig",
]


class OutputFormat(Enum):
    """Format of the table artifact."""

    csv = "csv"
    json = "json"
    pretty = "pretty"


_DEFAULT_REPRESENTATION = {
    Family.sextic: Representation.psi_u,
    Family.bender_dunne: Representation.bd_a,
}

_MODES = {
    QuantizationMode.full: set(Representation),
    QuantizationMode.phi_segmented: {Representation.phi_nu},
    QuantizationMode.non_qes_same_parity: {
        Representation.phi_nu,
        Representation.bd_bessis,
    },
    QuantizationMode.bd_full: {
        Representation.bd_a,
        Representation.bd_tilde,
        Representation.bd_bessis,
    },
}


def _parse_scalar(v: Any) -> str | None:
    if v is None:
        return v
    if isinstance(v, bool):
        raise ValueError("must be a number")
    text = str(v)
    if not is_scalar_text(text):
        raise ValueError(f"{text!r} is not a number, rational or sqrt(...)")
    return text


class RunConfig(BaseModel):
    """Configuration of one quantization run.

    Potential parameters are kept as text so that rationals and square
    roots are parsed exactly once the working precision is known.
    """

    family: Family = Field(
        Family.sextic, title="Potential family", example=Family.sextic
    )

    g: str = Field("1", title="Sextic coupling", example="1")

    b: str | None = Field(
        None,
        title="Quartic coefficient",
        description="Sextic family only; the BD value follows from gamma",
        example="sqrt(8)",
    )

    m: str | None = Field(
        None,
        title="Quadratic coefficient",
        description="For Bender–Dunne, give either m or J",
        example="-13",
    )

    s: str | None = Field(
        None,
        title="Bender–Dunne parameter s",
        description="gamma = 2s - 1/2",
        example="1",
    )

    J: int | None = Field(
        None,
        title="Number of Bender–Dunne QES states",
        description="m = -(4s + 4J - 2)",
        example=4,
    )

    gamma: str | None = Field(
        None,
        title="Indicial exponent of the Bender–Dunne potential",
        example="3/2",
    )

    sigma: int = Field(
        0, title="Parity sector of the sextic family", example=0
    )

    representation: Representation | None = Field(
        None,
        title="Moment representation",
        description="Defaults to PsiU (sextic) or BD_A (Bender–Dunne)",
        example=Representation.psi_u,
    )

    mode: QuantizationMode | None = Field(
        None,
        title="Determinant assembly",
        description="Defaults to the natural mode of the representation",
        example=QuantizationMode.full,
    )

    N_min: int = Field(1, title="Smallest truncation order", example=4)

    N_max: int = Field(12, title="Largest truncation order", example=12)

    digits: int | None = Field(
        None,
        title="Working precision in decimal digits",
        description="Defaults to OPPQ_DIGITS",
        example=60,
    )

    window: tuple[str, str] | None = Field(
        None,
        title="Energy window for root finding",
        description=(
            "Defaults to an oracle-derived window when the oracle is on and"
            " to (-50, 150) otherwise"
        ),
        example=("-10", "70"),
    )

    output: OutputFormat = Field(
        OutputFormat.pretty, title="Output format", example=OutputFormat.csv
    )

    oracle: OracleConfig | None = Field(
        None,
        title="Spectral oracle settings",
        description="true enables the oracle with default settings",
    )

    levels: int = Field(
        8,
        title="Levels per parity sector for the oracle",
        example=8,
    )

    class Config:
        extra = Extra.forbid

    @validator("g", "b", "m", "s", "gamma", pre=True)
    def _validate_scalar(cls, v: Any) -> str | None:
        return _parse_scalar(v)

    @validator("sigma")
    def _validate_sigma(cls, v: int) -> int:
        if v not in (0, 1):
            raise ValueError("must be 0 or 1")
        return v

    @validator("digits")
    def _validate_digits(cls, v: int | None) -> int | None:
        if v is not None and v < MIN_DIGITS:
            raise ValueError(f"must be at least {MIN_DIGITS}")
        return v

    @validator("N_min")
    def _validate_n_min(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must not be negative")
        return v

    @validator("N_max")
    def _validate_n_max(cls, v: int, values: dict[str, Any]) -> int:
        if "N_min" in values and v < values["N_min"]:
            raise ValueError("must not be smaller than N_min")
        return v

    @validator("window", pre=True)
    def _validate_window(cls, v: Any) -> tuple[str, str] | None:
        if v is None:
            return v
        lo, hi = (_parse_scalar(x) for x in v)
        if lo is None or hi is None:
            raise ValueError("both ends are required")
        precision = Precision(MIN_DIGITS, 0)
        if precision.parse(lo) >= precision.parse(hi):
            raise ValueError("lower end must be below upper end")
        return (lo, hi)

    @validator("oracle", pre=True)
    def _validate_oracle(cls, v: Any) -> Any:
        if v is True:
            return {}
        if v is False:
            return None
        return v

    @validator("levels")
    def _validate_levels(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be positive")
        return v

    @root_validator(skip_on_failure=True)
    def _validate_potential(cls, values: dict[str, Any]) -> dict[str, Any]:
        family = values["family"]
        representation = values.get("representation")
        if representation is None:
            representation = _DEFAULT_REPRESENTATION[family]
            values["representation"] = representation
        elif representation.family != family:
            raise ValueError(
                f"representation {representation.value} is not defined for"
                f" the {family.value} family"
            )
        mode = values.get("mode")
        if mode is not None and representation not in _MODES[mode]:
            raise ValueError(
                f"mode {mode.value} does not apply to representation"
                f" {representation.value}"
            )
        if family == Family.sextic:
            if values.get("b") is None or values.get("m") is None:
                raise ValueError("sextic potentials need b and m")
            if any(values.get(k) is not None for k in ("s", "J", "gamma")):
                raise ValueError("s, J and gamma apply to Bender–Dunne only")
            PotentialSpec.sextic(
                values["g"],
                values["b"],
                values["m"],
                values["sigma"],
                Precision(MIN_DIGITS, 0),
            )
            return values
        if values.get("b") is not None:
            raise ValueError("b follows from gamma for Bender–Dunne")
        if values["sigma"] != 0:
            raise ValueError("Bender–Dunne potentials have sigma = 0")
        oracle = values.get("oracle")
        if oracle is not None and oracle.method == OracleMethod.harmonic:
            raise ValueError("HarmonicBasis oracle is sextic only")
        PotentialSpec.bender_dunne(
            Precision(MIN_DIGITS, 0),
            s=values.get("s"),
            J=values.get("J"),
            gamma=values.get("gamma"),
            m=values.get("m"),
        )
        return values
