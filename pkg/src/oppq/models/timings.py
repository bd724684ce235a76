"""Models for timing data."""

from datetime import datetime

from pydantic import BaseModel, Field

__all__ = ["StopwatchData"]


class StopwatchData(BaseModel):
    """Timing for a single pipeline stage."""

    event: str = Field(..., title="Name of the stage", example="determinant")

    annotations: dict[str, str] = Field(
        default_factory=dict,
        title="Stage annotations",
        example={"N": "7"},
    )

    start: datetime = Field(
        ..., title="Start of stage", example="2024-03-11T19:43:40.446072+00:00"
    )

    stop: datetime | None = Field(
        None,
        title="End of stage",
        description="Will be null if the stage is still running",
        example="2024-03-11T19:43:40.514623+00:00",
    )

    elapsed: float | None = Field(
        None,
        title="Duration of stage in seconds",
        description="Will be null if the stage is still running",
        example=0.068551,
    )

    failed: bool = Field(
        False, title="Whether the stage failed", example=False
    )
