from pydantic import BaseModel, ConfigDict, Field


class SafeEntry(BaseModel):
    activity: str = Field(min_length=1)
    bitmask: str = Field(pattern=r"^[01]*$")


class FailingEntry(SafeEntry):
    vars: list[str] = Field(default_factory=list)


class MemoryDocument(BaseModel):
    """On-disk form of the healer memory: `{"MS": [...], "MF": [...]}`."""

    model_config = ConfigDict(populate_by_name=True)

    safe: list[SafeEntry] = Field(default_factory=list, alias="MS")
    failing: list[FailingEntry] = Field(default_factory=list, alias="MF")
