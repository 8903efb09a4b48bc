from pydantic import BaseModel, ConfigDict, Field


class AbstractState(BaseModel):
    """
    Abstract key of a concrete state: the component name plus one bit per
    tracked variable, '1' where the variable holds a non-default value.
    """

    model_config = ConfigDict(frozen=True)

    activity: str = Field(min_length=1)
    bitmask: str = Field(pattern=r"^[01]*$")

    def sort_key(self) -> tuple[str, str]:
        return (self.activity, self.bitmask)

    def __str__(self) -> str:
        return f"({self.activity}, {self.bitmask})"
