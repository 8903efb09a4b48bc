from pydantic import BaseModel, Field

from lifeheal.config.settings import settings


class GroundTruth(BaseModel):
    """Exact lost-variable set of one event, computed with no healer installed."""

    event_index: int
    lost: frozenset[str] = frozenset()


class GeneratorLimits(BaseModel):
    """
    Size bounds for random scenarios.

    Attributes:
        max_components (int): Components per scenario.
        max_variables (int): Tracked variables per component.
        max_events (int): Scripted stop-start events per scenario.
        adversarial (bool): Build a value-dependent fault the abstraction cannot see.
    """

    max_components: int = Field(default_factory=lambda: settings.max_components, gt=0)
    max_variables: int = Field(default_factory=lambda: settings.max_variables, gt=0)
    max_events: int = Field(default_factory=lambda: settings.max_events, gt=0)
    adversarial: bool = False
