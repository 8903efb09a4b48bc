from typing import Any

from pydantic import BaseModel, Field

from lifeheal.models.appmodel import HandlerModel, VariableSpec
from lifeheal.models.lifecycle import EventKind


class ComponentDefinition(BaseModel):
    name: str = Field(min_length=1)
    variables: list[VariableSpec] = Field(default_factory=list)
    handler: HandlerModel = Field(default_factory=HandlerModel)


class ScriptedEvent(BaseModel):
    """
    One entry of the event script.

    Attributes:
        component (str): Component the event targets.
        kind (EventKind): Rotation, context switch or process kill.
        mutations (dict[str, Any]): Assignments applied to the component just
            before the event, used to move it between abstract states.
        handler (HandlerModel | None): Replacement callback pair installed from
            this event on, modelling an upgrade that changes save/restore code.
    """

    component: str
    kind: EventKind = EventKind.ROTATION
    mutations: dict[str, Any] = Field(default_factory=dict)
    handler: HandlerModel | None = None


class Scenario(BaseModel):
    description: str = ""
    components: list[ComponentDefinition] = Field(default_factory=list)
    events: list[ScriptedEvent] = Field(default_factory=list)

    def component(self, name: str) -> ComponentDefinition | None:
        for definition in self.components:
            if definition.name == name:
                return definition
        return None
