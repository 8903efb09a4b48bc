class LifehealError(Exception):
    """
    Base class for every error the simulator reports to its caller.

    Each subclass fixes the process exit status the CLI uses for it, the same
    way an HTTP error fixes its status code.

    Attributes:
        detail (str): Human readable description, printed by the CLI.
        exit_code (int): Exit status for the command that failed.
    """

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ScenarioParseError(LifehealError):
    """A scenario file is not valid JSON or does not match the scenario schema."""


class ScenarioSemanticError(LifehealError):
    """A scenario parses but references something that does not exist or is ill-typed."""


class DuplicateVariableError(ScenarioSemanticError):
    def __init__(self, name: str):
        super().__init__(f"duplicate variable name '{name}'")
        self.name = name


class UnknownVariableError(LifehealError):
    def __init__(self, name: str, component: str):
        super().__init__(f"unknown variable '{name}' in component '{component}'")
        self.name = name
        self.component = component


class TypedDecodeError(LifehealError):
    def __init__(self, name: str, reason: str):
        super().__init__(f"cannot decode value for variable '{name}': {reason}")
        self.name = name


class ValueTypeMismatchError(LifehealError):
    """Two values of different value types were compared."""


class MemoryParseError(LifehealError):
    """A memory file is not valid JSON or does not match the memory schema."""


class MemoryIntegrityError(LifehealError):
    exit_code = 3


class MemoryCorruptionError(MemoryIntegrityError):
    """The learned memory names variables the running component does not have."""


class SnapshotMismatchError(LifehealError):
    exit_code = 3

    def __init__(self, component: str, reason: str):
        super().__init__(f"snapshot does not match component '{component}': {reason}")
        self.component = component


class StorageError(LifehealError):
    """A report, memory or snapshot file could not be written or read back."""
