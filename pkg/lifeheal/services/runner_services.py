import logging
from pathlib import Path

from pydantic import BaseModel

from lifeheal.models.appmodel import ComponentState, HandlerModel
from lifeheal.models.healer import HealerMemory, SaveActionKind
from lifeheal.models.lifecycle import NO_OP_HOOKS, StopStartEvent
from lifeheal.schemas.report import EventRecord, Report, ReportTotals
from lifeheal.schemas.scenario import Scenario
from lifeheal.services.appmodel_services import instantiate_component
from lifeheal.services.healer_services import Healer, load_memory, memory_to_document, persist_memory
from lifeheal.services.lifecycle_services import dispatch_stop_start
from lifeheal.services.oracle_services import changed_variables, oracle_lost_vars
from lifeheal.services.scenario_services import validate_scenario
from lifeheal.storage.documents import dump_json, write_json
from lifeheal.storage.snapshot_store import SnapshotStore

logger = logging.getLogger("lifeheal.services.runner")


class RunOptions(BaseModel):
    """
    Options of one scenario run.

    Attributes:
        healer (bool): Install the healer; without it the run only detects losses.
        memory_path (Path | None): Memory file loaded before and written after a healer run.
        oracle_check (bool): Annotate every event with oracle ground truth.
        report_path (Path | None): Where the report is written.
        snapshot_dir (Path | None): Where per-event snapshot files travel.
    """

    healer: bool = True
    memory_path: Path | None = None
    oracle_check: bool = False
    report_path: Path | None = None
    snapshot_dir: Path | None = None


def summarize(records: list[EventRecord], oracle_check: bool) -> ReportTotals:
    """Totals of a report, summed from its per-event records."""
    return ReportTotals(
        events=len(records),
        full_snapshots=sum(1 for r in records if r.action is SaveActionKind.FULL_SNAPSHOT),
        selective_saves=sum(1 for r in records if r.action is SaveActionKind.SELECTIVE_SAVE),
        skips=sum(1 for r in records if r.action is SaveActionKind.SKIP),
        losses_detected=sum(len(r.lost) for r in records),
        losses_healed=sum(len(r.healed) for r in records),
        losses_missed=sum(len(r.missed or []) for r in records) if oracle_check else None,
        unhealed_losses=sum(len(r.unhealed) for r in records),
        bytes_serialized=sum(r.bytes_serialized for r in records),
    )


def simulate(
    scenario: Scenario,
    memory: HealerMemory | None = None,
    healer: bool = True,
    oracle_check: bool = False,
    store: SnapshotStore | None = None,
) -> tuple[Report, HealerMemory]:
    """
    Execute a scenario's event script in order, without touching memory or report files.

    Args:
        scenario (Scenario): The scenario to run; validated again here.
        memory (HealerMemory | None): Starting memory; empty when omitted.
        healer (bool): Install the healer hooks on every event.
        oracle_check (bool): Compute oracle ground truth for every event.
        store (SnapshotStore | None): Where the healer parks snapshots.

    Returns:
        tuple: The report and the memory as left by the run.
    """
    scenario = validate_scenario(scenario)
    engine = Healer(memory.copy() if memory is not None else None, store) if healer else None
    states: dict[str, ComponentState] = {
        definition.name: instantiate_component(definition.variables, definition.name)
        for definition in scenario.components
    }
    handlers: dict[str, HandlerModel] = {definition.name: definition.handler for definition in scenario.components}
    records = []
    for index, step in enumerate(scenario.events, start=1):
        if step.handler is not None:
            logger.info(f"event {index}: {step.component} switches to a new handler pair")
            handlers[step.component] = step.handler
        handler = handlers[step.component]
        before = states[step.component].with_values(step.mutations)
        event = StopStartEvent(kind=step.kind, sequence_index=index)
        truth = oracle_lost_vars(before, handler, event) if oracle_check else None

        hooks = engine.hooks(event) if engine is not None else NO_OP_HOOKS
        after = dispatch_stop_start(before, handler, hooks, event)
        unhealed = changed_variables(before, after)
        record = EventRecord(event=index, component=step.component, kind=step.kind, unhealed=sorted(unhealed))
        if engine is not None:
            action, outcome = engine.last_action, engine.last_outcome
            record.abstract_state = action.abstract_state
            record.classification = outcome.classification
            record.action = action.kind
            record.bytes_serialized = action.bytes_serialized
            record.lost = sorted(outcome.lost)
            record.healed = sorted(outcome.healed)
            record.memory_update = outcome.memory_update
        else:
            record.lost = sorted(unhealed)
        if truth is not None:
            record.oracle_lost = sorted(truth.lost)
            record.missed = sorted(truth.lost - set(record.lost) - set(record.healed))
        if unhealed and engine is not None:
            logger.warning(f"event {index}: {step.component} still lost {sorted(unhealed)} after healing")
        records.append(record)
        states[step.component] = after

    report = Report(
        scenario=scenario.description,
        healer=healer,
        oracle_check=oracle_check,
        events=records,
        totals=summarize(records, oracle_check),
    )
    final_memory = engine.memory if engine is not None else (memory or HealerMemory())
    return report, final_memory


def run(scenario: Scenario, options: RunOptions) -> Report:
    """
    Run a scenario end to end: load memory, simulate, write the report, persist memory.

    The report is written first, so a failed report write leaves the old memory in place.

    Raises:
        MemoryParseError: If the memory file is malformed.
        MemoryIntegrityError: If the memory file breaks a memory invariant.
        StorageError: If the report, memory or a snapshot file cannot be written.
    """
    memory = None
    if options.healer and options.memory_path is not None and Path(options.memory_path).exists():
        memory = load_memory(options.memory_path)
    elif options.healer:
        logger.info("Starting with an empty healer memory.")
    store = SnapshotStore(options.snapshot_dir)
    report, memory = simulate(scenario, memory, options.healer, options.oracle_check, store)
    if options.report_path is not None:
        write_json(options.report_path, report.model_dump(mode="json"))
    if options.healer and options.memory_path is not None:
        persist_memory(memory, options.memory_path)
    return report


def exit_status(report: Report) -> int:
    """0 unless a healer run left a loss unhealed; detection-only runs always succeed."""
    if report.healer and report.totals.unhealed_losses > 0:
        return 1
    return 0


def memory_inspect(path: Path, machine: bool = False) -> str:
    """
    List the entries of a memory file, ordered by activity then bitmask.

    Args:
        path (Path): Memory file.
        machine (bool): Emit the canonical JSON document instead of text lines.

    Raises:
        MemoryParseError: If the file is malformed.
        MemoryIntegrityError: If the file breaks a memory invariant.
    """
    memory = load_memory(path)
    document = memory_to_document(memory)
    if machine:
        return dump_json(document.model_dump(mode="json", by_alias=True))
    lines = [f"MS ({len(document.safe)})"]
    lines += [f"  {entry.activity} {entry.bitmask}" for entry in document.safe]
    lines.append(f"MF ({len(document.failing)})")
    lines += [f"  {entry.activity} {entry.bitmask} -> {', '.join(entry.vars)}" for entry in document.failing]
    return "\n".join(lines) + "\n"


def reset_memory(path: Path) -> None:
    persist_memory(HealerMemory(), path)
    logger.info(f"Memory at '{path}' reset to empty.")
