import random
from collections import Counter

import pytest

from lifeheal.models.appmodel import ComponentState, HandlerModel
from lifeheal.models.healer import ClassificationKind, SaveActionKind
from lifeheal.models.lifecycle import StopStartEvent
from lifeheal.models.oracle import GeneratorLimits
from lifeheal.services.abstraction_services import abstract_state, is_default
from lifeheal.services.appmodel_services import instantiate_component
from lifeheal.services.oracle_services import generate_scenario, oracle_lost_vars, random_value
from lifeheal.services.runner_services import simulate
from lifeheal.services.scenario_services import validate_scenario
from tests.conftest import NOTE_LOST


class TestOracleLostVars:
    def test_fixture_ground_truth(self, note_activity, note_handler):
        truth = oracle_lost_vars(note_activity, note_handler, StopStartEvent(sequence_index=3))
        assert truth.event_index == 3
        assert truth.lost == NOTE_LOST

    def test_input_state_is_untouched(self, note_activity, note_handler):
        before = note_activity.clone()
        oracle_lost_vars(note_activity, note_handler, StopStartEvent(sequence_index=1))
        assert note_activity == before

    def test_correct_handler_loses_nothing(self, note_activity):
        assert oracle_lost_vars(note_activity, HandlerModel(), StopStartEvent(sequence_index=1)).lost == frozenset()


class TestGenerateScenario:
    def test_same_seed_same_scenario(self):
        assert generate_scenario(42) == generate_scenario(42)

    def test_different_seeds_differ(self):
        assert generate_scenario(1) != generate_scenario(2)

    @pytest.mark.parametrize("seed", range(100))
    def test_generated_scenarios_are_valid(self, seed):
        limits = GeneratorLimits()
        scenario = generate_scenario(seed)
        assert validate_scenario(scenario) == scenario
        assert 1 <= len(scenario.components) <= limits.max_components
        assert 1 <= len(scenario.events) <= limits.max_events
        for definition in scenario.components:
            assert len(definition.variables) <= limits.max_variables
            instantiate_component(definition.variables, definition.name)

    def test_limits_are_honoured(self):
        limits = GeneratorLimits(max_components=1, max_variables=2, max_events=1)
        scenario = generate_scenario(7, limits)
        assert len(scenario.components) == 1
        assert len(scenario.components[0].variables) <= 2
        assert len(scenario.events) == 1


class TestHealerAgainstOracle:
    """Over generated scenarios the healer detects exactly what the oracle loses and heals all of it."""

    @pytest.mark.parametrize("block", range(10))
    def test_detection_and_healing_match_ground_truth(self, block):
        for seed in range(block * 50, block * 50 + 50):
            report, memory = simulate(generate_scenario(seed), oracle_check=True)
            for record in report.events:
                if record.classification is ClassificationKind.NEW:
                    assert record.lost == record.oracle_lost, f"seed {seed} event {record.event}"
                elif record.classification is ClassificationKind.UNSAFE:
                    assert record.healed == record.oracle_lost, f"seed {seed} event {record.event}"
                else:
                    assert record.oracle_lost == [], f"seed {seed} event {record.event}"
                assert record.unhealed == [], f"seed {seed} event {record.event}"
                assert record.missed == []
            assert report.totals.losses_missed == 0
            assert memory.safe.isdisjoint(memory.failing)

    @pytest.mark.parametrize("seed", range(0, 500, 7))
    def test_each_abstract_state_is_snapshotted_once(self, seed):
        report, _ = simulate(generate_scenario(seed))
        full = Counter(
            record.abstract_state for record in report.events if record.action is SaveActionKind.FULL_SNAPSHOT
        )
        assert all(count == 1 for count in full.values())

    def test_healer_off_reports_ground_truth(self):
        for seed in range(50):
            report, memory = simulate(generate_scenario(seed), healer=False, oracle_check=True)
            assert memory.is_empty()
            for record in report.events:
                assert record.lost == record.oracle_lost
                assert record.classification is None


class TestAdversarialScenarios:
    @pytest.mark.parametrize("seed", range(10))
    def test_value_dependent_fault_is_missed(self, seed):
        scenario = generate_scenario(seed, GeneratorLimits(adversarial=True))
        report, memory = simulate(scenario, oracle_check=True)
        first, second = report.events[0], report.events[1]
        assert first.classification is ClassificationKind.NEW
        assert first.lost == []
        assert second.classification is ClassificationKind.SAFE
        assert second.missed == ["mPinned"]
        assert report.totals.losses_missed >= 1
        assert report.totals.unhealed_losses >= 1
        assert first.abstract_state in memory.safe


def same_mask_twin(rng: random.Random, state: ComponentState) -> ComponentState:
    """Redraw every non-default value, keeping each variable's default-ness."""
    updates = {
        slot.spec.name: random_value(rng, slot.spec.type, default_ratio=0.0)
        for slot in state.vars
        if not is_default(slot.value, slot.spec.type)
    }
    return state.with_values(updates)


@pytest.mark.parametrize("seed", range(300))
def test_states_with_equal_abstraction_lose_the_same_variables(seed):
    rng = random.Random(seed)
    scenario = generate_scenario(seed)
    for definition in scenario.components:
        start = instantiate_component(definition.variables, definition.name)
        first = start.with_values({spec.name: random_value(rng, spec.type) for spec in definition.variables})
        second = same_mask_twin(rng, first)
        assert abstract_state(first) == abstract_state(second)
        event = StopStartEvent(sequence_index=1)
        lost_first = oracle_lost_vars(first, definition.handler, event).lost
        lost_second = oracle_lost_vars(second, definition.handler, event).lost
        assert lost_first == lost_second, f"seed {seed} component {definition.name}"
