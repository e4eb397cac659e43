"""
Tests for the sequential measurement engine and the box zoo
"""
import math
import numpy as np
import pytest
from src.config.constants import MeasurementOrder, Party
from src.config.settings import Settings
from src.domain.entities.state import TwoQubitState, random_state, random_product_state
from src.domain.value_objects.observable import QubitObservable, eigenbases, random_observable
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.application.services.measurement_service import (
    assemble_box,
    first_step,
    joint_alice_first,
    joint_bob_first,
    joint_table,
    order_tables,
    sample,
    MeasurementService
)
from src.application.services.box_zoo import pr_box, random_no_signaling_box
from src.application.services.box_analysis_service import chsh_value
from src.error_trace.exceptions import ValidationError

COS2_PI_8 = (2 + math.sqrt(2)) / 4
SIN2_PI_8 = (2 - math.sqrt(2)) / 4

RULES = [
    ProbabilityRule.born(),
    ProbabilityRule.power(0.7),
    ProbabilityRule.power(3),
    ProbabilityRule.power(500),
    ProbabilityRule.step()
]


def with_phase(state, chi):
    return TwoQubitState.from_vector(state.vector * np.exp(1j * chi))


def random_pairs(rng):
    alice = (random_observable(rng), random_observable(rng))
    bob = (random_observable(rng), random_observable(rng))
    return alice, bob


class TestJointDistributions:
    """Tests for P_A and P_B"""

    def test_bell_born_table(self, bell, chsh, born):
        alice, bob = chsh
        table = joint_alice_first(bell, alice[0], bob[0], born).table
        assert table[0, 0] == pytest.approx(COS2_PI_8 / 2, abs=1e-12)
        assert table[1, 1] == pytest.approx(COS2_PI_8 / 2, abs=1e-12)
        assert table[0, 1] == pytest.approx(SIN2_PI_8 / 2, abs=1e-12)
        assert table[1, 0] == pytest.approx(SIN2_PI_8 / 2, abs=1e-12)
        assert table[0, 0] == pytest.approx(0.426777, abs=1e-6)
        distribution = joint_alice_first(bell, alice[0], bob[0], born)
        assert distribution.correlator == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_bell_marginals_uniform(self, bell, born, rng):
        for _ in range(20):
            obs = random_observable(rng)
            for party in Party:
                branches = first_step(bell, obs, party, born)
                assert branches[0].probability == pytest.approx(0.5, abs=1e-12)

    def test_bell_born_orders_agree(self, bell_born_box):
        a = bell_born_box.array(MeasurementOrder.ALICE_FIRST)
        b = bell_born_box.array(MeasurementOrder.BOB_FIRST)
        assert np.max(np.abs(a - b)) <= 1e-12

    def test_born_order_independence(self, born, rng):
        worst = 0.0
        for _ in range(1000):
            alice, bob = random_pairs(rng)
            alice_first, bob_first = order_tables(random_state(rng), alice, bob, born)
            worst = max(worst, float(np.max(np.abs(alice_first - bob_first))))
        assert worst <= 1e-10

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_normalization(self, rule, rng):
        for _ in range(50):
            alice, bob = random_pairs(rng)
            alice_first, bob_first = order_tables(random_state(rng), alice, bob, rule)
            assert np.max(np.abs(alice_first.sum(axis=(2, 3)) - 1)) <= 1e-12
            assert np.max(np.abs(bob_first.sum(axis=(2, 3)) - 1)) <= 1e-12
            assert alice_first.min() >= 0 and bob_first.min() >= 0

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_first_mover_marginal_is_first_step(self, rule, rng):
        state = random_state(rng)
        x_obs, y_obs = random_observable(rng), random_observable(rng)
        table = joint_alice_first(state, x_obs, y_obs, rule).table
        branches = first_step(state, x_obs, Party.ALICE, rule)
        for a in (0, 1):
            p = branches[a].probability
            assert abs(table[a, 0] + table[a, 1] - p) <= np.spacing(p)

        table = joint_bob_first(state, x_obs, y_obs, rule).table
        branches = first_step(state, y_obs, Party.BOB, rule)
        for b in (0, 1):
            p = branches[b].probability
            assert abs(table[0, b] + table[1, b] - p) <= np.spacing(p)

    @pytest.mark.parametrize("rule", RULES[:3] + RULES[4:], ids=lambda r: r.name)
    def test_global_phase_changes_nothing(self, rule, rng):
        state = random_state(rng)
        alice, bob = random_pairs(rng)
        before = np.stack(order_tables(state, alice, bob, rule))
        after = np.stack(order_tables(with_phase(state, 1.234), alice, bob, rule))
        assert np.max(np.abs(before - after)) <= 1e-14

    @pytest.mark.parametrize("rule", [ProbabilityRule.born(), ProbabilityRule.power(3),
                                      ProbabilityRule.power(8), ProbabilityRule.step()],
                             ids=lambda r: r.name)
    def test_product_states_are_order_independent(self, rule, rng):
        for _ in range(100):
            alice, bob = random_pairs(rng)
            alice_first, bob_first = order_tables(random_product_state(rng), alice, bob, rule)
            assert np.max(np.abs(alice_first - bob_first)) <= 1e-12

    def test_degenerate_branch(self, product, born):
        branches = first_step(product, QubitObservable.sigma_z(), Party.ALICE, born)
        assert branches[0].probability == 1.0
        assert branches[1].probability == 0.0
        assert not branches[1].used
        table = joint_alice_first(product, QubitObservable.sigma_z(), QubitObservable.sigma_x(), born).table
        assert table[1, 0] == 0.0 and table[1, 1] == 0.0


class TestAssembleBox:
    """Tests for whole boxes"""

    def test_provenance_records_setup(self, bell_born_box):
        assert '"rule":"born"' in bell_born_box.provenance

    def test_product_state_chsh(self, product, chsh, born):
        alice, bob = chsh
        box = assemble_box(product, alice, bob, born)
        assert chsh_value(box, MeasurementOrder.ALICE_FIRST) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_tsirelson(self, bell_born_box):
        for order in MeasurementOrder:
            assert chsh_value(bell_born_box, order) == pytest.approx(2 * math.sqrt(2), abs=1e-10)

    def test_step_rule_gives_pr_box(self, bell, chsh):
        alice, bob = chsh
        box = assemble_box(bell, alice, bob, ProbabilityRule.step())
        reference = pr_box()
        for order in MeasurementOrder:
            assert np.max(np.abs(box.array(order) - reference.array(order))) <= 1e-12
            assert chsh_value(box, order) == 4.0

    def test_relabeled_box_keeps_chsh(self, bell_born_box):
        relabeled = bell_born_box.relabeled()
        assert chsh_value(relabeled, MeasurementOrder.ALICE_FIRST) == pytest.approx(2 * math.sqrt(2))

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_closed_form_first_cell(self, rule, rng):
        z = QubitObservable.sigma_z()
        for _ in range(20):
            state = random_state(rng)
            q1, q2, q3, _ = state.weights
            alice_first = joint_alice_first(state, z, z, rule).table
            bob_first = joint_bob_first(state, z, z, rule).table
            assert alice_first[0, 0] == pytest.approx(rule(q1 + q2) * rule(q1 / (q1 + q2)), abs=1e-12)
            assert bob_first[0, 0] == pytest.approx(rule(q1 + q3) * rule(q1 / (q1 + q3)), abs=1e-12)

    def test_orders_differ_for_power_four(self):
        state = TwoQubitState.from_vector([math.sqrt(0.5), math.sqrt(0.3), 0.0, math.sqrt(0.2)])
        z = QubitObservable.sigma_z()
        rule = ProbabilityRule.power(4)
        assert joint_bob_first(state, z, z, rule).probability(0, 0) == pytest.approx(0.5, abs=1e-12)
        # H(0.8) H(0.625) = (16/17)(25/34)
        assert joint_alice_first(state, z, z, rule).probability(0, 0) == pytest.approx(400 / 578, abs=1e-12)
        assert rule(0.625) == pytest.approx(0.735294, abs=1e-6)

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_flipped_observable_swaps_table_rows(self, rule, rng):
        for _ in range(20):
            state = random_state(rng)
            x_obs, y_obs = random_observable(rng), random_observable(rng)
            for order in MeasurementOrder:
                table = joint_table(state, x_obs, y_obs, rule, order)
                assert np.allclose(joint_table(state, x_obs.flipped(), y_obs, rule, order), table[::-1, :], atol=1e-12)
                assert np.allclose(joint_table(state, x_obs, y_obs.flipped(), rule, order), table[:, ::-1], atol=1e-12)

    def test_marginals_match_first_step_over_many_draws(self, rng):
        rule = ProbabilityRule.power(3.3)
        for _ in range(500):
            state = random_state(rng)
            x_obs, y_obs = random_observable(rng), random_observable(rng)
            table = joint_table(state, x_obs, y_obs, rule, MeasurementOrder.ALICE_FIRST)
            branches = first_step(state, x_obs, Party.ALICE, rule)
            for a in (0, 1):
                p = branches[a].probability
                assert table[a, 1] == p - table[a, 0]
                assert abs(table[a].sum() - p) <= np.spacing(p)

    def test_random_no_signaling_boxes_are_valid(self, rng):
        box = random_no_signaling_box(rng)
        assert chsh_value(box, MeasurementOrder.ALICE_FIRST) <= 4.0 + 1e-12


class TestSampler:
    """Tests for outcome sampling"""

    def test_frequency(self, bell_born_box):
        counts = sample(bell_born_box, MeasurementOrder.ALICE_FIRST, 0, 0, 100_000, seed=11)
        assert sum(counts.values()) == 100_000
        assert abs(counts[(0, 0)] / 100_000 - 0.426777) <= 0.01

    def test_seeded(self, bell_born_box):
        first = sample(bell_born_box, MeasurementOrder.BOB_FIRST, 1, 1, 500, seed=3)
        second = sample(bell_born_box, MeasurementOrder.BOB_FIRST, 1, 1, 500, seed=3)
        assert first == second

    def test_zero_probability_outcomes_never_drawn(self):
        counts = sample(pr_box(), MeasurementOrder.ALICE_FIRST, 1, 1, 1000, seed=0)
        assert counts[(0, 0)] == 0 and counts[(1, 1)] == 0

    def test_count_must_be_positive(self, bell_born_box):
        with pytest.raises(ValidationError):
            sample(bell_born_box, MeasurementOrder.ALICE_FIRST, 0, 0, 0, seed=0)

    def test_negative_seed_rejected(self, bell_born_box):
        with pytest.raises(ValidationError):
            sample(bell_born_box, MeasurementOrder.ALICE_FIRST, 0, 0, 10, seed=-1)


class TestMeasurementService:
    """Tests for the service object and its settings"""

    def test_matches_module_functions(self, bell, chsh):
        alice, bob = chsh
        rule = ProbabilityRule.power(4)
        service = MeasurementService()
        box = service.assemble_box(bell, alice, bob, rule)
        expected = assemble_box(bell, alice, bob, rule)
        for order in MeasurementOrder:
            assert np.array_equal(box.array(order), expected.array(order))
        assert box.provenance == expected.provenance

    def test_branch_threshold_from_settings(self):
        state = TwoQubitState.from_vector([math.sqrt(0.05), 0.0, 0.0, math.sqrt(0.95)])
        z = QubitObservable.sigma_z()
        coarse = MeasurementService(Settings(branch_threshold=0.1))
        branches = coarse.first_step(state, z, Party.ALICE, ProbabilityRule.born())
        assert not branches[0].used
        assert branches[1].probability == 1.0
        assert MeasurementService().first_step(state, z, Party.ALICE, ProbabilityRule.born())[0].used

    def test_basis_tables_match_observables(self, rng):
        state = random_state(rng)
        alice, bob = random_pairs(rng)
        rule = ProbabilityRule.power(3)
        angles = np.array([obs.angles() for obs in (*alice, *bob)])
        bases = eigenbases(angles[:, 0], angles[:, 1])
        service = MeasurementService()
        from_bases = service.basis_order_tables(state.matrix, bases[:2], bases[2:], rule)
        from_pairs = service.order_tables(state, alice, bob, rule)
        for left, right in zip(from_bases, from_pairs):
            assert np.allclose(left, right, atol=1e-14)
