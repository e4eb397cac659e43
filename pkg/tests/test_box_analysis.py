"""
Tests for causality checks and CHSH evaluation
"""
import math
import numpy as np
import pytest
from src.config.constants import MeasurementOrder, Party, CorrelationRegime, INPUT_PAIRS
from src.config.settings import Settings
from src.domain.entities.box import Box, JointDistribution
from src.domain.entities.state import TwoQubitState, random_state, bell_state
from src.domain.value_objects.observable import QubitObservable, random_observable
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.application.services.measurement_service import assemble_box
from src.application.services.box_zoo import (
    anti_pr_box,
    local_deterministic_box,
    mixed_order_device,
    pr_box,
    random_no_signaling_box
)
from src.application.services.box_analysis_service import (
    causality_report,
    check_local_measurement,
    check_no_causal_order,
    check_no_signaling,
    chsh_value,
    classify_chsh,
    order_residual,
    signaling_implication_check,
    signaling_residuals,
    BoxAnalysisService
)
from src.error_trace.exceptions import ValidationError


def signaling_box() -> Box:
    """Alice's outcome copies Bob's input, identical in both orders"""
    tables = np.zeros((2, 2, 2, 2))
    for x, y in INPUT_PAIRS:
        tables[x, y, y, 0] = 1.0
    return Box.symmetric(tables, provenance="test:signaling")


class TestBuiltinBoxes:
    """Tests for the PR family and the mixed-order device"""

    @pytest.mark.parametrize("factory", [pr_box, anti_pr_box])
    def test_pr_family(self, factory):
        box = factory()
        report = causality_report(box)
        assert report.all_passed
        for order in MeasurementOrder:
            assert chsh_value(box, order) == 4.0
        assert classify_chsh(4.0) is CorrelationRegime.SUPERQUANTUM

    def test_mixed_order_device(self):
        box = mixed_order_device()
        for order in MeasurementOrder:
            result = check_no_signaling(box, order)
            assert result.passed and result.max_residual == 0.0
        local = check_local_measurement(box)
        assert local.passed and local.max_residual == 0.0
        nco = check_no_causal_order(box)
        assert not nco.passed
        assert nco.max_residual == 0.5

    def test_mixed_order_report(self):
        report = causality_report(mixed_order_device())
        assert not report.all_passed
        document = report.to_dict()
        assert document["no_causal_order"] == {"pass": False, "max_residual": 0.5}
        assert document["all_pass"] is False

    def test_local_box(self):
        box = local_deterministic_box(0, 1, 1, 0)
        assert causality_report(box).all_passed
        assert chsh_value(box, MeasurementOrder.ALICE_FIRST) == 2.0


class TestEngineBoxes:
    """Causality of boxes produced by the measurement engine"""

    def test_bell_born_passes_everything(self, bell_born_box):
        report = causality_report(bell_born_box)
        assert report.all_passed
        assert report.no_signaling_alice_first.max_residual <= 1e-12
        assert report.no_causal_order.max_residual <= 1e-12

    def test_born_no_signaling(self, born, rng):
        for _ in range(200):
            alice = (random_observable(rng), random_observable(rng))
            bob = (random_observable(rng), random_observable(rng))
            box = assemble_box(random_state(rng), alice, bob, born)
            for order in MeasurementOrder:
                assert check_no_signaling(box, order, 1e-10).passed

    def test_first_mover_never_signals(self, rng):
        for _ in range(200):
            rule = ProbabilityRule.power(rng.uniform(0.2, 12.0))
            alice = (random_observable(rng), random_observable(rng))
            bob = (random_observable(rng), random_observable(rng))
            box = assemble_box(random_state(rng), alice, bob, rule)
            assert signaling_residuals(box, MeasurementOrder.ALICE_FIRST)[Party.ALICE] <= 1e-12
            assert signaling_residuals(box, MeasurementOrder.BOB_FIRST)[Party.BOB] <= 1e-12

    @pytest.mark.parametrize("m", [0.5, 1.0, 4.0, 10.0])
    def test_bell_power_box_is_causal(self, chsh, m):
        alice, bob = chsh
        box = assemble_box(bell_state(), alice, bob, ProbabilityRule.power(m))
        report = causality_report(box, 1e-10)
        assert report.all_passed

    def test_second_mover_can_signal_under_non_born_rule(self):
        state = TwoQubitState.from_vector([math.sqrt(0.5), math.sqrt(0.3), 0.0, math.sqrt(0.2)])
        pair = (QubitObservable.sigma_z(), QubitObservable.sigma_x())
        box = assemble_box(state, pair, pair, ProbabilityRule.power(4))
        residuals = signaling_residuals(box, MeasurementOrder.ALICE_FIRST)
        assert residuals[Party.ALICE] <= 1e-12
        assert residuals[Party.BOB] > 0.3

        finding = signaling_implication_check(box)
        assert MeasurementOrder.ALICE_FIRST in finding.signaling_orders
        assert not finding.no_causal_order
        assert not finding.flagged


class TestCausalityImplications:
    """No causal order against no-signaling"""

    def test_no_causal_order_bounds_signaling(self, rng):
        for _ in range(1000):
            box = random_no_signaling_box(rng)
            nco = order_residual(box)
            assert nco <= 1e-9
            for order in MeasurementOrder:
                assert max(signaling_residuals(box, order).values()) <= nco + 1e-12

    def test_signaling_with_no_causal_order_is_flagged(self):
        finding = signaling_implication_check(signaling_box())
        assert finding.flagged
        assert finding.signaling_orders == [MeasurementOrder.ALICE_FIRST, MeasurementOrder.BOB_FIRST]
        assert finding.to_dict()["flagged"] is True

    def test_pr_box_not_flagged(self):
        finding = signaling_implication_check(pr_box())
        assert not finding.flagged
        assert finding.explanation == "no signaling"


class TestChsh:
    """Tests for CHSH classification"""

    @pytest.mark.parametrize("value,regime", [
        (1.9, CorrelationRegime.LOCAL),
        (2.0, CorrelationRegime.LOCAL),
        (2 * math.sqrt(2), CorrelationRegime.QUANTUM),
        (3.5, CorrelationRegime.SUPERQUANTUM),
        (4.5, CorrelationRegime.INVALID)
    ])
    def test_classify(self, value, regime):
        assert classify_chsh(value) is regime


class TestBoxValidation:
    """Tests for box construction"""

    def test_missing_tables(self):
        table = JointDistribution(np.full((2, 2), 0.25))
        with pytest.raises(ValidationError):
            Box(alice_first={(0, 0): table}, bob_first={pair: table for pair in INPUT_PAIRS})

    def test_unnormalized_table(self):
        with pytest.raises(ValidationError):
            JointDistribution(np.full((2, 2), 0.3))

    def test_negative_entry(self):
        with pytest.raises(ValidationError):
            JointDistribution(np.array([[1.2, -0.2], [0.0, 0.0]]))

    def test_tables_are_read_only(self):
        table = JointDistribution(np.full((2, 2), 0.25))
        with pytest.raises(ValueError):
            table.table[0, 0] = 1.0


class TestBoxAnalysisService:
    """Tests for the service object and its settings"""

    @staticmethod
    def nudged_pr_box() -> Box:
        alice_first = pr_box().array(MeasurementOrder.ALICE_FIRST).copy()
        bob_first = pr_box().array(MeasurementOrder.BOB_FIRST)
        alice_first[0, 0, 0, 0] -= 1e-6
        alice_first[0, 0, 1, 1] += 1e-6
        return Box.from_arrays(alice_first, bob_first, provenance="test:nudged")

    def test_report_tolerance_from_settings(self):
        box = self.nudged_pr_box()
        strict = BoxAnalysisService()
        loose = BoxAnalysisService(Settings(report_tolerance=1e-5))
        assert not strict.check_no_signaling(box, MeasurementOrder.ALICE_FIRST).passed
        assert loose.check_no_signaling(box, MeasurementOrder.ALICE_FIRST).passed
        assert loose.causality_report(box).all_passed
        assert not strict.causality_report(box).all_passed
        assert strict.order_residual(box) == pytest.approx(1e-6, abs=1e-15)

    def test_explicit_tolerance_wins(self):
        box = self.nudged_pr_box()
        service = BoxAnalysisService(Settings(report_tolerance=1e-5))
        assert not service.check_no_causal_order(box, tol=1e-9).passed
        assert service.classify_chsh(2.0 + 1e-6) is CorrelationRegime.LOCAL
