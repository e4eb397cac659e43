"""
Box Analysis Service - causality conditions and CHSH evaluation

No-signaling compares marginals within one order; local measurement and
no causal order compare the two orders.
"""
from typing import Dict, Optional
import numpy as np
from src.config.constants import (
    MeasurementOrder,
    Party,
    CorrelationRegime,
    LOCAL_BOUND,
    TSIRELSON_BOUND,
    NO_SIGNALING_BOUND
)
from src.config.settings import Settings, get_settings
from src.domain.entities.box import Box
from src.domain.entities.report import CausalityReport, ConditionResult, SignalingFinding
from src.utilities.logger import get_logger

logger = get_logger(__name__)


class BoxAnalysisService:
    """Causality checks and CHSH evaluation on finished boxes"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.report_tolerance = self.settings.report_tolerance

    def _tolerance(self, tol: Optional[float]) -> float:
        return self.report_tolerance if tol is None else tol

    @staticmethod
    def signaling_residuals(box: Box, order: MeasurementOrder) -> Dict[Party, float]:
        """
        Dependence of each party's marginal on the other party's input

        Returns:
            Party -> max |marginal(own input, other input) - marginal(own input, flipped other input)|
        """
        tables = box.array(order)
        alice = tables.sum(axis=3)  # [x, y, a]
        bob = tables.sum(axis=2)  # [x, y, b]
        return {
            Party.ALICE: float(np.max(np.abs(alice[:, 0, :] - alice[:, 1, :]))),
            Party.BOB: float(np.max(np.abs(bob[0, :, :] - bob[1, :, :])))
        }

    def check_no_signaling(self, box: Box, order: MeasurementOrder, tol: Optional[float] = None) -> ConditionResult:
        """No-signaling within one measurement order"""
        residual = max(self.signaling_residuals(box, order).values())
        return ConditionResult.from_residual(residual, self._tolerance(tol))

    @staticmethod
    def local_marginals(box: Box, order: MeasurementOrder) -> Dict[Party, np.ndarray]:
        """Input-averaged single-party marginals P(a|x) and P(b|y)"""
        tables = box.array(order)
        return {
            Party.ALICE: tables.sum(axis=(1, 3)) / 2.0,  # [x, a]
            Party.BOB: tables.sum(axis=(0, 2)) / 2.0  # [y, b]
        }

    def check_local_measurement(self, box: Box, tol: Optional[float] = None) -> ConditionResult:
        """Single-party marginals agree between Alice-first and Bob-first"""
        first = self.local_marginals(box, MeasurementOrder.ALICE_FIRST)
        second = self.local_marginals(box, MeasurementOrder.BOB_FIRST)
        residual = max(float(np.max(np.abs(first[party] - second[party]))) for party in Party)
        return ConditionResult.from_residual(residual, self._tolerance(tol))

    @staticmethod
    def order_residual(box: Box) -> float:
        """max |P_A(ab|xy) - P_B(ab|xy)|"""
        difference = box.array(MeasurementOrder.ALICE_FIRST) - box.array(MeasurementOrder.BOB_FIRST)
        return float(np.max(np.abs(difference)))

    def check_no_causal_order(self, box: Box, tol: Optional[float] = None) -> ConditionResult:
        """Full joint tables agree between the two orders"""
        return ConditionResult.from_residual(self.order_residual(box), self._tolerance(tol))

    @staticmethod
    def correlators(box: Box, order: MeasurementOrder) -> np.ndarray:
        """E(x, y) = sum_ab (-1)^(a xor b) P(ab|xy), indexed [x, y]"""
        tables = box.array(order)
        return tables[:, :, 0, 0] + tables[:, :, 1, 1] - tables[:, :, 0, 1] - tables[:, :, 1, 0]

    def chsh_value(self, box: Box, order: MeasurementOrder) -> float:
        """|E(0,0) + E(0,1) + E(1,0) - E(1,1)|"""
        e = self.correlators(box, order)
        return float(abs(e[0, 0] + e[0, 1] + e[1, 0] - e[1, 1]))

    def classify_chsh(self, value: float, tol: Optional[float] = None) -> CorrelationRegime:
        """Label a CHSH value by the bound it respects"""
        tol = self._tolerance(tol)
        if value <= LOCAL_BOUND + tol:
            return CorrelationRegime.LOCAL
        if value <= TSIRELSON_BOUND + tol:
            return CorrelationRegime.QUANTUM
        if value <= NO_SIGNALING_BOUND + tol:
            return CorrelationRegime.SUPERQUANTUM
        return CorrelationRegime.INVALID

    def causality_report(self, box: Box, tol: Optional[float] = None) -> CausalityReport:
        """Run all causality checks on a box"""
        tol = self._tolerance(tol)
        report = CausalityReport(
            no_signaling_alice_first=self.check_no_signaling(box, MeasurementOrder.ALICE_FIRST, tol),
            no_signaling_bob_first=self.check_no_signaling(box, MeasurementOrder.BOB_FIRST, tol),
            local_measurement=self.check_local_measurement(box, tol),
            no_causal_order=self.check_no_causal_order(box, tol),
            tolerance=tol
        )
        logger.info(f"Causality report for {box.provenance or 'box'}: all pass = {report.all_passed}")
        return report

    def signaling_implication_check(self, box: Box, tol: Optional[float] = None) -> SignalingFinding:
        """
        Look for signaling and no causal order in the same box

        Equal tables in both orders make Alice's Alice-first marginal, which
        cannot depend on Bob's later input, equal to her Bob-first marginal; so
        any signaling in either order would let a party read the other's input
        before it is chosen. A box showing both is flagged.
        """
        tol = self._tolerance(tol)
        residual_a = max(self.signaling_residuals(box, MeasurementOrder.ALICE_FIRST).values())
        residual_b = max(self.signaling_residuals(box, MeasurementOrder.BOB_FIRST).values())
        orders = [
            order for order, residual in (
                (MeasurementOrder.ALICE_FIRST, residual_a),
                (MeasurementOrder.BOB_FIRST, residual_b)
            ) if residual > tol
        ]
        nco = self.order_residual(box)
        finding = SignalingFinding(
            signaling_orders=orders,
            no_causal_order=nco <= tol,
            nco_residual=nco,
            signaling_residual_alice_first=residual_a,
            signaling_residual_bob_first=residual_b
        )
        if finding.flagged:
            logger.warning(f"Box {box.provenance or ''} is inconsistent with causality: {finding.explanation}")
        return finding


_service = BoxAnalysisService()

signaling_residuals = _service.signaling_residuals
check_no_signaling = _service.check_no_signaling
local_marginals = _service.local_marginals
check_local_measurement = _service.check_local_measurement
order_residual = _service.order_residual
check_no_causal_order = _service.check_no_causal_order
correlators = _service.correlators
chsh_value = _service.chsh_value
classify_chsh = _service.classify_chsh
causality_report = _service.causality_report
signaling_implication_check = _service.signaling_implication_check
