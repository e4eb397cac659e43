"""Domain layer - states, observables, rules and boxes"""
from src.domain.value_objects.amplitude import Amplitude
from src.domain.value_objects.observable import QubitObservable, chsh_observables
from src.domain.value_objects.probability_rule import ProbabilityRule, eval_rule
from src.domain.entities.state import TwoQubitState, make_state, bell_state
from src.domain.entities.box import Box, JointDistribution
from src.domain.entities.report import CausalityReport, ConditionResult, SignalingFinding

__all__ = [
    "Amplitude",
    "QubitObservable",
    "chsh_observables",
    "ProbabilityRule",
    "eval_rule",
    "TwoQubitState",
    "make_state",
    "bell_state",
    "Box",
    "JointDistribution",
    "CausalityReport",
    "ConditionResult",
    "SignalingFinding"
]
