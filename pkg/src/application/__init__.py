"""Application Services"""
from src.application.services.measurement_service import assemble_box, joint_distribution
from src.application.services.box_analysis_service import causality_report, chsh_value

__all__ = ["assemble_box", "joint_distribution", "causality_report", "chsh_value"]
