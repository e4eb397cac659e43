"""
BellBox - Order-Sensitive Nonlocal Box Simulator
Version: 0.1.0
"""

__version__ = "0.1.0"
