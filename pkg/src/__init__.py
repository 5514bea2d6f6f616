"""
Unrealizability Proof Checker 패키지
"""

__version__ = "0.1.0"
