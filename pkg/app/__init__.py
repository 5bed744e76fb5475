"""
acmtetra: ACM classification of tetrahedral curves
Core application package
"""

__version__ = "1.0.0"
