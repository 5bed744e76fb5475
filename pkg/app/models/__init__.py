"""
Models module - Pydantic schemas for vectors, verdicts and reports
"""

__all__ = ["ExponentVector", "PairExponents", "AcmVerdict", "Method", "RunConfig"]

from app.models.schemas import AcmVerdict, ExponentVector, Method, PairExponents, RunConfig
