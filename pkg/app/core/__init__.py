"""
Core configuration and resource limits
"""

__all__ = ["settings", "get_settings", "ResourceLimitError", "ensure_within", "WorkBudget"]

from app.core.config import get_settings, settings
from app.core.limits import ResourceLimitError, WorkBudget, ensure_within
