"""Out-of-Order Evaluation MCP Tools."""

from .classify import register_classify_tools
from .evaluate import register_evaluate_tools
from .fooling import register_fooling_tools
from .measure import register_measure_tools

__all__ = [
    "register_classify_tools",
    "register_evaluate_tools",
    "register_fooling_tools",
    "register_measure_tools",
]
