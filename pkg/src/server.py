"""FastMCP Server Definition for out-of-order evaluation.

This module creates the FastMCP instance, with Keycard authentication when it
is configured, and registers all tools.
"""

import logging
import os

from fastmcp import FastMCP

from .auth import SERVER_NAME, get_auth_provider
from .config import get_settings
from .tools import (
    register_classify_tools,
    register_evaluate_tools,
    register_fooling_tools,
    register_measure_tools,
)

logger = logging.getLogger(__name__)


def create_mcp_server() -> FastMCP:
    """Create and configure the FastMCP server instance.

    Returns:
        Configured FastMCP instance with all tools registered.
    """
    provider = get_auth_provider()
    auth = provider.get_remote_auth_provider() if provider is not None else None

    mcp = FastMCP(
        SERVER_NAME,
        auth=auth,
        instructions="""Out-of-order evaluation of regular languages and finite semigroups.

The letters of a word arrive as (letter, position, length) triples in any order.
This server provides tools to:
- Classify how much memory deciding a language (or evaluating a monoid or
  semigroup) needs in that setting: constant, logarithmic or linear
- Run a streaming evaluator on a trace and report its peak state size in bits
- Build and verify fooling sets, and compute exact one-way lower bounds
- Profile an evaluator's state size over growing word lengths

Regexes use letters, (), |, *, + and . over an explicit alphabet. Tables use
the line-based format 'elements: ...', optional 'identity: ...', then one row
per element.
""",
    )

    register_classify_tools(mcp)
    register_evaluate_tools(mcp)
    register_fooling_tools(mcp)
    register_measure_tools(mcp)

    return mcp


mcp = create_mcp_server()


if __name__ == "__main__":
    logging.basicConfig(level=get_settings().log_level)

    port = int(os.getenv("PORT", 8000))
    logger.info("Starting %s on http://0.0.0.0:%d/mcp", SERVER_NAME, port)

    mcp.run(
        transport="streamable-http",
        host="0.0.0.0",
        port=port,
    )
