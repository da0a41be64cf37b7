"""Keycard Authentication Provider for the tool server.

Authentication is optional: without ``KEYCARD_ZONE_ID`` the server runs
unauthenticated, which is what local use and the test suite do.
"""

import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from keycardai.mcp.integrations.fastmcp import AuthProvider, ClientSecret

logger = logging.getLogger(__name__)

load_dotenv()

SERVER_NAME = "Out-of-Order Evaluation MCP Server"


@lru_cache(maxsize=1)
def get_auth_provider() -> AuthProvider | None:
    """Keycard ``AuthProvider`` built from the environment, or None when disabled.

    Raises:
        ValueError: If a zone is configured without client credentials.
    """
    zone_id = os.getenv("KEYCARD_ZONE_ID")
    if not zone_id:
        logger.info("KEYCARD_ZONE_ID is not set, serving without authentication")
        return None

    client_id = os.getenv("KEYCARD_CLIENT_ID")
    client_secret = os.getenv("KEYCARD_CLIENT_SECRET")
    if not client_id or not client_secret:
        raise ValueError("KEYCARD_CLIENT_ID and KEYCARD_CLIENT_SECRET must be set with KEYCARD_ZONE_ID")

    return AuthProvider(
        zone_id=zone_id,
        mcp_server_name=SERVER_NAME,
        mcp_server_url=os.getenv("MCP_SERVER_URL", "http://localhost:8000/"),
        application_credential=ClientSecret((client_id, client_secret)),
    )
