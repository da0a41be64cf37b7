"""Pytest configuration and fixtures for the out-of-order evaluation tests."""

import pytest
from fastmcp import FastMCP

from src.catalog import example_structure
from src.tools import (
    register_classify_tools,
    register_evaluate_tools,
    register_fooling_tools,
    register_measure_tools,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Pin configuration and disable Keycard for all tests."""
    for name in (
        "OOO_EQUATION_CAP",
        "OOO_MONOID_CAP",
        "OOO_ORACLE_CAP",
        "OOO_FOOLING_PAIR_CAP",
        "OOO_PUMPING_CAP",
        "OOO_LOG_LEVEL",
        "KEYCARD_ZONE_ID",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("OOO_SEED", "0")


@pytest.fixture
def mcp_server():
    """Create a test FastMCP server instance with every tool group."""
    mcp = FastMCP("Test Out-of-Order Evaluation MCP Server")
    register_classify_tools(mcp)
    register_evaluate_tools(mcp)
    register_fooling_tools(mcp)
    register_measure_tools(mcp)
    return mcp


@pytest.fixture(scope="session")
def m_ab():
    """Syntactic monoid of {ab}: 1, a, b, ab, 0."""
    return example_structure("ab")


@pytest.fixture(scope="session")
def m_abba():
    """Syntactic monoid of a*bba*."""
    return example_structure("abba")


@pytest.fixture(scope="session")
def s_abba():
    """Syntactic semigroup of a*bba*."""
    return example_structure("abba-semigroup")


@pytest.fixture(scope="session")
def s_abc():
    """Syntactic semigroup of a*bc*."""
    return example_structure("abc")
