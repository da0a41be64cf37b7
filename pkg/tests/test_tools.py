"""Tests for the MCP tools, called through an in-memory client."""

import pytest
from fastmcp import Client

Z3_TABLE = "elements: e g g2\nidentity: e\ne g g2\ng g2 e\ng2 e g\n"


async def call(server, tool, **arguments):
    async with Client(server) as client:
        result = await client.call_tool(tool, arguments)
    return result.structured_content


class TestClassifyTools:
    async def test_classify_language(self, mcp_server):
        data = await call(mcp_server, "classify_language", regex="ab", alphabet="ab")
        assert data["success"] is True
        assert data["subject"] == "monoid"
        assert data["regime"] == "Logarithmic"
        assert data["variety"] == "FL∨Com"
        assert data["elements"] == ["1", "a", "b", "ab", "0"]
        assert data["witness"] == {"equation": "COM", "assignment": {"x": "a", "y": "b"}, "lhs": "ab", "rhs": "0"}

    async def test_classify_language_semigroup_view(self, mcp_server):
        data = await call(mcp_server, "classify_language", regex="a.*b", alphabet="ab", view="semigroup")
        assert data["regime"] == "Constant"
        assert data["headline"] == "Constant (Li∨Com)"

    async def test_classify_table(self, mcp_server):
        data = await call(mcp_server, "classify_table", table=Z3_TABLE)
        assert data["success"] is True
        assert data["headline"] == "Constant (Com)"
        assert data["witness"] is None

    @pytest.mark.parametrize(
        ("tool", "arguments", "fragment"),
        [
            ("classify_language", {"regex": "a(", "alphabet": "ab"}, "missing ')'"),
            ("classify_language", {"regex": "ab", "alphabet": "ab", "view": "group"}, "view must be"),
            ("classify_table", {"table": "elements: a\nb\n"}, "unknown element"),
            ("classify_table", {"table": "elements: e g\ne g\ng e\n", "view": "monoid"}, "not a monoid"),
        ],
    )
    async def test_errors(self, mcp_server, tool, arguments, fragment):
        data = await call(mcp_server, tool, **arguments)
        assert data["success"] is False
        assert data["isError"] is True
        assert fragment in data["error"]


class TestEvaluateStream:
    async def test_language(self, mcp_server):
        data = await call(mcp_server, "evaluate_stream", trace="n=3\n3 a\n1 a\n2 b\n", regex="a*b*a*", alphabet="ab")
        assert data["success"] is True
        assert data["evaluator"] == "aba"
        assert data["accepted"] is True
        assert data["max_state_bits"] > 0

    async def test_table(self, mcp_server):
        data = await call(mcp_server, "evaluate_stream", trace="n=2\n2 g2\n1 g2\n", table=Z3_TABLE)
        assert data["element"] == "g"
        assert data["evaluator"] == "commutative"

    async def test_explicit_evaluator(self, mcp_server):
        data = await call(
            mcp_server, "evaluate_stream", trace="n=2\n1 b\n2 a\n", regex="ab", alphabet="ab", evaluator="reference"
        )
        assert data["evaluator"] == "reference"
        assert data["accepted"] is False

    async def test_incomplete_stream(self, mcp_server):
        data = await call(mcp_server, "evaluate_stream", trace="n=3\n1 a\n", regex="ab", alphabet="ab")
        assert data["success"] is False
        assert "never delivered" in data["error"]

    async def test_bad_trace(self, mcp_server):
        data = await call(mcp_server, "evaluate_stream", trace="length 3\n", regex="ab", alphabet="ab")
        assert data["success"] is False
        assert "n=<N>" in data["error"]

    async def test_inapplicable(self, mcp_server):
        data = await call(mcp_server, "evaluate_stream", trace="n=0\n", table=Z3_TABLE, evaluator="abstar")
        assert data["success"] is False
        assert "not an algebra" in data["error"]


class TestFoolingTools:
    async def test_build_and_verify(self, mcp_server):
        data = await call(mcp_server, "build_fooling_set", construction="noncomm", n=4, verify=True, show=2)
        assert data["success"] is True
        assert data["size"] == 4
        assert data["length"] == 8
        assert data["lower_bound_bits"] == 2
        assert len(data["words"]) == 2
        assert data["verified"] is True
        assert data["exhaustive"] is True
        assert data["pairs_checked"] == 6
        assert data["counterexample"] is None

    async def test_unknown_construction(self, mcp_server):
        data = await call(mcp_server, "build_fooling_set", construction="nope", n=3)
        assert data["success"] is False
        assert "unknown construction" in data["error"]

    async def test_one_way_bound_on_regex(self, mcp_server):
        data = await call(mcp_server, "one_way_bound", domain="2", n=3, regex=".*aa.*", alphabet="ab")
        assert data == {"success": True, "n": 3, "domain": [2], "classes": 2, "lower_bound_bits": 1}

    async def test_one_way_bound_on_table(self, mcp_server):
        data = await call(mcp_server, "one_way_bound", domain="1,3", n=3, table=Z3_TABLE)
        # Only the sum of the fixed letters matters.
        assert data["classes"] == 3

    async def test_one_way_bound_from_fooling_set(self, mcp_server):
        data = await call(mcp_server, "one_way_bound", domain="fooling:sigma-aa:2")
        assert data["n"] == 6
        assert data["domain"] == [1, 2, 4, 5]
        assert data["lower_bound_bits"] >= 2

    async def test_one_way_bound_needs_subject(self, mcp_server):
        data = await call(mcp_server, "one_way_bound", domain="1,2", n=4)
        assert data["success"] is False
        assert "give a regex or a table" in data["error"]


class TestMeasureGrowth:
    async def test_constant_profile(self, mcp_server):
        data = await call(mcp_server, "measure_growth", regex="(ab)*", alphabet="ab", view="semigroup", schedule="16,64,256")
        assert data["success"] is True
        assert data["evaluator"] == "abstar"
        assert data["construction"] == "ab-semigroup"
        assert data["model"] == "constant"
        assert [s["n"] for s in data["samples"]] == [16, 64, 256]
        assert data["csv"].startswith("n,max_state_bits,model,fit_error\n")

    async def test_bad_schedule(self, mcp_server):
        data = await call(mcp_server, "measure_growth", regex="ab", alphabet="ab", schedule="64:16:x2")
        assert data["success"] is False
