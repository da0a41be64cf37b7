"""Evaluation Tools.

Tools for running an out-of-order evaluator on a stream: evaluate_stream.
"""

from fastmcp import Context, FastMCP

from ..catalog import resolve_subject
from ..errors import OutOfOrderError
from ..evaluators.registry import build_evaluator
from ..evaluators.trace import parse_trace
from ..harness import run_events
from ..langkit import SyntacticStructure


def register_evaluate_tools(mcp: FastMCP) -> None:
    """Register evaluation tools with the MCP server."""

    @mcp.tool(
        name="evaluate_stream",
        description="Decide membership (regex) or compute the product (table) of a word streamed out of order, and report the evaluator's peak state size in bits.",
    )
    async def evaluate_stream(
        ctx: Context,
        trace: str,
        regex: str | None = None,
        alphabet: str | None = None,
        table: str | None = None,
        view: str | None = None,
        evaluator: str = "auto",
    ) -> dict:
        """Evaluate a stream trace.

        Args:
            trace: "n=N" on the first line, then "<pos> <letter>" lines in streaming order.
            regex: Regular expression of the language (with alphabet).
            alphabet: Letters of the alphabet.
            table: Multiplication table text, instead of a regex.
            view: "monoid" or "semigroup".
            evaluator: Evaluator name, or "auto" to pick the tightest applicable one.
        """
        try:
            subject = resolve_subject(regex=regex, alphabet=alphabet, table=table, view=view)
            parsed = parse_trace(trace)
            is_language = isinstance(subject, SyntacticStructure)
            machine = build_evaluator(evaluator, subject)
            answer, peak = run_events(machine, parsed.length, parsed.events(None if is_language else subject))
            result = {"success": True, "evaluator": machine.name, "max_state_bits": peak}
            if is_language:
                result["accepted"] = bool(answer)
            else:
                result["element"] = subject.name(answer)
            return result
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}
