"""Measurement Tools.

Tools for empirical space growth: measure_growth.
"""

import asyncio

from fastmcp import Context, FastMCP

from ..catalog import resolve_subject
from ..errors import OutOfOrderError
from ..evaluators.registry import build_evaluator
from ..harness import growth_profile, parse_schedule


def register_measure_tools(mcp: FastMCP) -> None:
    """Register measurement tools with the MCP server."""

    @mcp.tool(
        name="measure_growth",
        description="Profile an evaluator's worst observed state size over a schedule of word lengths and report the growth model (constant, logarithmic, sqrt, linear, linearithmic) it is consistent with.",
    )
    async def measure_growth(
        ctx: Context,
        regex: str | None = None,
        alphabet: str | None = None,
        table: str | None = None,
        view: str | None = None,
        evaluator: str = "auto",
        schedule: str = "16:1024:x2",
        words: int = 1,
        seed: int = 0,
    ) -> dict:
        """Measure state-size growth.

        Args:
            regex: Regular expression of the language (with alphabet).
            alphabet: Letters of the alphabet.
            table: Multiplication table text, instead of a regex.
            view: "monoid" or "semigroup".
            evaluator: Evaluator name, or "auto".
            schedule: Word lengths, e.g. "16:1024:x2".
            words: Sampled words per length.
            seed: Random seed.
        """
        try:
            subject = resolve_subject(regex=regex, alphabet=alphabet, table=table, view=view)
            lengths = parse_schedule(schedule)
            profile = await asyncio.to_thread(
                growth_profile,
                lambda s: build_evaluator(evaluator, s),
                subject,
                lengths,
                words_per_n=words,
                seed=seed,
            )
            return {
                "success": True,
                "evaluator": profile.evaluator,
                "construction": profile.construction,
                "samples": [{"n": n, "max_state_bits": bits} for n, bits in profile.samples],
                "model": profile.fitted_model,
                "fit_error": profile.fit_error,
                "summary": profile.summary(),
                "csv": profile.to_csv(),
            }
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}
