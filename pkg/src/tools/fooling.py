"""Fooling Set Tools.

Tools for lower-bound certificates: build_fooling_set, one_way_bound.
"""

from fastmcp import Context, FastMCP

from ..catalog import resolve_subject
from ..errors import OutOfOrderError
from ..foolingsets import build_named_fooling, verify_fooling_set
from ..oracles import one_way_classes, parse_domain


def register_fooling_tools(mcp: FastMCP) -> None:
    """Register fooling set and lower bound tools with the MCP server."""

    @mcp.tool(
        name="build_fooling_set",
        description="Build one of the named fooling-set constructions (sigma-aa, noncomm, monlin, stswap, xysep, ab-semigroup, aba) and optionally verify it pair by pair.",
    )
    async def build_fooling_set(
        ctx: Context,
        construction: str,
        n: int,
        verify: bool = False,
        show: int = 8,
    ) -> dict:
        """Build a fooling set.

        Args:
            construction: Construction name.
            n: Size parameter of the construction.
            verify: Check every pair (or a seeded sample above the pair cap).
            show: Number of partial words to include, "_" marking placeholders.
        """
        try:
            F = build_named_fooling(construction, n)
            result = {
                "success": True,
                "construction": F.name,
                "size": F.size,
                "length": F.length,
                "domain": sorted(F.domain),
                "lower_bound_bits": F.lower_bound_bits,
                "words": [F.word(i).format(F.format_cell) for i in range(min(F.size, show))],
            }
            if verify:
                check = verify_fooling_set(F)
                result["verified"] = check.passed
                result["pairs_checked"] = check.pairs_checked
                result["exhaustive"] = check.exhaustive
                result["counterexample"] = list(check.counterexample) if check.counterexample else None
            return result
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}

    @mcp.tool(
        name="one_way_bound",
        description="Exact one-way lower bound in bits for streaming a fixed set of positions first: counts assignments of those positions that no completion tells apart.",
    )
    async def one_way_bound(
        ctx: Context,
        domain: str,
        n: int | None = None,
        regex: str | None = None,
        alphabet: str | None = None,
        table: str | None = None,
        view: str | None = None,
    ) -> dict:
        """Compute a one-way lower bound.

        Args:
            domain: "p1,p2,..." (with n) or "fooling:<construction>:<size>".
            n: Word length, for an explicit domain.
            regex: Regular expression of the language (with alphabet).
            alphabet: Letters of the alphabet.
            table: Multiplication table text, instead of a regex.
            view: "monoid" or "semigroup".
        """
        try:
            length, positions, fallback = parse_domain(domain, n)
            if regex is not None or table is not None:
                subject = resolve_subject(regex=regex, alphabet=alphabet, table=table, view=view)
            elif fallback is not None:
                subject = fallback
            else:
                raise ValueError("give a regex or a table, or a fooling:<construction>:<size> domain")
            classes = one_way_classes(subject, length, positions)
            return {
                "success": True,
                "n": length,
                "domain": positions,
                "classes": classes,
                "lower_bound_bits": (classes - 1).bit_length(),
            }
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}
