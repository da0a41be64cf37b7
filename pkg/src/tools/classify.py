"""Classification Tools.

Tools for the space regime of a language or a finite algebra:
classify_language, classify_table.
"""

from fastmcp import Context, FastMCP

from ..algebra import FiniteSemigroup, RegimeReport, classify_monoid, classify_semigroup
from ..catalog import resolve_subject
from ..errors import OutOfOrderError


def regime_payload(S: FiniteSemigroup, report: RegimeReport) -> dict:
    witness = report.witness
    return {
        "success": True,
        "subject": report.subject,
        "regime": str(report.regime),
        "variety": report.variety,
        "headline": report.headline(S),
        "elements": list(S.elements),
        "witness": None
        if witness is None
        else {
            "equation": str(witness.equation),
            "assignment": {var: S.name(x) for var, x in witness.assignment.items()},
            "lhs": S.name(witness.lhs_value),
            "rhs": S.name(witness.rhs_value),
        },
    }


def classify(S: FiniteSemigroup) -> dict:
    report = classify_monoid(S) if S.is_monoid else classify_semigroup(S)
    return regime_payload(S, report)


def register_classify_tools(mcp: FastMCP) -> None:
    """Register classification tools with the MCP server."""

    @mcp.tool(
        name="classify_language",
        description="Classify the out-of-order space complexity of a regular language: Constant, Logarithmic, Linear (monoid view) or Constant / AtLeastLogarithmic (semigroup view), with a violated equation as witness.",
    )
    async def classify_language(
        ctx: Context,
        regex: str,
        alphabet: str,
        view: str = "monoid",
    ) -> dict:
        """Classify the syntactic monoid or semigroup of a regex.

        Args:
            regex: Regular expression using letters, (), |, *, + and . (any letter).
            alphabet: Letters of the alphabet, e.g. "ab".
            view: "monoid" or "semigroup".
        """
        try:
            structure = resolve_subject(regex=regex, alphabet=alphabet, view=view)
            return classify(structure.algebra)
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}

    @mcp.tool(
        name="classify_table",
        description="Classify a finite semigroup or monoid given as a multiplication table ('elements: ...', optional 'identity: ...', then one row per element).",
    )
    async def classify_table(
        ctx: Context,
        table: str,
        view: str | None = None,
    ) -> dict:
        """Classify a multiplication table.

        Args:
            table: Table text in the line-based semigroup format.
            view: "semigroup" to ignore a declared identity, "monoid" to require one.
        """
        try:
            return classify(resolve_subject(table=table, view=view))
        except OutOfOrderError as e:
            return {"success": False, "error": e.message, "isError": True}
        except ValueError as e:
            return {"success": False, "error": str(e), "isError": True}
