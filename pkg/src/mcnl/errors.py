"""Error taxonomy shared by the library, the service, and the CLI.

Three failure classes are distinguished because callers react differently:
bad arguments (exit 2 / HTTP 422), exhausted resource budgets (exit 3), and
unreadable input files (exit 4). Everything derives from McnlError so library
users can catch one base type.
"""


class McnlError(Exception):
    code = "error"


class ValidationError(McnlError, ValueError):
    # domain violations: bad sizes, out-of-range parameters, rank deficiency
    code = "validation"


class BudgetError(McnlError, RuntimeError):
    # a configured resource limit was exceeded; message names the limit
    code = "budget"


class ParseError(McnlError, ValueError):
    # malformed circuit / truth-table / code files; message carries a line number
    code = "parse"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
