class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class SpecSyntaxError(ValueError):
    """Syntax error in a group-spec file or element literal."""

    def __init__(self, message: str, line: int = 1, column: int = 1, text: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{line}:{column}: {message}")

    def render(self) -> str:
        """Message plus the offending source line with a caret under the column."""
        lines = self.text.splitlines() or [""]
        src = lines[self.line - 1] if 0 < self.line <= len(lines) else ""
        return f"{self}\n  {src}\n  {' ' * (self.column - 1)}^"
