"""Error hierarchy. Each class carries the CLI exit code it maps to."""


class KBGeomError(Exception):
    exit_code = 2


class ParseError(KBGeomError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {msg}" if line else msg)
        self.line = line
        self.col = col


class LanguageError(KBGeomError):
    """An axiom does not fit the KB's language tag."""


class UnsupportedFragment(KBGeomError):
    """A method or reasoner was handed an axiom shape it has no semantics for."""


class DimensionMismatch(KBGeomError, ValueError):
    pass


class PreconditionError(KBGeomError):
    pass


class ResourceCapError(KBGeomError):
    exit_code = 3
