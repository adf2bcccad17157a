"""Exception hierarchy shared by all modules."""


class HintikkaError(Exception):
    pass


class IllTyped(HintikkaError):
    def __init__(self, position, expected, found):
        self.position = tuple(position)
        self.expected = expected
        self.found = found
        super().__init__(
            f"ill-typed at {list(self.position)}: expected {expected}, found {found}")


class TypeMismatch(HintikkaError):
    pass


class BadPosition(HintikkaError):
    pass


class OpenReplacement(HintikkaError):
    pass


class NotClosed(HintikkaError):
    pass


class NotBoolean(HintikkaError):
    pass


class NotNormal(HintikkaError):
    pass


class UnknownSymbol(HintikkaError):
    pass


class UnknownConnective(HintikkaError):
    pass


class SentenceSyntaxError(HintikkaError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class UniverseMissingType(HintikkaError):
    pass


class UniverseExplosion(HintikkaError):
    pass


class IterationLimit(HintikkaError):
    pass


class NotSaturated(HintikkaError):
    pass


class Contradictory(HintikkaError):
    pass


class OutOfUniverse(HintikkaError):
    pass
