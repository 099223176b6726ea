from enum import Enum


class VertexGroupKind(Enum):
    FINITE = "finite"
    FREE = "free"

    @classmethod
    def parse(cls, text: str) -> "VertexGroupKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown vertex group kind '{text}', expected 'finite' or 'free'") from None


class LetterKind(Enum):
    EDGE = "edge"
    BASE = "base"
    TRANSVERSAL = "transversal"


################################################################
# state kinds of the normal-form language automaton


class LanguageStateKind(Enum):
    ORIGIN = "o"
    ORIGIN_SYLLABLE = "(o,s,e)"
    SYLLABLE = "(s,e)"
    TURN = "(e,s',e')"
    CONE_TYPE = "CT"


################################################################
# five-class partition of asynchronous two-tape automata


class AsyncStateClass(Enum):
    LEFT = "S_L"
    LEFT_DOLLAR = "S_L$"
    RIGHT = "S_R"
    RIGHT_DOLLAR = "S_R$"
    END = "s$"

    def reads_left(self) -> bool:
        return self in (AsyncStateClass.LEFT, AsyncStateClass.LEFT_DOLLAR)

    def reads_right(self) -> bool:
        return self in (AsyncStateClass.RIGHT, AsyncStateClass.RIGHT_DOLLAR)

    def is_dollar_class(self) -> bool:
        return self in (AsyncStateClass.LEFT_DOLLAR, AsyncStateClass.RIGHT_DOLLAR)


class DepartureMethod(Enum):
    EXACT = "exact"
    EMPIRICAL = "empirical"


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.PASS if ok else cls.FAIL

    def __bool__(self):
        return self is Verdict.PASS
