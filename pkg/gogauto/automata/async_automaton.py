"""
Two-tape asynchronous automata.

States are partitioned into five classes. States in S_L and S_L$ read the left tape, states in
S_R and S_R$ read the right tape, and the single state of class s$ is the only final state. A pair
(W_L, W_R) is accepted when some shuffle of W_L$ and W_R$ labels a path from the initial state to
the final state; the state class decides at each step which tape is read.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from beartype import beartype as typechecker
from beartype.typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from gogauto.enums import AsyncStateClass
from gogauto.errors import InputError
from gogauto.utils.data import format_word
from gogauto.utils.typing import Word

DOLLAR = "$"
LEFT_TAPE = "L"
RIGHT_TAPE = "R"


@dataclass(frozen=True)
class AsyncAutomaton:
    """
    Args:
        alphabet: letters of A; ``$`` is implicit
        classes: state name to state class, in a fixed state order
        initial: initial state, ``None`` for an automaton accepting nothing
        edges: ``(source, symbol, target)`` triples, at most one per (source, symbol)
    """

    alphabet: Tuple[str, ...]
    classes: Dict[str, AsyncStateClass]
    initial: Optional[str]
    edges: Tuple[Tuple[str, str, str], ...]
    name: str = field(default="async", compare=False)

    def __post_init__(self):
        if DOLLAR in self.alphabet:
            raise InputError(f"'{DOLLAR}' is reserved for the end marker")
        if self.initial is not None and self.initial not in self.classes:
            raise InputError(f"initial state '{self.initial}' is not a state")
        ends = [state for state, cls in self.classes.items() if cls is AsyncStateClass.END]
        if len(ends) > 1:
            raise InputError(f"more than one state of class {AsyncStateClass.END.value}: {', '.join(ends)}")
        symbols = set(self.alphabet) | {DOLLAR}
        seen = set()
        for source, symbol, target in self.edges:
            if source not in self.classes or target not in self.classes:
                raise InputError(f"edge {source} -{symbol}-> {target} uses an unknown state")
            if symbol not in symbols:
                raise InputError(f"edge {source} -{symbol}-> {target} has a label outside A and '{DOLLAR}'")
            if (source, symbol) in seen:
                raise InputError(f"two edges labelled '{symbol}' leave state {source}")
            seen.add((source, symbol))

    @property
    def states(self) -> List[str]:
        return list(self.classes)

    @property
    def final(self) -> Optional[str]:
        for state, cls in self.classes.items():
            if cls is AsyncStateClass.END:
                return state
        return None

    @cached_property
    def delta(self) -> Dict[Tuple[str, str], str]:
        return {(source, symbol): target for source, symbol, target in self.edges}

    def census(self) -> Dict[str, int]:
        counts = {cls.value: 0 for cls in AsyncStateClass}
        for cls in self.classes.values():
            counts[cls.value] += 1
        return counts

    def validate_shape(self) -> "ShapeDiagnostics":
        return async_validate_shape(self)

    def accept_pair(self, left: Sequence[str], right: Sequence[str]) -> bool:
        return self.accepting_shuffle(left, right) is not None

    def accepting_shuffle(self, left: Sequence[str], right: Sequence[str]) -> Optional["Shuffle"]:
        """
        Breadth-first search over configurations (state, consumed left, consumed right).

        Returns:
            The shuffle traced by the first accepting run, ``None`` if the pair is rejected.

        Raises:
            InputError: a letter outside A on either tape.
        """
        for tape, word in ((LEFT_TAPE, left), (RIGHT_TAPE, right)):
            for position, letter in enumerate(word):
                if letter not in self.letter_set:
                    raise InputError(f"letter '{letter}' at position {position} of tape {tape} is not in the alphabet")
        if self.initial is None:
            return None
        tapes = (tuple(left) + (DOLLAR,), tuple(right) + (DOLLAR,))
        start = (self.initial, 0, 0)
        parents: Dict[Tuple[str, int, int], Optional[Tuple[Tuple[str, int, int], str, str]]] = {start: None}
        queue = deque([start])
        while queue:
            config = queue.popleft()
            state, i, j = config
            cls = self.classes[state]
            if cls is AsyncStateClass.END:
                if i == len(tapes[0]) and j == len(tapes[1]):
                    return self._trace(parents, config)
                continue
            if cls.reads_left() and i < len(tapes[0]):
                symbol, nxt, tape = tapes[0][i], (i + 1, j), LEFT_TAPE
            elif cls.reads_right() and j < len(tapes[1]):
                symbol, nxt, tape = tapes[1][j], (i, j + 1), RIGHT_TAPE
            else:
                continue
            target = self.delta.get((state, symbol))
            if target is None:
                continue
            successor = (target,) + nxt
            if successor not in parents:
                parents[successor] = (config, symbol, tape)
                queue.append(successor)
        return None

    @staticmethod
    def _trace(parents, config) -> "Shuffle":
        symbols: List[str] = []
        tapes: List[str] = []
        while parents[config] is not None:
            config, symbol, tape = parents[config]
            symbols.append(symbol)
            tapes.append(tape)
        return Shuffle(tuple(reversed(symbols)), tuple(reversed(tapes)))

    @cached_property
    def letter_set(self) -> FrozenSet[str]:
        return frozenset(self.alphabet)


@dataclass(frozen=True)
class Shuffle:
    """An interleaving of W_L$ and W_R$; ``tapes[i]`` says which tape symbol ``i`` came from."""

    symbols: Tuple[str, ...]
    tapes: Tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) != len(self.tapes):
            raise InputError("shuffle needs one tape tag per symbol")
        if any(tape not in (LEFT_TAPE, RIGHT_TAPE) for tape in self.tapes):
            raise InputError(f"tape tags must be '{LEFT_TAPE}' or '{RIGHT_TAPE}'")

    def project(self, tape: str) -> Word:
        return tuple(symbol for symbol, owner in zip(self.symbols, self.tapes) if owner == tape)

    @property
    def left(self) -> Word:
        """W_L without its end marker."""
        return self.project(LEFT_TAPE)[:-1]

    @property
    def right(self) -> Word:
        return self.project(RIGHT_TAPE)[:-1]

    def is_valid(self) -> bool:
        return all(self.project(tape).count(DOLLAR) == 1 and self.project(tape)[-1:] == (DOLLAR,) for tape in (LEFT_TAPE, RIGHT_TAPE))

    def describe(self) -> str:
        return " ".join(f"{symbol}/{tape}" for symbol, tape in zip(self.symbols, self.tapes)) or format_word(())


@dataclass
class ShapeDiagnostics:
    """Class-transition rule violations, one ``(edge, rule)`` entry per offending edge."""

    violations: List[Tuple[Tuple[str, str, str], str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> List[str]:
        return [f"{s} -{label}-> {t}: {rule}" for (s, label, t), rule in self.violations]


_DOLLAR_TARGET = {
    AsyncStateClass.LEFT: AsyncStateClass.RIGHT_DOLLAR,
    AsyncStateClass.RIGHT: AsyncStateClass.LEFT_DOLLAR,
    AsyncStateClass.LEFT_DOLLAR: AsyncStateClass.END,
    AsyncStateClass.RIGHT_DOLLAR: AsyncStateClass.END,
}


@typechecker
def async_validate_shape(m: AsyncAutomaton) -> ShapeDiagnostics:
    """
    Check every edge against the class-transition rules.

    Letters from S_L or S_R land in S_L or S_R; letters from S_L$ (S_R$) stay in S_L$ (S_R$);
    ``$`` moves S_L to S_R$, S_R to S_L$ and both dollar classes to s$; nothing leaves s$.

    Args:
        m: automaton to check

    Returns:
        Diagnostics listing every violating edge.
    """
    diagnostics = ShapeDiagnostics()
    for edge in m.edges:
        source, symbol, target = edge
        cls, target_cls = m.classes[source], m.classes[target]
        if cls is AsyncStateClass.END:
            diagnostics.violations.append((edge, f"no edge may leave {AsyncStateClass.END.value}"))
        elif symbol == DOLLAR:
            expected = _DOLLAR_TARGET[cls]
            if target_cls is not expected:
                diagnostics.violations.append((edge, f"'$' from {cls.value} must land in {expected.value}"))
        elif cls.is_dollar_class():
            if target_cls is not cls:
                diagnostics.violations.append((edge, f"letters from {cls.value} must stay in {cls.value}"))
        elif target_cls not in (AsyncStateClass.LEFT, AsyncStateClass.RIGHT):
            diagnostics.violations.append((edge, f"letters from {cls.value} must land in S_L or S_R"))
    return diagnostics


@typechecker
def async_accept_pair(m: AsyncAutomaton, left: Sequence[str], right: Sequence[str]) -> bool:
    return m.accept_pair(left, right)
