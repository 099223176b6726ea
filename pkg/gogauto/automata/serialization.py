"""
Text and DOT renderings of automata.

The text format is line based::

    fsa                                  (or: async)
    alphabet <letter> <letter> ...
    state <name> [initial] [final] [class=<C>]
    edge <from> <label> <to>

Blank lines and lines starting with ``#`` are ignored. State names never contain whitespace.
"""

import re

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Tuple, Union

from gogauto.automata.async_automaton import AsyncAutomaton
from gogauto.automata.fsa import FSA
from gogauto.enums import AsyncStateClass
from gogauto.errors import InputError, SpecSyntaxError

Automaton = Union[FSA, AsyncAutomaton]


@typechecker
def format_automaton(m: Automaton) -> str:
    """Render ``m`` in the line-based text format; states and edges keep their construction order."""
    is_async = isinstance(m, AsyncAutomaton)
    lines = ["async" if is_async else "fsa", " ".join(["alphabet"] + list(m.alphabet))]
    if is_async:
        for state, cls in m.classes.items():
            flags = (["initial"] if state == m.initial else []) + (["final"] if cls is AsyncStateClass.END else [])
            lines.append(" ".join(["state", state] + flags + [f"class={cls.value}"]))
    else:
        for state in m.states:
            flags = (["initial"] if state == m.initial else []) + (["final"] if state in m.finals else [])
            lines.append(" ".join(["state", state] + flags))
    lines += [f"edge {source} {label} {target}" for source, label, target in m.edges]
    return "\n".join(lines) + "\n"


@typechecker
def parse_automaton(text: str) -> Automaton:
    """
    Inverse of ``format_automaton``.

    Args:
        text: automaton in the line-based text format

    Returns:
        ``FSA`` or ``AsyncAutomaton`` depending on the header line.

    Raises:
        SpecSyntaxError: malformed line, with its location.
        InputError: the parsed automaton is inconsistent.
    """
    header = None
    alphabet: Tuple[str, ...] = ()
    states: List[str] = []
    initial = None
    finals = set()
    classes: Dict[str, AsyncStateClass] = {}
    edges = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        column = raw.index(tokens[0]) + 1
        if header is None:
            if tokens != ["fsa"] and tokens != ["async"]:
                raise SpecSyntaxError("expected header 'fsa' or 'async'", number, column)
            header = tokens[0]
        elif tokens[0] == "alphabet":
            alphabet = tuple(tokens[1:])
        elif tokens[0] == "state":
            if len(tokens) < 2:
                raise SpecSyntaxError("state line needs a name", number, column)
            name = tokens[1]
            states.append(name)
            for flag in tokens[2:]:
                if flag == "initial":
                    if initial is not None:
                        raise SpecSyntaxError(f"second initial state '{name}'", number, raw.index(flag) + 1)
                    initial = name
                elif flag == "final":
                    finals.add(name)
                elif flag.startswith("class="):
                    try:
                        classes[name] = AsyncStateClass(flag[len("class=") :])
                    except ValueError:
                        raise SpecSyntaxError(f"unknown state class in '{flag}'", number, raw.index(flag) + 1) from None
                else:
                    raise SpecSyntaxError(f"unknown state flag '{flag}'", number, raw.index(flag) + 1)
            if header == "async" and name not in classes:
                raise SpecSyntaxError(f"state '{name}' of an async automaton needs class=<C>", number, column)
        elif tokens[0] == "edge":
            if len(tokens) != 4:
                raise SpecSyntaxError("edge line must read 'edge <from> <label> <to>'", number, column)
            edges.append(tuple(tokens[1:]))
        else:
            raise SpecSyntaxError(f"unknown keyword '{tokens[0]}'", number, column)
    if header is None:
        raise SpecSyntaxError("missing header", 1)
    if header == "async":
        return AsyncAutomaton(alphabet, classes, initial, tuple(edges))
    if initial is None and states:
        raise InputError("automaton has states but no initial state")
    return FSA(alphabet, tuple(states), initial, frozenset(finals), tuple(edges))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


@typechecker
def export_dot(m: Automaton, name: str = "automaton") -> str:
    """
    Graphviz rendering with nodes and edges in construction order.

    Async states carry ``class=<C>``; the initial state is marked ``initial=true`` and accepting states
    are drawn as double circles.
    """
    lines = [f"digraph {_quote(name)} {{"]
    if isinstance(m, AsyncAutomaton):
        nodes = [(state, state == m.initial, cls is AsyncStateClass.END, cls.value) for state, cls in m.classes.items()]
    else:
        nodes = [(state, state == m.initial, state in m.finals, None) for state in m.states]
    for state, is_initial, is_final, cls in nodes:
        attributes = [f"shape={'doublecircle' if is_final else 'circle'}"]
        if is_initial:
            attributes.append("initial=true")
        if cls is not None:
            attributes.append(f"class={_quote(cls)}")
        lines.append(f"  {_quote(state)} [{', '.join(attributes)}];")
    for source, label, target in m.edges:
        lines.append(f"  {_quote(source)} -> {_quote(target)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r'^\s*"(?:[^"\\]|\\.)*"\s*\[')
_DOT_EDGE = re.compile(r'^\s*"(?:[^"\\]|\\.)*"\s*->\s*"(?:[^"\\]|\\.)*"')


def dot_census(text: str) -> Tuple[int, int]:
    """(node count, edge count) of a DOT text written by ``export_dot``."""
    nodes = edges = 0
    for line in text.splitlines():
        if _DOT_EDGE.match(line):
            edges += 1
        elif _DOT_NODE.match(line):
            nodes += 1
    return nodes, edges
