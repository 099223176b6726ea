from gogauto.automata.async_automaton import DOLLAR, AsyncAutomaton, Shuffle, async_accept_pair, async_validate_shape
from gogauto.automata.fsa import FSA, fsa_accept, fsa_determinize, fsa_enumerate, fsa_trim
from gogauto.automata.serialization import dot_census, export_dot, format_automaton, parse_automaton

__all__ = [
    "DOLLAR",
    "FSA",
    "AsyncAutomaton",
    "Shuffle",
    "async_accept_pair",
    "async_validate_shape",
    "dot_census",
    "export_dot",
    "format_automaton",
    "fsa_accept",
    "fsa_determinize",
    "fsa_enumerate",
    "fsa_trim",
    "parse_automaton",
]
