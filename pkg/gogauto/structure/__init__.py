"""
Construction and verification of the asynchronous automatic structure.

``language_fsa`` builds the normal-form language automaton, ``constants`` and ``departure`` measure
the constants of the structure, ``multiplier`` builds the two-tape multiplier automata and ``verify``
runs all checks.
"""
