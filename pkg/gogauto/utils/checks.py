from beartype.typing import Iterable

from gogauto.errors import InputError


def check_letters(word: Iterable[str], letters, context: str) -> None:
    """
    Raise if ``word`` uses a letter outside ``letters``.

    Args:
        word: word to check
        letters: container of admissible letter names
        context: short description used in the error message

    Raises:
        InputError: naming the first unknown letter.
    """
    for position, letter in enumerate(word):
        if letter not in letters:
            raise InputError(f"unknown letter '{letter}' at position {position} for {context}")


def check_unique_names(names: Iterable[str], context: str) -> None:
    """Raise ``InputError`` if a name occurs twice."""
    seen = set()
    for name in names:
        if name in seen:
            raise InputError(f"duplicate name '{name}' in {context}")
        seen.add(name)


def check_name(name: str, context: str) -> None:
    """Names end up inside words and automaton state names, so whitespace and apostrophes are rejected."""
    if not name or any(ch.isspace() for ch in name) or "'" in name or name == "ε":
        raise InputError(f"invalid {context} name '{name}'")
