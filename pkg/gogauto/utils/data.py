from math import floor

from beartype import beartype as typechecker
from beartype.typing import Iterable, Sequence, Tuple, Union

from gogauto.utils.typing import Word

EMPTY_WORD_SYMBOL = "ε"


def scale_time(seconds: Union[int, float]) -> str:
    """
    Render a duration using the largest sensible units.

    Args:
        seconds: number of seconds

    Returns:
        String such as ``1min 2.5s`` or ``0.0123s``.
    """
    hours = floor(seconds / 3600)
    seconds = seconds - hours * 3600
    minutes = floor(seconds / 60)
    seconds = seconds - minutes * 60

    if hours > 0:
        return f"{hours}hours {minutes}min {seconds:.4g}s"
    if minutes > 0:
        return f"{minutes}min {seconds:.4g}s"
    return f"{seconds:.4g}s"


def letter_order(letters: Sequence[str]) -> dict:
    """Map each letter to its position, the key used for shortlex comparisons."""
    return {letter: position for position, letter in enumerate(letters)}


def shortlex_key(word: Word, order: dict) -> Tuple[int, Tuple[int, ...]]:
    """
    Sort key realising the shortlex order: shorter words first, then lexicographic in ``order``.

    Args:
        word: word to rank
        order: letter positions, see ``letter_order``

    Returns:
        Tuple comparable with the keys of other words over the same letters.
    """
    return len(word), tuple(order[letter] for letter in word)


@typechecker
def format_word(word: Iterable[str]) -> str:
    """Space separated letters, ``ε`` for the empty word."""
    word = tuple(word)
    return " ".join(word) if word else EMPTY_WORD_SYMBOL


@typechecker
def split_word(text: str) -> Word:
    """
    Split whitespace separated letter names. ``ε`` and blank text are the empty word.

    Letters are not validated here; callers check them against their own alphabet.
    """
    tokens = text.split()
    if tokens == [EMPTY_WORD_SYMBOL]:
        return ()
    return tuple(tokens)


def invert_letter(letter: str) -> str:
    """Formal inverse of a letter name using the trailing-apostrophe convention."""
    return letter[:-1] if letter.endswith("'") else letter + "'"
