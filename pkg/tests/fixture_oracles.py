"""
Independent models of the fixture groups, used only to check the library against.

Each oracle maps every letter of the fixture's structure alphabet to a group element in a faithful
representation that shares no code with ``gogauto``:

- ``FreeProductOracle``: Z/2 * Z/3 as alternating syllable sequences
- ``AffineOracle``: BS(1,2) as affine maps x -> s*x + c with rational coefficients
- ``DirectProductOracle``: F2 x Z as (reduced word, integer)
- ``FreeOracle``: F2 as reduced words
"""

import os
from fractions import Fraction
from itertools import product

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


def reduce_free(word):
    stack = []
    for letter in word:
        if letter == "1":
            continue
        inverse = letter[:-1] if letter.endswith("'") else letter + "'"
        if stack and stack[-1] == inverse:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert_free(word):
    return tuple(letter[:-1] if letter.endswith("'") else letter + "'" for letter in reversed(word))


def words_up_to(alphabet, max_len):
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


class FreeOracle:
    """F2 = <x, y>; the structure alphabet is just B."""

    def letter(self, name):
        return reduce_free((name,))

    def multiply(self, g, h):
        return reduce_free(g + h)

    def evaluate(self, word):
        element = ()
        for name in word:
            element = self.multiply(element, self.letter(name))
        return element


class FreeProductOracle(FreeOracle):
    """
    Z/2 * Z/3 = <a> * <b> with the edge e in the spanning tree.

    Elements are tuples of (generator, exponent) syllables with alternating generators and nonzero
    exponents modulo the generator's order.
    """

    ORDERS = {"a": 2, "b": 3}

    def _power(self, generator, exponent):
        exponent %= self.ORDERS[generator]
        return ((generator, exponent),) if exponent else ()

    def letter(self, name):
        inverse = name.endswith("'")
        base = name[:-1] if inverse else name
        sign = -1 if inverse else 1
        if base in ("1", "e", "e~"):
            return ()
        if base == "a":
            return self._power("a", sign)
        if base.startswith("e~."):
            # transversal of the trivial subgroup in <b>: b^0, b, b^-1
            k = int(base.split(".")[1])
            return self._power("b", sign * (0, 1, -1)[k])
        if base.startswith("e."):
            return self._power("a", sign * int(base.split(".")[1]))
        raise KeyError(name)

    def multiply(self, g, h):
        result = list(g)
        for generator, exponent in h:
            if result and result[-1][0] == generator:
                _, previous = result.pop()
                result.extend(self._power(generator, previous + exponent))
            else:
                result.append((generator, exponent))
        return tuple(result)


class AffineOracle(FreeOracle):
    """
    BS(1,2) with a -> (x -> x + 1) and t -> (x -> x / 2), so that t^-1 a t = a^2.

    Elements are pairs (s, c) for x -> s*x + c and the product applies the right factor first.
    """

    def letter(self, name):
        inverse = name.endswith("'")
        base = name[:-1] if inverse else name
        if base == "1" or base == "t.0" or base == "t~.0":
            element = (Fraction(1), Fraction(0))
        elif base == "a" or base == "t~.1":
            element = (Fraction(1), Fraction(1))
        elif base == "t":
            element = (Fraction(1, 2), Fraction(0))
        elif base == "t~":
            element = (Fraction(2), Fraction(0))
        else:
            raise KeyError(name)
        return self.inverse(element) if inverse else element

    @staticmethod
    def inverse(g):
        s, c = g
        return (1 / s, -c / s)

    def multiply(self, g, h):
        (s1, c1), (s2, c2) = g, h
        return (s1 * s2, s1 * c2 + c1)

    def evaluate(self, word):
        element = (Fraction(1), Fraction(0))
        for name in word:
            element = self.multiply(element, self.letter(name))
        return element


class DirectProductOracle(FreeOracle):
    """F2 x Z with the loop t generating the central Z factor."""

    def letter(self, name):
        inverse = name.endswith("'")
        base = name[:-1] if inverse else name
        sign = -1 if inverse else 1
        if base in ("t.0", "t~.0", "1"):
            return ((), 0)
        if base == "t":
            return ((), sign)
        if base == "t~":
            return ((), -sign)
        return (reduce_free((name,)), 0)

    def multiply(self, g, h):
        return (reduce_free(g[0] + h[0]), g[1] + h[1])

    def evaluate(self, word):
        element = ((), 0)
        for name in word:
            element = self.multiply(element, self.letter(name))
        return element


ORACLES = {
    "f2.gog": FreeOracle,
    "modular.gog": FreeProductOracle,
    "bs12.gog": AffineOracle,
    "f2xz.gog": DirectProductOracle,
}
