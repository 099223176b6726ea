import logging
from dataclasses import dataclass, field

from beartype.typing import Dict, List, Optional, Tuple

from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import NormalForm, nf_append, normalize_word, prefix_images
from gogauto.structure.language_fsa import LanguageFSA
from gogauto.structure.word_metric import WordMetric
from gogauto.utils.typing import Word


@dataclass
class LanguageSample:
    """
    The accepted words of length at most ``max_len`` with their normal forms.

    ``fibers`` maps a normal form to all of its representatives in the sample. Every representative of
    an element has the same length, so a fiber is complete as soon as one representative is present.
    """

    gog: GraphOfGroups
    max_len: int
    words: List[Word]
    forms: Dict[Word, NormalForm]
    fibers: Dict[NormalForm, List[Word]]
    _prefixes: Dict[Word, List[NormalForm]] = field(default_factory=dict, repr=False)

    def prefixes(self, word: Word) -> List[NormalForm]:
        """Normal forms of the prefixes of ``word``, the vertices of its path."""
        if word not in self._prefixes:
            if word:
                parent = self.prefixes(word[:-1])
                self._prefixes[word] = parent + [nf_append(self.gog, parent[-1], word[-1])]
            else:
                self._prefixes[word] = prefix_images(self.gog, word)
        return self._prefixes[word]


@dataclass
class DistanceCache:
    """Memoised d_A between normal forms, bounded by the radius of ``metric``."""

    metric: WordMetric
    cache: Dict[Tuple[NormalForm, NormalForm], int] = field(default_factory=dict, repr=False)

    def __call__(self, x: NormalForm, y: NormalForm) -> int:
        if x == y:
            return 0
        key = (x, y) if hash(x) <= hash(y) else (y, x)
        value = self.cache.get(key)
        if value is None:
            value = self.metric.bounded_distance(x, y)
            self.cache[key] = value
        return value

    def hausdorff(self, first: List[NormalForm], second: List[NormalForm], limit: Optional[int] = None) -> int:
        """
        Hausdorff distance between two vertex sequences.

        Args:
            first: vertices of the first path
            second: vertices of the second path
            limit: stop early once the distance is known to exceed this value

        Returns:
            The Hausdorff distance, or a value above ``limit`` when stopped early.
        """
        worst = 0
        for points, others in ((first, second), (second, first)):
            for p in points:
                nearest = min(self(p, q) for q in others)
                worst = max(worst, nearest)
                if limit is not None and worst > limit:
                    return worst
        return worst


def sample_language(gog: GraphOfGroups, language: LanguageFSA, max_len: int, cap: Optional[int] = None) -> LanguageSample:
    """
    Enumerate the accepted words up to ``max_len`` and group them by element.

    Raises:
        CapacityError: more than ``cap`` accepted words.
    """
    cap = gog.options.enumeration_cap if cap is None else cap
    words = language.enumerate(max_len, cap)
    forms: Dict[Word, NormalForm] = {}
    fibers: Dict[NormalForm, List[Word]] = {}
    for word in words:
        nf = normalize_word(gog, word)
        forms[word] = nf
        fibers.setdefault(nf, []).append(word)
    logging.log(logging.INFO, f"  {len(words)} accepted words up to length {max_len}, {len(fibers)} elements")
    return LanguageSample(gog, max_len, words, forms, fibers)
