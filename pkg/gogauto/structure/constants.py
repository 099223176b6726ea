"""
The constants of the asynchronous automatic structure.

``eta`` bounds how far a single letter moves the base vertex of the Bass-Serre tree, ``zeta`` bounds
the B-length of base-group elements that are A-close to 1, and ``kappa`` is the fellow-traveller
constant measured on the accepted words up to the check length.
"""

import logging
from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Sequence, Tuple

from gogauto.errors import CapacityError, ParameterError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import nf_append, normalize_word
from gogauto.structure.language_fsa import LanguageFSA
from gogauto.structure.sample import DistanceCache, LanguageSample, sample_language
from gogauto.structure.word_metric import WordMetric, word_metric
from gogauto.utils.tictoc import TicToc
from gogauto.utils.typing import Word


@dataclass
class StructureConstants:
    """
    Args:
        eta: largest tree displacement of a letter
        zeta: B-length bound for base-group elements within A-distance 4*eta + 1 of 1
        kappa_empirical: largest Hausdorff distance between accepted paths to adjacent elements
        check_length: length bound N of the measured words
        kappa_previous: the same measurement restricted to words of length at most N - 1
        per_letter: fellow-traveller constant of the pairs (V, W) with π(V)x = π(W), per letter x
        metric_radius: radius of the ball the distances were measured in
        worst_pair: accepted pair (V, W) attaining ``kappa_empirical``
    """

    eta: int
    zeta: int
    kappa_empirical: int
    check_length: int
    kappa_previous: int = 0
    per_letter: Dict[str, int] = field(default_factory=dict)
    metric_radius: int = 0
    worst_pair: Optional[Tuple[Word, Word]] = None

    def __post_init__(self):
        assert self.eta >= 0, "eta must be non-negative."
        assert self.zeta >= 4 * self.eta + 1, "zeta must be at least 4 * eta + 1."
        assert self.kappa_empirical >= self.kappa_previous >= 0, "kappa must be non-negative and non-decreasing in N."

    @property
    def stable(self) -> bool:
        return self.kappa_empirical == self.kappa_previous

    def records(self) -> List[Tuple[str, str]]:
        records = [
            ("ETA", str(self.eta)),
            ("ZETA", str(self.zeta)),
            ("KAPPA", str(self.kappa_empirical)),
            ("KAPPA.PREVIOUS", str(self.kappa_previous)),
            ("KAPPA.STABLE", str(self.stable).lower()),
            ("CHECK_LENGTH", str(self.check_length)),
        ]
        records += [(f"KAPPA.{letter}", str(value)) for letter, value in self.per_letter.items()]
        return records


@typechecker
def compute_eta(gog: GraphOfGroups) -> int:
    """max over a in A of the tree level of π(a)."""
    return max((normalize_word(gog, (letter,)).tree_level for letter in gog.alphabet.names), default=0)


def compute_zeta(gog: GraphOfGroups, eta: int, metric: Optional[WordMetric] = None) -> int:
    """
    max(4*eta + 1, d_B(1, g)) over base-group elements g with d_A(1, g) <= 4*eta + 1.

    The A-ball is enumerated with ``word_metric``. When a finite base group's ball exceeds
    ``ball_cap`` the maximum is taken over the whole group instead, which bounds the same set.
    """
    radius = 4 * eta + 1
    base_group = gog.base_group
    if metric is None or metric.radius < radius:
        try:
            metric = word_metric(gog, radius, gog.options.ball_cap)
        except CapacityError:
            if not base_group.is_finite:
                raise
            logging.log(logging.WARN, f"word-metric ball of radius {radius} exceeds the cap; zeta bounded over the whole base group")
            return max(radius, int(base_group.distances.max()))
    longest = max(
        (base_group.word_length(g.tail) for g, d in metric.dist.items() if g.tree_level == 0 and d <= radius),
        default=0,
    )
    return max(radius, longest)


def _fellow_traveller_sweep(
    gog: GraphOfGroups, sample: LanguageSample, distances: DistanceCache, letters: Sequence[str]
) -> Tuple[Dict[str, int], Dict[str, int], Optional[Tuple[Word, Word]]]:
    # per-letter maxima over words of length <= N and <= N - 1, and the pair attaining the overall maximum
    current = {letter: 0 for letter in letters}
    previous = {letter: 0 for letter in letters}
    shorter = sample.max_len - 1
    worst: Optional[Tuple[Word, Word]] = None
    worst_value = -1
    for left in sample.words:
        left_path = sample.prefixes(left)
        for letter in letters:
            target = nf_append(gog, sample.forms[left], letter)
            for right in sample.fibers.get(target, ()):
                value = distances.hausdorff(left_path, sample.prefixes(right))
                current[letter] = max(current[letter], value)
                if value > worst_value:
                    worst_value, worst = value, (left, right)
                if len(left) <= shorter and len(right) <= shorter:
                    previous[letter] = max(previous[letter], value)
    return current, previous, worst


@typechecker
def letter_fellow_traveller(
    gog: GraphOfGroups,
    language: LanguageFSA,
    letter: str,
    max_len: int,
    sample: Optional[LanguageSample] = None,
    metric: Optional[WordMetric] = None,
) -> int:
    """
    Largest Hausdorff distance between the paths of V and W over accepted pairs with π(V)·letter = π(W).

    Args:
        gog: graph of groups
        language: normal-form language automaton
        letter: letter of A
        max_len: both words have length at most ``max_len``
        sample: accepted words up to ``max_len``, enumerated when omitted
        metric: word-metric ball used for the distances

    Returns:
        The per-letter fellow-traveller constant on the sampled words.

    Raises:
        InputError: ``letter`` is not in A.
    """
    gog.alphabet.check_word((letter,))
    sample = sample or sample_language(gog, language, max_len)
    metric = metric or word_metric(gog, gog.options.metric_radius, gog.options.ball_cap)
    current, _, _ = _fellow_traveller_sweep(gog, sample, DistanceCache(metric), [letter])
    return current[letter]


@typechecker
def compute_constants(
    gog: GraphOfGroups,
    language: LanguageFSA,
    max_len: int,
    sample: Optional[LanguageSample] = None,
    metric: Optional[WordMetric] = None,
) -> StructureConstants:
    """
    Compute eta, zeta and the measured fellow-traveller constants.

    Args:
        gog: graph of groups
        language: normal-form language automaton
        max_len: check length N, at least 1
        sample: accepted words up to ``max_len``, enumerated when omitted
        metric: word-metric ball used for the Hausdorff distances

    Returns:
        The constants, with kappa measured at N and N - 1.

    Raises:
        ParameterError: ``max_len`` below 1.
        CapacityError: a ball or an enumeration exceeded its cap.
    """
    if max_len < 1:
        raise ParameterError(f"check length must be at least 1, got {max_len}")
    with TicToc.timed("Computing structure constants..."):
        eta = compute_eta(gog)
        zeta = compute_zeta(gog, eta, metric)
        sample = sample or sample_language(gog, language, max_len)
        metric = metric or word_metric(gog, gog.options.metric_radius, gog.options.ball_cap)
        current, previous, worst = _fellow_traveller_sweep(gog, sample, DistanceCache(metric), gog.alphabet.names)
        constants = StructureConstants(
            eta=eta,
            zeta=zeta,
            kappa_empirical=max(current.values(), default=0),
            check_length=max_len,
            kappa_previous=max(previous.values(), default=0),
            per_letter=current,
            metric_radius=metric.radius,
            worst_pair=worst,
        )
        logging.log(logging.INFO, f"  eta={eta} zeta={zeta} kappa={constants.kappa_empirical} (N-1: {constants.kappa_previous})")
        if not constants.stable:
            logging.log(logging.WARN, f"kappa has not stabilised between N={max_len - 1} and N={max_len}")
    return constants
