from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import List, Optional, Sequence

from gogauto.errors import InputError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import NormalForm, difference, nf_multiply, normalize_word, prefix_images
from gogauto.structure.constants import StructureConstants
from gogauto.structure.word_metric import WordMetric, word_metric
from gogauto.utils.data import format_word
from gogauto.utils.typing import Word


@dataclass
class FellowTravellerTrace:
    """
    Anchors showing why the paths of two accepted words to adjacent elements stay close.

    The anchors g_t, 2j <= t <= |W|, all lie in the coset π(T T_V)Γ_c, where T is the common
    syllable prefix of V and W (j syllables) and T T_V the syllable part of V. Each anchor is close to
    Ŵ(t) and consecutive anchors differ by a short element of Γ_c.
    """

    left: Word
    right: Word
    common_syllables: int
    level_gap: int
    anchors: List[NormalForm] = field(repr=False)
    anchor_distances: List[int] = field(default_factory=list)
    base_steps: List[Optional[int]] = field(default_factory=list)

    @property
    def max_anchor_distance(self) -> int:
        return max(self.anchor_distances, default=0)

    @property
    def max_base_step(self) -> Optional[int]:
        """Largest d_B between consecutive anchors, ``None`` if two anchors lie in different cosets."""
        if any(step is None for step in self.base_steps):
            return None
        return max(self.base_steps, default=0)

    def bounds_hold(self, constants: StructureConstants) -> bool:
        step = self.max_base_step
        return (
            self.level_gap <= constants.eta
            and self.max_anchor_distance <= 2 * constants.eta + 1
            and step is not None
            and step <= 2 * constants.zeta
        )

    def describe(self) -> List[str]:
        lines = [
            f"V = {format_word(self.left)}",
            f"W = {format_word(self.right)}",
            f"common syllables j = {self.common_syllables}, level gap = {self.level_gap}",
        ]
        for offset, (anchor, distance) in enumerate(zip(self.anchors, self.anchor_distances)):
            lines.append(f"  t={2 * self.common_syllables + offset}: g_t = {anchor.describe()}, d_A(W(t), g_t) = {distance}")
        step = self.max_base_step
        lines.append(f"max anchor distance {self.max_anchor_distance}, max base step {'-' if step is None else step}")
        return lines


@typechecker
def trace_fellow_traveller(
    gog: GraphOfGroups, left: Sequence[str], right: Sequence[str], metric: Optional[WordMetric] = None
) -> FellowTravellerTrace:
    """
    Reconstruct the anchor sequence for accepted words V, W with d_A(π(V), π(W)) <= 1.

    Args:
        gog: graph of groups
        left: the word V
        right: the word W
        metric: word-metric ball for the anchor distances, radius ``options.metric_radius`` by default

    Returns:
        The trace; ``bounds_hold`` compares it with the structure constants.

    Raises:
        InputError: a word that is not the serialized normal form of its element.
    """
    left, right = tuple(left), tuple(right)
    metric = metric or word_metric(gog, gog.options.metric_radius, gog.options.ball_cap)
    nf_left, nf_right = normalize_word(gog, left), normalize_word(gog, right)
    for word, nf in ((left, nf_left), (right, nf_right)):
        if word[: 2 * nf.tree_level] != nf.syllable_word():
            raise InputError(f"'{format_word(word)}' does not start with the syllables of its normal form")

    common = 0
    while common < min(nf_left.tree_level, nf_right.tree_level) and nf_left.syllables[common] == nf_right.syllables[common]:
        common += 1
    level_gap = nf_left.tree_level + nf_right.tree_level - 2 * common
    syllable_part = NormalForm(nf_left.syllables, (), gog.base)

    path = prefix_images(gog, right)
    anchors: List[NormalForm] = []
    for t in range(2 * common, len(right) + 1):
        if t == len(right):
            anchor = nf_left
        elif t <= 2 * nf_right.tree_level:
            anchor = syllable_part
        else:
            offset = difference(gog, path[t], nf_left)
            anchor = nf_multiply(gog, path[t], NormalForm(offset.syllables, (), gog.base))
        anchors.append(anchor)

    trace = FellowTravellerTrace(left, right, common, level_gap, anchors)
    trace.anchor_distances = [metric.bounded_distance(path[2 * common + i], anchor) for i, anchor in enumerate(anchors)]
    for first, second in zip(anchors, anchors[1:]):
        step = difference(gog, first, second)
        trace.base_steps.append(gog.base_group.word_length(step.tail) if step.tree_level == 0 else None)
    return trace


def worst_trace(gog: GraphOfGroups, constants: StructureConstants, metric: Optional[WordMetric] = None) -> Optional[FellowTravellerTrace]:
    """Trace of the pair attaining the measured fellow-traveller constant."""
    if constants.worst_pair is None:
        return None
    return trace_fellow_traveller(gog, *constants.worst_pair, metric=metric)
