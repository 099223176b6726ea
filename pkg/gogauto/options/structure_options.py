from dataclasses import dataclass


@dataclass
class StructureOptions:
    """
    Knobs of the structure builder and its verification sweeps.

    Args:
        check_length: word length N used by the verification sweeps and the kappa measurement
        validation_radius: radius of the edge-group ball used to check embedding injectivity
        coset_cap: maximum size of a subgroup closure or coset table
        enumeration_cap: maximum number of words any enumeration may produce
        ball_cap: maximum number of elements in a Cayley ball
        metric_radius: radius of the word-metric ball used for Hausdorff distances
        departure_radius: largest r for which the departure function is tabulated
        departure_cap: radius of the configuration ball explored by the exact departure search
        max_escalations: how often a multiplier may retry with a larger K after false rejects
        retry_false_rejects: escalate K automatically when a multiplier misses pairs
    """

    check_length: int = 6
    validation_radius: int = 3
    coset_cap: int = 1_000_000
    enumeration_cap: int = 200_000
    ball_cap: int = 500_000
    metric_radius: int = 4
    departure_radius: int = 4
    departure_cap: int = 8
    max_escalations: int = 3
    retry_false_rejects: bool = True

    def __post_init__(self):
        assert self.check_length >= 0, "check_length must be non-negative."
        assert self.validation_radius >= 0, "validation_radius must be non-negative."
        for name in ["coset_cap", "enumeration_cap", "ball_cap"]:
            assert getattr(self, name) > 0, f"{name} must be positive."
        assert self.metric_radius >= 1, "metric_radius must be at least 1."
        assert self.departure_radius >= 1, "departure_radius must be at least 1."
        assert self.departure_cap >= self.departure_radius, "departure_cap must be at least departure_radius."
        assert self.max_escalations >= 0, "max_escalations must be non-negative."

    def with_cap(self, cap: int) -> "StructureOptions":
        """Copy with every enumeration cap replaced by ``cap`` (the CLI ``--cap`` flag)."""
        assert cap > 0, "cap must be positive."
        return StructureOptions(**{**self.__dict__, "coset_cap": cap, "enumeration_cap": cap, "ball_cap": cap})
