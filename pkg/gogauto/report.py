import json
from collections import OrderedDict

from beartype.typing import Iterable, List, Optional, Tuple
from deepdiff import DeepDiff

from gogauto.enums import Verdict

STATUS_SUFFIX = "STATUS"


class StructureReport(object):
    """
    Ordered ``KEY=VALUE`` records of a construction or verification run.

    Keys ending in ``STATUS`` carry a verdict; the report passes when all of them are ``PASS``.
    Records are kept in insertion order so identical runs render byte-identical text.
    """

    def __init__(self, records: Optional[Iterable[Tuple[str, str]]] = None, title: str = "gogauto report"):
        self.title = title
        self.records: "OrderedDict[str, str]" = OrderedDict()
        self.summary: List[str] = []
        if records is not None:
            self.extend(records)

    def add(self, key: str, value) -> None:
        if "=" in key or any(ch.isspace() for ch in key):
            raise ValueError(f"invalid record key '{key}'")
        self.records[key] = str(value).replace("\n", " ")

    def extend(self, records: Iterable[Tuple[str, str]]) -> None:
        for key, value in records:
            self.add(key, value)

    def note(self, line: str) -> None:
        """Add a line to the human-readable summary."""
        self.summary.append(line)

    def merge(self, other: "StructureReport") -> "StructureReport":
        """Records of ``self`` followed by those of ``other``; later records win on equal keys."""
        merged = StructureReport(self.records.items(), self.title)
        merged.extend(other.records.items())
        merged.summary = self.summary + other.summary
        return merged

    def __getitem__(self, key: str) -> str:
        return self.records[key]

    def __contains__(self, key: str) -> bool:
        return key in self.records

    @property
    def failures(self) -> List[str]:
        return [key for key, value in self.records.items() if key.endswith(STATUS_SUFFIX) and value != Verdict.PASS.value]

    @property
    def verdict(self) -> Verdict:
        return Verdict.of(not self.failures)

    def to_text(self, summary: bool = True) -> str:
        lines = [f"{key}={value}" for key, value in self.records.items()]
        if summary:
            lines.append("")
            lines.append(f"# {self.title}: {self.verdict.value}")
            lines += [f"# {line}" for line in self.summary]
            lines += [f"# failed: {key}" for key in self.failures]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "StructureReport":
        report = StructureReport()
        for line in text.splitlines():
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            report.add(key, value)
        return report

    def save(self, path: str) -> None:
        with open(path, "w") as write_file:
            json.dump({"title": self.title, "records": self.records, "summary": self.summary}, write_file, indent=4)

    @staticmethod
    def load(path: str) -> "StructureReport":
        with open(path, "r") as json_file:
            data = json.load(json_file)
        report = StructureReport(data["records"].items(), data.get("title", "gogauto report"))
        report.summary = list(data.get("summary", []))
        return report

    def get_diff(self, other: "StructureReport", exclude_keys: Iterable[str] = ()) -> DeepDiff:
        assert isinstance(other, StructureReport)
        excluded = [f"root['{key}']" for key in exclude_keys]
        return DeepDiff(dict(self.records), dict(other.records), exclude_paths=excluded)
