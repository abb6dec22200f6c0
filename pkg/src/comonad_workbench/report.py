"""Validation reports: named failures carrying exact residual matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import LinMap, format_scalar


@dataclass(frozen=True)
class Failure:
    name: str
    residual: LinMap | None = None
    detail: str = ""

    def describe(self) -> str:
        extra = []
        if self.residual is not None:
            nnz = sum(1 for x in self.residual.entries if x)
            extra.append(
                f"residual {self.residual.rows}x{self.residual.cols} "
                f"max|r|={format_scalar(self.residual.max_abs())} nnz={nnz}"
            )
        if self.detail:
            extra.append(self.detail)
        return self.name + (": " + ", ".join(extra) if extra else "")


@dataclass
class Report:
    """An ordered list of failures; empty means the object passed."""

    subject: str = ""
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def names(self) -> list[str]:
        return [f.name for f in self.failures]

    def check_equal(self, name: str, lhs: LinMap, rhs: LinMap) -> bool:
        """Record a failure unless ``lhs == rhs`` exactly."""
        if lhs.shape != rhs.shape:
            self.failures.append(
                Failure(name, None, f"shape {lhs.shape} vs {rhs.shape}"))
            return False
        if lhs == rhs:
            return True
        diff = lhs - rhs
        if diff.is_zero():
            return True
        self.failures.append(Failure(name, diff))
        return False

    def require(self, name: str, condition: bool, detail: str = "") -> bool:
        if not condition:
            self.failures.append(Failure(name, None, detail))
        return condition

    def extend(self, other: "Report", prefix: str = "") -> None:
        for f in other.failures:
            self.failures.append(Failure(prefix + f.name, f.residual, f.detail))
        self.notes.extend(other.notes)

    def lines(self) -> list[str]:
        head = self.subject or "report"
        if self.ok:
            out = [f"{head}: ok"]
        else:
            out = [f"{head}: FAIL"] + ["  " + f.describe() for f in self.failures]
        out += ["  note: " + n for n in self.notes]
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


class InvalidStructure(ValueError):
    """Input data failed validation; ``report`` names the failing laws."""

    def __init__(self, report: Report):
        super().__init__(str(report))
        self.report = report
