"""Verification report records shared by the check suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["VerifyReport"]


@dataclass
class VerifyReport:
    """Outcome of one verification suite run.

    ``failures`` holds one human-readable witness string per violated check;
    the suite passed iff it is empty.  ``expected_violations`` counts
    constructions that are *supposed* to break an identity (the spinor-sector
    Jacobi failures at level >= 2) and do not make the suite fail; their
    absence is reported as a failure instead.  ``serialize()`` is
    deterministic for a fixed seed; wall-clock time is kept out of it.
    """

    suite: str
    algebra: str
    level: int
    mode: str = "exhaustive"
    seed: int | None = None
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    expected_violations: int = 0
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def merge(self, other: "VerifyReport") -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)
        self.expected_violations += other.expected_violations
        self.notes.extend(other.notes)
        self.elapsed += other.elapsed

    def serialize(self) -> str:
        mode = self.mode if self.seed is None else f"{self.mode}(seed={self.seed})"
        head = (
            f"{'PASS' if self.ok else 'FAIL'} suite={self.suite}"
            f" algebra={self.algebra} n={self.level} mode={mode}"
            f" checks={self.checks} failures={len(self.failures)}"
        )
        if self.expected_violations:
            head += f" expected_violations={self.expected_violations}"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        lines += [f"  witness: {f}" for f in self.failures[:20]]
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more failures")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.serialize() + f"\n  elapsed: {self.elapsed:.2f}s"
