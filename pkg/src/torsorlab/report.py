"""Check records collected by validators and higher-level procedures."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": "PASS" if self.passed else "FAIL"}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = render_witness(self.witness)
        return out


def render_witness(w):
    """Convert witness payloads to plain JSON-friendly data."""
    from .linalg import Matrix

    if isinstance(w, Matrix):
        if w.nrows * w.ncols <= 256:
            return w.format_rows()
        return f"{w.nrows}x{w.ncols} matrix"
    if isinstance(w, dict):
        return {str(k): render_witness(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [render_witness(v) for v in w]
    if isinstance(w, (str, int, float, bool)) or w is None:
        return w
    return str(w)


@dataclass
class ValidationReport:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "", witness=None) -> Check:
        c = Check(name, bool(passed), detail, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "ValidationReport", prefix: str | None = None) -> "ValidationReport":
        for c in other.checks:
            name = f"{prefix}: {c.name}" if prefix else c.name
            self.checks.append(Check(name, c.passed, c.detail, c.witness))
        self.notes.extend(n for n in other.notes if n not in self.notes)
        return self

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def find(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": "PASS" if self.ok else "FAIL",
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def lines(self) -> list:
        out = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            tail = f" ({c.detail})" if c.detail else ""
            out.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}{tail}")
            if not c.passed and c.witness is not None:
                out.append(f"      witness: {render_witness(c.witness)}")
        for n in self.notes:
            out.append(f"  note: {n}")
        return out

    def __str__(self):
        return "\n".join(self.lines())
