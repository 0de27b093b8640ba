"""Reports produced by the gallery builders."""

from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "inconclusive")


@dataclass
class Claim:
    description: str
    verdict: str
    evidence: dict

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass
class GalleryReport:
    construction_name: str
    parameters: dict
    claims: list = field(default_factory=list)
    runtime: float = 0.0
    notes: list = field(default_factory=list)

    def add(self, description: str, ok, evidence: dict | None = None) -> Claim:
        verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        claim = Claim(description, verdict, evidence or {})
        self.claims.append(claim)
        return claim

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.claims)

    @property
    def inconclusive(self) -> bool:
        return any(c.verdict == "inconclusive" for c in self.claims)

    def to_json(self) -> dict:
        # runtime is left out so that repeated runs give identical documents
        return {
            "construction": self.construction_name,
            "parameters": {k: _plain(v) for k, v in self.parameters.items()},
            "claims": [
                {"description": c.description, "verdict": c.verdict, "evidence": c.evidence}
                for c in self.claims
            ],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        params = ", ".join(f"{k}={_plain(v)}" for k, v in self.parameters.items())
        lines = [f"{self.construction_name} ({params})"]
        for c in self.claims:
            lines.append(f"  [{c.verdict}] {c.description}")
            for k in sorted(c.evidence):
                lines.append(f"      {k}: {_short(c.evidence[k])}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  runtime: {self.runtime:.2f}s")
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


def _short(v, limit: int = 160) -> str:
    s = v if isinstance(v, str) else repr(v)
    return s if len(s) <= limit else s[: limit - 3] + "..."
