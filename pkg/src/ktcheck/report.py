"""Structured check results shared by every validator in the package."""

from __future__ import annotations


def _plain(value):
    # JSON-friendly, deterministic rendering of witness values.
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    return str(value)


class Report:
    """An append-only list of findings; empty means the check passed.

    Entries carry a machine code, a human message and a witness dict.
    ``indeterminate`` entries record data that is out of bound for the
    fixture; they never count as failures.
    """

    def __init__(self, name: str = ""):
        self.name = name
        self.entries: list[dict] = []

    def add(self, code: str, message: str, **witness):
        self.entries.append(
            {"code": code, "message": message, "witness": _plain(witness)}
        )

    def add_indeterminate(self, code: str, message: str, **witness):
        entry = {"code": code, "message": message, "witness": _plain(witness)}
        entry["indeterminate"] = True
        self.entries.append(entry)

    def add_info(self, code: str, message: str, **witness):
        entry = {"code": code, "message": message, "witness": _plain(witness)}
        entry["info"] = True
        self.entries.append(entry)

    @property
    def failures(self) -> list[dict]:
        return [e for e in self.entries if not e.get("indeterminate") and not e.get("info")]

    @property
    def indeterminates(self) -> list[dict]:
        return [e for e in self.entries if e.get("indeterminate")]

    @property
    def infos(self) -> list[dict]:
        return [e for e in self.entries if e.get("info")]

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "ok": self.ok,
            "failures": self.failures,
            "indeterminate": self.indeterminates,
        }
        if self.infos:
            out["info"] = self.infos
        return out

    def __repr__(self):
        status = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"Report({self.name!r}, {status})"
