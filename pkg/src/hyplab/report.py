"""InequalityReport: one named inequality with both sides and its verdict."""
import json
import math
from dataclasses import dataclass, field

DEFAULT_TOLERANCE = 1e-9


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return [v.real, v.imag]
    if hasattr(v, "item") and not isinstance(v, (str, bytes)):
        return v.item()  # numpy scalar
    return v


@dataclass
class InequalityReport:
    """``lhs <= rhs`` up to ``params["tolerance"]``; ``slack = rhs - lhs``."""

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    params: dict = field(default_factory=dict)
    notes: str = ""

    @classmethod
    def compare(cls, name, lhs, rhs, tolerance=DEFAULT_TOLERANCE, params=None, notes=""):
        lhs = float(lhs)
        rhs = float(rhs)
        p = dict(params or {})
        p["tolerance"] = float(tolerance)
        slack = rhs - lhs
        ok = bool(math.isfinite(lhs) and not math.isnan(rhs) and slack >= -tolerance)
        return cls(name, lhs, rhs, slack, ok, p, notes)

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
            "params": _jsonable(self.params),
            "notes": self.notes,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        return cls(d["name"], float(d["lhs"]), float(d["rhs"]), float(d["slack"]),
                   bool(d["pass"]), dict(d.get("params", {})), d.get("notes", ""))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __bool__(self):
        return self.passed


def combine(name, reports, params=None, notes=""):
    """Fold many reports into the one with the least slack, keeping a count."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to combine")
    worst = min(reports, key=lambda r: (r.passed, r.slack))
    p = dict(worst.params)
    p.update(params or {})
    p["cases"] = len(reports)
    p["failures"] = sum(not r.passed for r in reports)
    p["worst_case"] = worst.name
    ok = p["failures"] == 0
    return InequalityReport(name, worst.lhs, worst.rhs, worst.slack, ok, p, notes or worst.notes)
