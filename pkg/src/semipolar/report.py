"""Check results and their deterministic JSON serialization."""

import json
import math
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
EXPECTED_FAIL = "expected-fail"
UNEXPECTED_PASS = "unexpected-pass"
INFO = "info"
AT_LEAST = "at-least"


def fmt(x):
    """Float to a JSON-safe value with 17 significant digits; -0 becomes 0."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, float)) or hasattr(x, "__float__"):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x == 0.0:
            return 0.0
        return float(f"{x:.17g}")
    return x


def num17(x):
    """Text with 17 significant digits, as printed by the CLI and CSV export."""
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        return fmt(x)
    return f"{x:#.17g}"


@dataclass
class CheckResult:
    """One measured deviation against a tolerance.

    `expect` is ``"pass"`` for ordinary checks, ``"fail"`` for negative
    controls (the deviation must exceed the tolerance), ``"at-least"`` for
    witnesses and rates (the measured value must reach the bound) and
    ``"info"`` for measurements that are reported but never judged.
    """

    id: str
    family: str
    deviation: float
    tolerance: float
    expect: str = PASS
    note: str = ""

    @property
    def within(self):
        return bool(self.deviation <= self.tolerance)

    @property
    def verdict(self):
        if self.expect == INFO:
            return INFO
        if self.expect == FAIL:
            return UNEXPECTED_PASS if self.within else EXPECTED_FAIL
        if self.expect == AT_LEAST:
            return PASS if self.deviation >= self.tolerance else FAIL
        return PASS if self.within else FAIL

    @property
    def ok(self):
        return self.verdict in (PASS, EXPECTED_FAIL, INFO)

    def to_dict(self):
        d = {
            "id": self.id,
            "family": self.family,
            "deviation": fmt(self.deviation),
            "tolerance": fmt(self.tolerance),
            "verdict": self.verdict,
        }
        if self.expect != PASS:
            d["expect"] = self.expect
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    suite: str
    seed: int
    results: list = field(default_factory=list)

    def add(self, result):
        self.results.append(result)
        return result

    def extend(self, results):
        self.results.extend(results)

    @property
    def passed(self):
        return all(r.ok for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.ok]

    def get(self, check_id):
        for r in self.results:
            if r.id == check_id:
                return r
        raise KeyError(check_id)

    def to_dict(self):
        # sorted by id so that assembly order never shows in the output
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [r.to_dict() for r in sorted(self.results, key=lambda r: r.id)],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"
