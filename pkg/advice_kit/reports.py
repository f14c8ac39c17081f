"""
Run reports: one JSON document per CLI invocation.

Reports are serialized with sorted keys and compact separators so equal
payloads are equal byte strings. Rationals are written ``"p/q"``.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple

from .constants import VERSION
from .errors import FixtureParseError
from .intervals import Interval
from .names import Prefix


def jsonable(value: Any) -> Any:
    """Convert report values to plain JSON types.

    Example:
        >>> jsonable({"x": Fraction(3), "pair": (Fraction(1, 2), 2)})
        {'x': '3/1', 'pair': ['1/2', 2]}
    """

    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Prefix):
        return list(value.symbols)
    if isinstance(value, Interval):
        return [jsonable(value.lo), jsonable(value.hi)]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass(slots=True, frozen=True)
class RunReport:
    """Header and payload of one run.

    Attributes:
        command: The argument vector that produced the report.
        seed: Seed of stochastic commands, None otherwise.
        depth: Output depth used, if the command has one.
        fuel: Step budget per machine run.
        payload: Command result.
        version: Package version.
    """

    command: Tuple[str, ...]
    seed: int | None
    depth: int | None
    fuel: int
    payload: Dict[str, Any] = field(default_factory=dict)
    version: str = VERSION

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": list(self.command),
            "version": self.version,
            "seed": self.seed,
            "depth": self.depth,
            "fuel": self.fuel,
            "payload": jsonable(self.payload),
        }

    def to_json(self) -> str:
        """Serialize deterministically.

        Example:
            >>> RunReport(("demo",), None, None, 10).to_json()
            '{"command":["demo"],"depth":null,"fuel":10,"payload":{},"seed":null,"version":"0.1.0"}'
        """

        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        try:
            data = json.loads(text)
            return cls(
                tuple(data["command"]),
                data.get("seed"),
                data.get("depth"),
                int(data["fuel"]),
                dict(data.get("payload", {})),
                data.get("version", VERSION),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise FixtureParseError(f"not a run report: {exc}") from exc


def load_report(path: Path) -> RunReport:
    try:
        return RunReport.from_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FixtureParseError(f"cannot read report {path}: {exc}") from exc


def same_payload(first: RunReport, second: RunReport) -> bool:
    """Compare payloads after serialization."""

    def canonical(report: RunReport) -> str:
        return json.dumps(jsonable(report.payload), sort_keys=True, separators=(",", ":"))

    return canonical(first) == canonical(second)
