"""
Fixture files for the CLI and the tests.

A fixture is a small text file of ``key: value`` lines; ``#`` starts a
comment. ``problem:`` names the catalog problem (optional when the command
already fixes it); ``x0:``, ``x1:`` ... give the instance components in
order, and ``matrix:`` appends a row-major matrix of reals with rows
separated by ``;``. A component value is one of:

    ``real 1/3``                          signed-digit name of a rational
    ``nat 4``                             the natural ``4`` as ``4^ω``
    ``name alphabet:bin;prefix:1;period:0``  a name literal
    ``set closed{complement: 1}``         the name of an open or closed set
    ``bits 0,1,1``                        ``011 0^ω`` over Cantor space

A fixture with one component is that component; otherwise the instance is
the interleaving of all components.

Example file::

    problem: MLPO_3
    x0: real 0
    x1: real 1/2
    x2: real 1/4
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple

from .errors import AdviceKitError, FixtureParseError
from .names import BINARY, NATURAL, Name, constant_name, eventually_periodic, parse_name_literal, tuple_names
from .spaces.literals import parse_rational, parse_set_literal
from .spaces.reals import encode_rational

logger = logging.getLogger(__name__)


@dataclass(slots=True, frozen=True)
class Fixture:
    """A parsed fixture.

    Attributes:
        problem_id: Problem named by the file, if any.
        components: Instance components in file order.
        source: Path or label the fixture came from.
    """

    problem_id: str | None
    components: Tuple[Name, ...]
    source: str = "<text>"

    @property
    def instance(self) -> Name:
        if not self.components:
            raise FixtureParseError(f"{self.source} lists no instance components")
        return tuple_names(self.components)


def parse_value(text: str) -> Name:
    """Parse one component value.

    Example:
        >>> parse_value("bits 0,1,1").take(5).symbols
        (0, 1, 1, 0, 0)
        >>> parse_value("nat 3").take(2).symbols
        (3, 3)
    """

    kind, _, body = text.strip().partition(" ")
    body = body.strip()
    try:
        match kind.lower():
            case "real":
                return encode_rational(parse_rational(body))
            case "nat":
                value = int(body)
                if value < 0:
                    raise FixtureParseError(f"natural {value} is negative")
                return constant_name(value, NATURAL)
            case "name":
                return parse_name_literal(body)
            case "set":
                return parse_set_literal(body).name
            case "bits":
                bits = [int(b) for b in body.split(",") if b.strip()]
                return eventually_periodic(BINARY, bits, [0])
    except FixtureParseError:
        raise
    except (AdviceKitError, ValueError) as exc:
        raise FixtureParseError(f"bad {kind} value {body!r}: {exc}") from exc
    raise FixtureParseError(f"unknown value kind {kind!r} in {text!r}")


def _matrix_rows(text: str) -> List[Name]:
    rows = [row for row in text.split(";") if row.strip()]
    entries = [[parse_rational(v) for v in row.split(",") if v.strip()] for row in rows]
    width = {len(row) for row in entries}
    if len(width) != 1:
        raise FixtureParseError(f"matrix rows have different lengths: {text!r}")
    return [encode_rational(value) for row in entries for value in row]


def parse_fixture(text: str, *, source: str = "<text>") -> Fixture:
    """Parse fixture text.

    Args:
        text: File contents.
        source: Label used in error messages.
    Returns:
        The fixture.
    Raises:
        FixtureParseError: Unknown keys, bad values or out-of-order components.

    Example:
        >>> fixture = parse_fixture("problem: LLPO\\nx0: bits 1\\nx1: bits 0")
        >>> fixture.problem_id, fixture.instance.take(4).symbols
        ('LLPO', (1, 0, 0, 0))
        >>> len(parse_fixture("matrix: 1, 0; 0, 1/2").components)
        4
    """

    problem_id: str | None = None
    components: List[Name] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise FixtureParseError(f"{source}:{number}: expected 'key: value'")
        if key == "problem":
            problem_id = value.strip()
        elif key == "matrix":
            components.extend(_matrix_rows(value))
        elif key.startswith("x") and key[1:].isdigit():
            if int(key[1:]) != len(components):
                raise FixtureParseError(f"{source}:{number}: expected x{len(components)}, found {key}")
            components.append(parse_value(value))
        else:
            raise FixtureParseError(f"{source}:{number}: unknown key {key!r}")
    logger.debug("%s: %d components for %s", source, len(components), problem_id)
    return Fixture(problem_id, tuple(components), source)


def load_fixture(path: Path) -> Fixture:
    """Read and parse a fixture file."""

    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureParseError(f"cannot read fixture {path}: {exc}") from exc
    return parse_fixture(text, source=str(path))


def fixture_from_values(values: Sequence[str], problem_id: str | None = None) -> Fixture:
    """Build a fixture from component value strings, e.g. ``["real 0", "real 1/2"]``."""

    return Fixture(problem_id, tuple(parse_value(v) for v in values), "<values>")


def rational_fixture(values: Sequence[Fraction | int], problem_id: str | None = None) -> Fixture:
    return Fixture(problem_id, tuple(encode_rational(v) for v in values), "<rationals>")
