"""Text literals for open and closed sets.

``open{words: 1; 0,1}`` lists the cylinders ``[1]`` and ``[0,1]``;
``closed{complement: 1}`` is the closed set whose complement is ``[1]``.
A ``space:`` segment picks the base space (``cantor`` by default); interval
spaces take words ``c@r`` for the open interval of radius ``2**r`` around
``c``; ``closed{space: nat; only: 3,5}`` is the closed set ``{3, 5}``. A
segment without a key continues the previous key.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from ..errors import FixtureParseError
from .descriptors import CANTOR, INTERVAL_CODED, SpaceKind, parse_space
from .sets import ClosedSetName, OpenSetName, Word, closed_nat_only, closed_set, interval_word, open_set_from_words

_KEYS = {"words", "complement", "space", "only"}


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal.

    Example:
        >>> parse_rational(" -3/4 ")
        Fraction(-3, 4)
    """

    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FixtureParseError(f"bad rational {text!r}") from exc


def _parse_word(text: str, interval_coded: bool) -> Word:
    body = text.strip()
    if interval_coded:
        centre, sep, radius = body.partition("@")
        if not sep:
            raise FixtureParseError(f"interval word {text!r} must look like c@r")
        try:
            exponent = int(radius)
        except ValueError as exc:
            raise FixtureParseError(f"bad radius exponent in {text!r}") from exc
        return interval_word(parse_rational(centre), exponent)
    if body in {"", "()", "ε"}:
        return ()
    try:
        return tuple(int(part) for part in body.split(","))
    except ValueError as exc:
        raise FixtureParseError(f"bad word {text!r}") from exc


def parse_set_literal(text: str) -> OpenSetName | ClosedSetName:
    """Parse an ``open{...}`` or ``closed{...}`` literal.

    Example:
        >>> parse_set_literal("closed{complement: 1}").excluded(3)
        [(1,)]
        >>> parse_set_literal("open{words: 1; 0,1}").words(3)
        [(1,), (0, 1)]
    """

    body = text.strip()
    kind, brace, rest = body.partition("{")
    kind = kind.strip().lower()
    if not brace or not rest.endswith("}") or kind not in {"open", "closed"}:
        raise FixtureParseError(f"set literal {text!r} must be open{{...}} or closed{{...}}")
    fields: Dict[str, List[str]] = {}
    current: str | None = None
    for segment in rest[:-1].split(";"):
        if not segment.strip():
            continue
        key, sep, value = segment.partition(":")
        if sep and key.strip().lower() in _KEYS:
            current = key.strip().lower()
            fields.setdefault(current, []).append(value)
        elif current is not None:
            fields[current].append(segment)
        else:
            raise FixtureParseError(f"segment {segment!r} has no key")
    space = parse_space(fields["space"][0]) if "space" in fields else CANTOR
    if "only" in fields:
        if kind != "closed" or space.kind is not SpaceKind.NAT:
            raise FixtureParseError("only: is available for closed sets of naturals")
        values = [int(v) for chunk in fields["only"] for v in chunk.split(",") if v.strip()]
        return closed_nat_only(values)
    key = "words" if kind == "open" else "complement"
    stray = set(fields) - {key, "space"}
    if stray:
        raise FixtureParseError(f"unexpected keys {sorted(stray)} in {kind} literal")
    coded = space.kind in INTERVAL_CODED
    words = [_parse_word(raw, coded) for raw in fields.get(key, [])]
    if space.kind is SpaceKind.NAT:
        words = [w[:1] for w in words]
    if kind == "open":
        return open_set_from_words(space, words)
    return closed_set(space, words)
