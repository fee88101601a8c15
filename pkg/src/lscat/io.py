"""Text and JSON formats for posets, systems and fences.

Text poset format, one declaration per line::

    # comments and blank lines are ignored
    point e
    a < c

JSON mirrors carry a leading ``"format"`` tag.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .dynamics import GradientLikeSystem, validate_system
from .errors import InputError, ParseError
from .homotopy import Fence, check_fence
from .space import FiniteSpace, MonotoneMap, build_space

POSET_FORMAT = "lscat-poset/1"
SYSTEM_FORMAT = "lscat-system/1"
FENCE_FORMAT = "lscat-fence/1"


def parse_poset_text(text: str) -> FiniteSpace:
    declared: list[str] = []
    covers: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 2 and tokens[0] == "point":
            declared.append(tokens[1])
        elif len(tokens) == 3 and tokens[1] == "<":
            covers.append((tokens[0], tokens[2]))
        else:
            raise ParseError(f"expected 'point <id>' or '<id> < <id>', got {raw.strip()!r}",
                             lineno)
    if not declared and not covers:
        raise ParseError("no points declared")
    if len(set(declared)) != len(declared):
        raise ParseError("duplicate point declaration")
    return build_space(covers, declared)


def format_poset_text(X: FiniteSpace) -> str:
    lines = [f"point {p}" for p in X.points]
    lines += [f"{lo} < {hi}" for lo, hi in X.cover_ids()]
    return "\n".join(lines) + "\n"


def poset_to_json(X: FiniteSpace) -> dict:
    return {"format": POSET_FORMAT, "points": list(X.points),
            "covers": [list(c) for c in X.cover_ids()]}


def poset_from_json(data) -> FiniteSpace:
    if not isinstance(data, dict) or "points" not in data:
        raise ParseError("poset JSON needs a 'points' list")
    points = data["points"]
    covers = data.get("covers", [])
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise ParseError("'points' must be a list of strings")
    if len(set(points)) != len(points):
        raise ParseError("duplicate point ids")
    try:
        pairs = [(str(lo), str(hi)) for lo, hi in covers]
    except (TypeError, ValueError):
        raise ParseError("'covers' must be a list of [lower, upper] pairs") from None
    return build_space(pairs, points)


def system_to_json(sys: GradientLikeSystem) -> dict:
    return {"format": SYSTEM_FORMAT, "space": poset_to_json(sys.space),
            "phi": sys.step.as_dict(),
            "F": {p: str(v) for p, v in sys.lyapunov_dict().items()}}


def system_from_json(data) -> GradientLikeSystem:
    for key in ("space", "phi", "F"):
        if key not in data:
            raise ParseError(f"system JSON needs a {key!r} field")
    X = poset_from_json(data["space"])
    try:
        F = {p: Fraction(str(v)) for p, v in data["F"].items()}
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad Lyapunov value: {exc}") from None
    return validate_system(X, dict(data["phi"]), F)


def fence_to_json(fence: Fence) -> dict:
    return {"format": FENCE_FORMAT, "source": poset_to_json(fence.start.source),
            "target": poset_to_json(fence.start.target),
            "maps": [m.as_dict() for m in fence.maps]}


def fence_from_json(data) -> Fence:
    """Rebuild a fence and replay it; maps are not trusted to be monotone."""
    if "maps" not in data or not data["maps"]:
        raise ParseError("fence JSON needs a nonempty 'maps' list")
    source = poset_from_json(data["source"])
    target = poset_from_json(data.get("target", data["source"]))
    maps = []
    for k, mapping in enumerate(data["maps"]):
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise ParseError(f"map {k} is undefined on {missing}")
        maps.append(MonotoneMap(source, target, [target.idx(mapping[p]) for p in source.points],
                                check=False))
    check_fence(maps)
    return Fence(tuple(maps))


def loads(text: str):
    """Parse text or JSON content into a space, system or fence."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from None
        if "maps" in data:
            return fence_from_json(data)
        if "phi" in data or "space" in data:
            return system_from_json(data)
        return poset_from_json(data)
    return parse_poset_text(text)


def ingest(path) -> FiniteSpace | GradientLikeSystem | Fence:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)
