"""Semantic annotations: what can truthfully be said about a layout.

Six categories of statement are supported, mirroring the prompt suite:
room count (RG), bedroom/bathroom mix (RS), positive and negative
adjacency (AP, AN), and unique / non-unique room location by compass
octant (LU, LNU). Extraction, rendering to English, and parsing prompts
back into annotations are all here; correctness of a generated layout
against a prompt is membership of the parsed prompt in the layout's
extracted annotation set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from .core import Layout, RoomType, bounding_box, room_centroid
from .validity import adjacency_graph, validate


class CompassOctant(Enum):
    N = "north"
    NE = "north east"
    E = "east"
    SE = "south east"
    S = "south"
    SW = "south west"
    W = "west"
    NW = "north west"

    @property
    def words(self) -> str:
        return self.value


@dataclass(frozen=True)
class RoomCount:
    """RG: the house has exactly `count` rooms (emitted for 1..10)."""

    count: int


@dataclass(frozen=True)
class RoomMix:
    """RS: exact bedroom and bathroom counts (both 1..10)."""

    bedrooms: int
    bathrooms: int


@dataclass(frozen=True)
class AdjacentTo:
    """AP: a/the `subject` shares a wall with some room of type `obj`."""

    subject: RoomType
    subject_unique: bool
    obj: RoomType


@dataclass(frozen=True)
class NotAdjacentTo:
    """AN: a/the `subject` shares a wall with no room of type `obj`."""

    subject: RoomType
    subject_unique: bool
    obj: RoomType


@dataclass(frozen=True)
class LocatedIn:
    """LU/LNU: a/the `subject` sits in the given octant of the house."""

    subject: RoomType
    unique: bool
    direction: CompassOctant


Annotation = RoomCount | RoomMix | AdjacentTo | NotAdjacentTo | LocatedIn

#: Default deadzone radius as a fraction of the min bounding-box dimension.
DEADZONE = Fraction(1, 20)


def _lt_tan_22_5(p: int, q: int) -> bool:
    """p/q < tan(22.5°) for q > 0, p >= 0, exactly (tan 22.5° = √2 - 1)."""
    s = p + q
    return s * s < 2 * q * q


def _lt_tan_67_5(p: int, q: int) -> bool:
    """p/q < tan(67.5°) for q > 0, p >= 0, exactly (tan 67.5° = √2 + 1)."""
    d = p - q
    if d <= 0:
        return True
    return d * d < 2 * q * q


def octant_of_vector(x: int, y: int) -> CompassOctant:
    """Octant of a nonzero integer vector, +y = North, sectors 45° wide and
    half-open clockwise (a bearing of exactly 22.5° east of north would be
    NE; such ties cannot occur for rational directions)."""
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    if y > 0 and x >= 0:
        first, mid, last, p, q = CompassOctant.N, CompassOctant.NE, CompassOctant.E, x, y
    elif x > 0:  # y <= 0
        first, mid, last, p, q = CompassOctant.E, CompassOctant.SE, CompassOctant.S, -y, x
    elif y < 0:  # x <= 0
        first, mid, last, p, q = CompassOctant.S, CompassOctant.SW, CompassOctant.W, -x, -y
    else:  # x < 0, y >= 0
        first, mid, last, p, q = CompassOctant.W, CompassOctant.NW, CompassOctant.N, y, -x
    if _lt_tan_22_5(p, q):
        return first
    if _lt_tan_67_5(p, q):
        return mid
    return last


Coord = Fraction | int


def classify_octant(
    centroid: tuple[Coord, Coord],
    center: tuple[Coord, Coord],
    min_bbox_dim: Coord,
    deadzone: Fraction = DEADZONE,
) -> CompassOctant | None:
    """Compass octant of `centroid` relative to `center`, or None inside
    the central deadzone (distance < deadzone * min_bbox_dim). Exact."""
    dx = Fraction(centroid[0]) - Fraction(center[0])
    dy = Fraction(centroid[1]) - Fraction(center[1])
    if dx == 0 and dy == 0:
        return None
    radius = Fraction(min_bbox_dim) * deadzone
    if dx * dx + dy * dy < radius * radius:
        return None
    k = lcm(dx.denominator, dy.denominator)
    return octant_of_vector(int(dx * k), int(dy * k))


def extract_annotations(
    layout: Layout, min_shared: int = 1, deadzone: Fraction = DEADZONE
) -> frozenset[Annotation]:
    """Every annotation that holds for a valid layout.

    Subject quantification follows the article convention: "the X" means
    exactly one room of type X exists, "a X" means two or more do. Raises
    ValueError when the layout is not valid.
    """
    report = validate(layout, min_shared=min_shared)
    if not report.valid:
        kinds = ", ".join(sorted(report.kinds))
        raise ValueError(f"cannot annotate an invalid layout ({kinds})")

    rooms = layout.rooms
    by_type: dict[RoomType, list[int]] = {t: [] for t in RoomType}
    for idx, room in enumerate(rooms):
        by_type[room.kind].append(idx)

    anns: set[Annotation] = set()

    if 1 <= len(rooms) <= 10:
        anns.add(RoomCount(len(rooms)))
    n_bed = len(by_type[RoomType.BEDROOM])
    n_bath = len(by_type[RoomType.BATHROOM])
    if 1 <= n_bed <= 10 and 1 <= n_bath <= 10:
        anns.add(RoomMix(n_bed, n_bath))

    graph = adjacency_graph(layout, min_shared=min_shared)
    neighbor_types = [
        {rooms[j].kind for j in graph.neighbors(i)} for i in range(len(rooms))
    ]
    for subject in RoomType:
        members = by_type[subject]
        if not members:
            continue
        unique = len(members) == 1
        for obj in RoomType:
            if obj is subject or not by_type[obj]:
                continue
            touching = [obj in neighbor_types[i] for i in members]
            if unique:
                if touching[0]:
                    anns.add(AdjacentTo(subject, True, obj))
                else:
                    anns.add(NotAdjacentTo(subject, True, obj))
            else:
                if any(touching):
                    anns.add(AdjacentTo(subject, False, obj))
                if not all(touching):
                    anns.add(NotAdjacentTo(subject, False, obj))

    xmin, ymin, xmax, ymax = bounding_box(layout)
    center = (Fraction(xmin + xmax, 2), Fraction(ymin + ymax, 2))
    min_dim = min(xmax - xmin, ymax - ymin)
    for subject in RoomType:
        members = by_type[subject]
        if not members:
            continue
        octants = []
        for i in members:
            octant = classify_octant(room_centroid(rooms[i]), center, min_dim, deadzone)
            if octant is not None:
                octants.append(octant)
        if len(members) == 1:
            if octants:
                anns.add(LocatedIn(subject, True, octants[0]))
        else:
            for octant in set(octants):
                anns.add(LocatedIn(subject, False, octant))

    return frozenset(anns)


_NUMBER_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"]
_WORD_TO_NUMBER = {w: i for i, w in enumerate(_NUMBER_WORDS) if i > 0}


def _counted(n: int, noun: str) -> str:
    word = _NUMBER_WORDS[n]
    return f"{word} {noun}" if n == 1 else f"{word} {noun}s"


def render_annotation(ann: Annotation) -> str:
    """Deterministic English template for an annotation."""
    if isinstance(ann, RoomCount):
        return f"a house with {_counted(ann.count, 'room')}"
    if isinstance(ann, RoomMix):
        return (
            f"a house with {_counted(ann.bedrooms, 'bedroom')}"
            f" and {_counted(ann.bathrooms, 'bathroom')}"
        )
    if isinstance(ann, AdjacentTo):
        article = "the" if ann.subject_unique else "a"
        return f"{article} {ann.subject.words} is adjacent to the {ann.obj.words}"
    if isinstance(ann, NotAdjacentTo):
        article = "the" if ann.subject_unique else "a"
        return f"{article} {ann.subject.words} is not adjacent to the {ann.obj.words}"
    if isinstance(ann, LocatedIn):
        article = "the" if ann.unique else "a"
        return f"{article} {ann.subject.words} is in the {ann.direction.words} side of the house"
    raise TypeError(f"not an annotation: {ann!r}")


class PromptParseError(ValueError):
    """Prompt text that matches none of the supported templates."""


_ROOM_WORDS = {t.words: t for t in RoomType}
_DIRECTION_WORDS = {o.words: o for o in CompassOctant}
# The published prompt list writes "west east" where the octant sequence
# has plain west; accept it as west.
_DIRECTION_WORDS["west east"] = CompassOctant.W

_RS_RE = re.compile(r"a house with (\w+) bedrooms? and (\w+) bathrooms?")
_RG_RE = re.compile(r"a house with (\w+) rooms?")
_ADJ_RE = re.compile(r"(the|a) ([a-z ]+?) is (not )?adjacent to the ([a-z ]+)")
_LOC_RE = re.compile(r"(the|a) ([a-z ]+?) is in the ([a-z ]+) side of the house")


def _number(word: str) -> int:
    if word not in _WORD_TO_NUMBER:
        raise PromptParseError(f"unknown number word: {word!r}")
    return _WORD_TO_NUMBER[word]


def _room_type(words: str) -> RoomType:
    if words not in _ROOM_WORDS:
        raise PromptParseError(f"unknown room type: {words!r}")
    return _ROOM_WORDS[words]


def parse_prompt(text: str) -> Annotation:
    """Parse a templated prompt into its annotation.

    Case-insensitive and whitespace-tolerant; accepts mismatched
    pluralization ("one bathrooms", "three bedroom") as published in the
    prompt suite. Raises PromptParseError otherwise.
    """
    norm = " ".join(text.lower().replace("_", " ").split())

    m = _RS_RE.fullmatch(norm)
    if m:
        return RoomMix(_number(m.group(1)), _number(m.group(2)))
    m = _RG_RE.fullmatch(norm)
    if m:
        return RoomCount(_number(m.group(1)))
    m = _ADJ_RE.fullmatch(norm)
    if m:
        subject = _room_type(m.group(2))
        obj = _room_type(m.group(4))
        if subject is obj:
            raise PromptParseError("subject and object room types must differ")
        unique = m.group(1) == "the"
        if m.group(3):
            return NotAdjacentTo(subject, unique, obj)
        return AdjacentTo(subject, unique, obj)
    m = _LOC_RE.fullmatch(norm)
    if m:
        subject = _room_type(m.group(2))
        direction = m.group(3)
        if direction not in _DIRECTION_WORDS:
            raise PromptParseError(f"unknown direction: {direction!r}")
        return LocatedIn(subject, m.group(1) == "the", _DIRECTION_WORDS[direction])
    raise PromptParseError(f"prompt matches no known template: {text!r}")


def annotation_category(ann: Annotation) -> str:
    """Category code: RG, RS, AP, AN, LU or LNU."""
    if isinstance(ann, RoomCount):
        return "RG"
    if isinstance(ann, RoomMix):
        return "RS"
    if isinstance(ann, AdjacentTo):
        return "AP"
    if isinstance(ann, NotAdjacentTo):
        return "AN"
    if isinstance(ann, LocatedIn):
        return "LU" if ann.unique else "LNU"
    raise TypeError(f"not an annotation: {ann!r}")


def annotation_to_json(ann: Annotation) -> dict:
    out: dict = {"category": annotation_category(ann)}
    if isinstance(ann, RoomCount):
        out["count"] = ann.count
    elif isinstance(ann, RoomMix):
        out["bedrooms"] = ann.bedrooms
        out["bathrooms"] = ann.bathrooms
    elif isinstance(ann, (AdjacentTo, NotAdjacentTo)):
        out["subject"] = ann.subject.value
        out["subject_unique"] = ann.subject_unique
        out["object"] = ann.obj.value
    else:
        out["subject"] = ann.subject.value
        out["unique"] = ann.unique
        out["direction"] = ann.direction.name
    return out


def check_correctness(prompt_text: str, layout: Layout) -> bool:
    """True iff the prompt's annotation is among the layout's annotations.

    Raises PromptParseError for an unparseable prompt and ValueError for an
    invalid layout, so callers can distinguish "error" from "incorrect".
    """
    ann = parse_prompt(prompt_text)
    return ann in extract_annotations(layout)
