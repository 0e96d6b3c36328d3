"""Core domain model: rooms, layouts, the layout text format, and exact geometry.

Layouts live on an integer grid. Every geometric quantity here is computed
with integer or rational arithmetic so that equality tests (shared edges,
centroids, areas) are exact and deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple

GRID_MAX = 256


class RoomType(Enum):
    """The closed set of room labels. Declaration order is alphabetical and
    is relied on by the metrics module as the histogram bin order."""

    BATHROOM = "bathroom"
    BEDROOM = "bedroom"
    CORRIDOR = "corridor"
    KITCHEN = "kitchen"
    LIVING_ROOM = "living_room"

    @property
    def words(self) -> str:
        """Natural-language form ("living room", not "living_room")."""
        return self.value.replace("_", " ")


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Room:
    """A room polygon. Vertices are ordered corners; the last vertex
    implicitly connects back to the first."""

    kind: RoomType
    vertices: tuple[Point, ...]

    def translated(self, dx: int, dy: int) -> "Room":
        return Room(self.kind, tuple(Point(p.x + dx, p.y + dy) for p in self.vertices))


@dataclass(frozen=True)
class Layout:
    rooms: tuple[Room, ...]


class CategoryKey(NamedTuple):
    bedrooms: int
    bathrooms: int

    @property
    def label(self) -> str:
        return f"{self.bedrooms}/{self.bathrooms}"

    @classmethod
    def from_label(cls, label: str) -> "CategoryKey":
        b, _, t = label.partition("/")
        return cls(int(b), int(t))


#: The six bedroom/bathroom combinations covered by the synthetic corpus.
TRAINING_CATEGORIES = frozenset(
    CategoryKey(b, t) for b, t in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 2), (4, 3)]
)


class ParseError(ValueError):
    """Layout text that does not conform to the grammar.

    ``offset`` is the character offset of the problem (equal to the byte
    offset for the all-ASCII canonical grammar).
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.reason = message
        self.offset = offset


# Input labels: canonical names plus the spaced spelling of living_room.
_LABELS = {t.value: t for t in RoomType}
_LABELS["living room"] = RoomType.LIVING_ROOM

_LABEL_RE = re.compile("|".join(sorted((re.escape(k) for k in _LABELS), key=len, reverse=True)))
_INT_RE = re.compile(r"[+-]?\d+")


def parse_layout(text: str | bytes) -> Layout:
    """Parse layout text into a :class:`Layout`, preserving room order.

    Grammar: ``layout := entry (", " entry)*``,
    ``entry := label ": " point ("," point)+``, ``point := "(" int "," int ")"``.
    Whitespace around commas, colons and parentheses is tolerated on input;
    :func:`serialize_layout` produces the canonical form.

    Raises :class:`ParseError` (with offset) for unknown labels, malformed
    points, out-of-range coordinates, rooms with fewer than 3 vertices, or
    empty input.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None

    n = len(text)
    lower = text.lower()

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    def parse_int(i: int) -> tuple[int, int]:
        m = _INT_RE.match(text, i)
        if not m:
            raise ParseError("expected integer", i)
        value = int(m.group())
        if not 0 <= value <= GRID_MAX:
            raise ParseError(f"coordinate {value} outside [0, {GRID_MAX}]", i)
        return value, m.end()

    def parse_point(i: int) -> tuple[Point, int]:
        if i >= n or text[i] != "(":
            raise ParseError("expected '('", i)
        i = skip_ws(i + 1)
        x, i = parse_int(i)
        i = skip_ws(i)
        if i >= n or text[i] != ",":
            raise ParseError("expected ',' inside point", i)
        i = skip_ws(i + 1)
        y, i = parse_int(i)
        i = skip_ws(i)
        if i >= n or text[i] != ")":
            raise ParseError("expected ')'", i)
        return Point(x, y), i + 1

    def parse_entry(i: int) -> tuple[Room, int]:
        entry_start = i
        m = _LABEL_RE.match(lower, i)
        if not m or (m.end() < n and (text[m.end()].isalnum() or text[m.end()] == "_")):
            raise ParseError("unknown room label", i)
        kind = _LABELS[m.group()]
        i = skip_ws(m.end())
        if i >= n or text[i] != ":":
            raise ParseError("expected ':' after room label", i)
        i = skip_ws(i + 1)

        points = []
        point, i = parse_point(i)
        points.append(point)
        while True:
            j = skip_ws(i)
            if j < n and text[j] == ",":
                k = skip_ws(j + 1)
                if k < n and text[k] == "(":
                    point, i = parse_point(k)
                    points.append(point)
                    continue
            # End of this entry: j is at end of input, at the room
            # separator comma, or at junk the caller will diagnose.
            break
        if len(points) < 3:
            raise ParseError("room has fewer than 3 vertices", entry_start)
        return Room(kind, tuple(points)), j

    pos = skip_ws(0)
    if pos == n:
        raise ParseError("empty input", 0)

    rooms: list[Room] = []
    while True:
        room, pos = parse_entry(pos)
        rooms.append(room)
        pos = skip_ws(pos)
        if pos >= n:
            return Layout(tuple(rooms))
        if text[pos] != ",":
            raise ParseError("expected ',' or end of input after point", pos)
        pos = skip_ws(pos + 1)
        if pos >= n:
            raise ParseError("expected room entry after separator", pos)


def serialize_layout(layout: Layout) -> str:
    """Canonical text form: lowercase labels (``living_room``), rooms joined
    by ``", "``, points joined by ``","`` with no interior spaces."""
    parts = []
    for room in layout.rooms:
        pts = ",".join(f"({p.x},{p.y})" for p in room.vertices)
        parts.append(f"{room.kind.value}: {pts}")
    return ", ".join(parts)


def signed_area2(vertices: Iterable[Point]) -> int:
    """Twice the signed (shoelace) area; positive for counter-clockwise."""
    verts = list(vertices)
    total = 0
    for a, b in zip(verts, verts[1:] + verts[:1]):
        total += a.x * b.y - b.x * a.y
    return total


def room_area(room: Room) -> Fraction:
    """Enclosed area in square grid units (exact). Raises ValueError for a
    degenerate (zero-area) polygon."""
    s2 = signed_area2(room.vertices)
    if s2 == 0:
        raise ValueError(f"degenerate polygon for {room.kind.value}: zero area")
    return Fraction(abs(s2), 2)


def room_centroid(room: Room) -> tuple[Fraction, Fraction]:
    """Exact polygon centroid from first moments."""
    s2 = signed_area2(room.vertices)
    if s2 == 0:
        raise ValueError(f"degenerate polygon for {room.kind.value}: zero area")
    verts = list(room.vertices)
    cx = cy = 0
    for a, b in zip(verts, verts[1:] + verts[:1]):
        cross = a.x * b.y - b.x * a.y
        cx += (a.x + b.x) * cross
        cy += (a.y + b.y) * cross
    return Fraction(cx, 3 * s2), Fraction(cy, 3 * s2)


def bounding_box(layout: Layout) -> tuple[int, int, int, int]:
    """Tight bounding box as (xmin, ymin, xmax, ymax)."""
    xs = [p.x for room in layout.rooms for p in room.vertices]
    ys = [p.y for room in layout.rooms for p in room.vertices]
    if not xs:
        raise ValueError("layout has no rooms")
    return min(xs), min(ys), max(xs), max(ys)


def scale_to_bbox(layout: Layout, max_coord: int = GRID_MAX) -> Layout:
    """Scale by a uniform integer factor and center inside [0, max_coord]².

    Integer-factor scaling keeps shared edges exactly shared. The factor is
    the largest integer that fits the tight bounding box, so a layout that
    spans a 32-unit coarse grid is scaled by 8. Raises ValueError when the
    layout is wider or taller than max_coord (factor would be 0) or has no
    extent at all.
    """
    xmin, ymin, xmax, ymax = bounding_box(layout)
    w, h = xmax - xmin, ymax - ymin
    side = max(w, h)
    if side == 0:
        raise ValueError("layout has no extent")
    if side > max_coord:
        raise ValueError(f"layout spans {side} units, more than {max_coord}")
    f = max_coord // side
    ox = (max_coord - f * w) // 2
    oy = (max_coord - f * h) // 2
    rooms = tuple(
        Room(
            room.kind,
            tuple(Point(f * (p.x - xmin) + ox, f * (p.y - ymin) + oy) for p in room.vertices),
        )
        for room in layout.rooms
    )
    return Layout(rooms)


def category_of(layout: Layout) -> CategoryKey:
    """Bedroom/bathroom counts, e.g. (2, 1) for the "2/1" category."""
    b = sum(1 for r in layout.rooms if r.kind is RoomType.BEDROOM)
    t = sum(1 for r in layout.rooms if r.kind is RoomType.BATHROOM)
    return CategoryKey(b, t)
