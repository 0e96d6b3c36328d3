"""Geometric validity checks for layouts.

A layout is valid when every room is a simple closed rectilinear polygon
with positive area, room interiors are pairwise disjoint (shared boundary
walls are fine), and no room is orphaned: the touch graph over rooms is
connected. All predicates are exact integer arithmetic; there are no
epsilons to tune.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Layout, ParseError, Point, Room, parse_layout, signed_area2

MALFORMED = "malformed_polygon"
SELF_INTERSECTING = "self_intersecting"
OVERLAPPING = "overlapping_pair"
ORPHAN = "orphan_room"


@dataclass(frozen=True)
class Violation:
    kind: str
    rooms: tuple[int, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "rooms": list(self.rooms), "detail": self.detail}


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[Violation, ...] = ()

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class AdjacencyGraph:
    """Shared-wall contacts between rooms. ``edges`` holds (i, j, length)
    with i < j and length in grid units."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def shared_length(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        for a, b, length in self.edges:
            if (a, b) == (i, j):
                return length
        return 0

    def neighbors(self, i: int) -> set[int]:
        out = set()
        for a, b, _ in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def is_connected(self) -> bool:
        return _n_components(self.n, [(a, b) for a, b, _ in self.edges]) <= 1


def _n_components(n: int, edges: list[tuple[int, int]]) -> int:
    return len(_components(n, edges))


def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _edges(room: Room) -> list[tuple[Point, Point]]:
    verts = list(room.vertices)
    return list(zip(verts, verts[1:] + verts[:1]))


def _room_problem(room: Room) -> tuple[str, str] | None:
    """Return (violation kind, detail) for a bad room, else None."""
    verts = room.vertices
    if len(verts) < 3:
        return MALFORMED, "fewer than 3 vertices"
    edges = _edges(room)
    for a, b in edges:
        if a == b:
            return MALFORMED, f"repeated vertex at ({a.x},{a.y})"
        if a.x != b.x and a.y != b.y:
            return MALFORMED, f"edge ({a.x},{a.y})-({b.x},{b.y}) is not axis-aligned"
    if signed_area2(verts) == 0:
        return MALFORMED, "zero area"
    m = len(edges)
    for i in range(m):
        for j in range(i + 1, m):
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            if _segments_conflict(edges[i], edges[j], adjacent):
                return SELF_INTERSECTING, f"edges {i} and {j} intersect"
    return None


def _seg_axis(seg: tuple[Point, Point]) -> tuple[bool, int, int, int]:
    """Normalize an axis-aligned segment to (horizontal?, fixed, lo, hi)."""
    a, b = seg
    if a.y == b.y:
        return True, a.y, min(a.x, b.x), max(a.x, b.x)
    return False, a.x, min(a.y, b.y), max(a.y, b.y)


def _segments_conflict(s1, s2, adjacent: bool) -> bool:
    """True when two polygon edges intersect beyond what simplicity allows:
    any contact for non-adjacent edges, more than the shared endpoint for
    adjacent ones."""
    h1, f1, lo1, hi1 = _seg_axis(s1)
    h2, f2, lo2, hi2 = _seg_axis(s2)
    if h1 == h2:
        if f1 != f2:
            return False
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return False
        if adjacent:
            return hi > lo  # collinear overlap of consecutive edges: a spike
        return True
    # One horizontal, one vertical: they cross iff each fixed coordinate
    # falls inside the other's span.
    if h2:
        (h1, f1, lo1, hi1), (h2, f2, lo2, hi2) = (h2, f2, lo2, hi2), (h1, f1, lo1, hi1)
    # now s-role 1 is horizontal (y = f1, x in [lo1, hi1]), 2 vertical
    if not (lo1 <= f2 <= hi1 and lo2 <= f1 <= hi2):
        return False
    if adjacent:
        # Perpendicular consecutive edges can only meet at the shared
        # corner; meeting anywhere else means a T-junction within an edge.
        shared = {s1[0], s1[1]} & {s2[0], s2[1]}
        return Point(f2, f1) not in shared
    return True


def _rectangles(room: Room) -> list[tuple[int, int, int, int]]:
    """Decompose a simple rectilinear polygon into axis-aligned rectangles
    (x1, y1, x2, y2) by horizontal slabs."""
    verts = room.vertices
    ys = sorted({p.y for p in verts})
    verticals = []
    for a, b in _edges(room):
        if a.x == b.x and a.y != b.y:
            verticals.append((a.x, min(a.y, b.y), max(a.y, b.y)))
    rects = []
    for ylo, yhi in zip(ys, ys[1:]):
        xs = sorted(x for x, vlo, vhi in verticals if vlo <= ylo and yhi <= vhi)
        for x1, x2 in zip(xs[0::2], xs[1::2]):
            rects.append((x1, ylo, x2, yhi))
    return rects


def _interiors_overlap(rects_a, rects_b) -> bool:
    for ax1, ay1, ax2, ay2 in rects_a:
        for bx1, by1, bx2, by2 in rects_b:
            if max(ax1, bx1) < min(ax2, bx2) and max(ay1, by1) < min(ay2, by2):
                return True
    return False


def _shared_wall_length(room_a: Room, room_b: Room) -> int:
    """Total length of collinear boundary overlap between two rooms."""
    total = 0
    segs_a = [_seg_axis(e) for e in _edges(room_a)]
    segs_b = [_seg_axis(e) for e in _edges(room_b)]
    for ha, fa, loa, hia in segs_a:
        for hb, fb, lob, hib in segs_b:
            if ha == hb and fa == fb:
                total += max(0, min(hia, hib) - max(loa, lob))
    return total


def adjacency_graph(layout: Layout, min_shared: int = 1) -> AdjacencyGraph:
    """Pairwise shared-wall graph. An edge requires at least ``min_shared``
    grid units of collinear boundary; single-point corner contact never
    counts. Raises ValueError naming the room index if a room is not a
    simple rectilinear polygon.
    """
    for idx, room in enumerate(layout.rooms):
        problem = _room_problem(room)
        if problem is not None:
            raise ValueError(f"room {idx} ({room.kind.value}): {problem[1]}")
    edges = []
    rooms = layout.rooms
    for i in range(len(rooms)):
        for j in range(i + 1, len(rooms)):
            length = _shared_wall_length(rooms[i], rooms[j])
            if length >= min_shared:
                edges.append((i, j, length))
    return AdjacencyGraph(len(rooms), tuple(edges))


def validate(layout: Layout, min_shared: int = 1) -> ValidityReport:
    """Full validity verdict for any layout, however pathological.

    Violations are collected, not raised: per-room shape problems first,
    then interior overlaps between the well-formed rooms, then orphan
    detection (connectivity of the touch graph) when all rooms are
    well-formed. Overlapping rooms count as touching for orphan purposes,
    so an overlap is reported once, as an overlap.
    """
    violations: list[Violation] = []
    ok: list[int] = []
    for idx, room in enumerate(layout.rooms):
        problem = _room_problem(room)
        if problem is None:
            ok.append(idx)
        else:
            violations.append(Violation(problem[0], (idx,), problem[1]))

    rects = {i: _rectangles(layout.rooms[i]) for i in ok}
    contact_edges: list[tuple[int, int]] = []
    for a_pos in range(len(ok)):
        for b_pos in range(a_pos + 1, len(ok)):
            i, j = ok[a_pos], ok[b_pos]
            if _interiors_overlap(rects[i], rects[j]):
                violations.append(Violation(OVERLAPPING, (i, j), "room interiors intersect"))
                contact_edges.append((i, j))
            elif _shared_wall_length(layout.rooms[i], layout.rooms[j]) >= min_shared:
                contact_edges.append((i, j))

    if len(ok) == len(layout.rooms) and len(layout.rooms) > 1:
        comps = _components(len(layout.rooms), contact_edges)
        if len(comps) > 1:
            main = max(comps, key=lambda c: (len(c), -c[0]))
            for comp in comps:
                if comp is not main:
                    violations.append(
                        Violation(ORPHAN, tuple(comp), "no shared wall with the rest of the layout")
                    )

    return ValidityReport(valid=not violations, violations=tuple(violations))


def validate_text(text: str | bytes, min_shared: int = 1) -> ValidityReport:
    """Parse then validate; text that fails to parse is reported as invalid
    rather than raising."""
    try:
        layout = parse_layout(text)
    except ParseError as exc:
        return ValidityReport(
            valid=False,
            violations=(Violation(MALFORMED, (), f"parse failure: {exc}"),),
        )
    return validate(layout, min_shared=min_shared)
