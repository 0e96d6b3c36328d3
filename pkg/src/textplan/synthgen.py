"""Constraint-driven synthetic floor plan generator.

Rooms are attached one at a time on a coarse grid, each sharing a wall
with its already-placed parent in the connectivity graph, so every
requested connection is realized as a real shared wall and the output is
valid by construction. Generation is a pure function of (spec, config):
the same seed always yields the same layout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .core import (
    GRID_MAX,
    CategoryKey,
    Layout,
    Point,
    Room,
    RoomType,
    TRAINING_CATEGORIES,
    scale_to_bbox,
)
from .semantics import CompassOctant

#: Per-type target area ranges in coarse cells, inclusive.
AREA_RANGES: dict[RoomType, tuple[int, int]] = {
    RoomType.LIVING_ROOM: (12, 30),
    RoomType.KITCHEN: (6, 16),
    RoomType.BEDROOM: (9, 20),
    RoomType.BATHROOM: (4, 9),
    RoomType.CORRIDOR: (4, 12),
}

#: Wall cells a room must share with its parent when attached.
MIN_PARENT_WALL = 3

_SIDES = ("N", "E", "S", "W")
_ENTRANCE_SIDES = (CompassOctant.N, CompassOctant.E, CompassOctant.S, CompassOctant.W)


class GenerationError(RuntimeError):
    """Placement search exhausted its backtrack budget."""

    def __init__(self, room_index: int, room_kind: RoomType, message: str):
        super().__init__(message)
        self.room_index = room_index
        self.room_kind = room_kind


@dataclass(frozen=True)
class GenSpec:
    """Input to the generator: room roster with target areas (coarse
    cells), an undirected connectivity graph over room indices, the side
    the entrance faces, and the seed that makes generation reproducible."""

    rooms: tuple[tuple[RoomType, int], ...]
    connectivity: tuple[tuple[int, int], ...]
    entrance_side: CompassOctant
    seed: int

    def __post_init__(self):
        kinds = [k for k, _ in self.rooms]
        if kinds.count(RoomType.LIVING_ROOM) != 1:
            raise ValueError("spec must contain exactly one living_room")
        if kinds.count(RoomType.KITCHEN) != 1:
            raise ValueError("spec must contain exactly one kitchen")
        if kinds.count(RoomType.CORRIDOR) > 2:
            raise ValueError("spec allows at most two corridors")
        for kind, area in self.rooms:
            if area < 4:
                raise ValueError(f"target area for {kind.value} must be >= 4 cells")
        if self.entrance_side not in _ENTRANCE_SIDES:
            raise ValueError("entrance_side must be one of N, E, S, W")
        n = len(self.rooms)
        edges = []
        for a, b in self.connectivity:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad connectivity edge ({a}, {b})")
            edges.append((min(a, b), max(a, b)))
        object.__setattr__(self, "connectivity", tuple(sorted(set(edges))))
        if not self._connected():
            raise ValueError("connectivity graph must be connected")

    def _connected(self) -> bool:
        n = len(self.rooms)
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.connectivity:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


@dataclass(frozen=True)
class GenConfig:
    coarse_grid: int = 32
    categories: frozenset[CategoryKey] = TRAINING_CATEGORIES
    max_backtracks: int = 50

    def __post_init__(self):
        if self.coarse_grid < 4 or GRID_MAX % self.coarse_grid != 0:
            raise ValueError(f"coarse_grid must divide {GRID_MAX}")


Rect = tuple[int, int, int, int]  # x1, y1, x2, y2 with x1 < x2, y1 < y2


def _dims_for_area(area: int, min_degree: int = 0) -> list[tuple[int, int]]:
    """Rectangle dimensions to try for a target area: exact area first,
    shrinking toward half the target, aspect capped at 2:1. A slightly
    larger 3x2 fallback is appended when nothing else has a side of 3,
    since attachment needs a 3-cell wall. Rooms that must host several
    neighbors (min_degree >= 3) try wall-capacity-maximizing dimensions
    before square ones."""
    floor = max(4, area // 2)
    dims = []
    for a in range(area, floor - 1, -1):
        for w in range(1, a + 1):
            if a % w:
                continue
            h = a // w
            if max(w, h) <= 2 * min(w, h):
                dims.append((w, h))
    if not any(max(w, h) >= MIN_PARENT_WALL for w, h in dims):
        dims += [(3, 2), (2, 3)]
    if min_degree:
        hosting = [wh for wh in dims if _wall_slots(*wh) >= min_degree]
        if hosting:
            dims = hosting
        else:
            dims.sort(key=lambda wh: (-_wall_slots(*wh), area - wh[0] * wh[1], abs(wh[0] - wh[1])))
            return dims
    if min_degree >= 3:
        key = lambda wh: (area - wh[0] * wh[1], -_wall_slots(*wh), abs(wh[0] - wh[1]))
    else:
        key = lambda wh: (area - wh[0] * wh[1], abs(wh[0] - wh[1]))
    dims.sort(key=key)
    return dims


def _wall_slots(w: int, h: int) -> int:
    """Upper bound on how many neighbors a w x h room can host, counting
    MIN_PARENT_WALL-cell wall segments around its perimeter."""
    return 2 * (w // MIN_PARENT_WALL + h // MIN_PARENT_WALL)


def attach_capacity(area: int) -> int:
    """Most neighbors any rectangle of at most this target area can host."""
    return max(_wall_slots(w, h) for w, h in _dims_for_area(area))


def _overlaps_any(rect: Rect, others: Iterable[Rect]) -> bool:
    x1, y1, x2, y2 = rect
    for ox1, oy1, ox2, oy2 in others:
        if max(x1, ox1) < min(x2, ox2) and max(y1, oy1) < min(y2, oy2):
            return True
    return False


def _rect_shared_wall(a: Rect, b: Rect) -> int:
    ax1, ay1, ax2, ay2 = a
    bx1, by1, bx2, by2 = b
    if ax2 == bx1 or bx2 == ax1:
        return max(0, min(ay2, by2) - max(ay1, by1))
    if ay2 == by1 or by2 == ay1:
        return max(0, min(ax2, bx2) - max(ax1, bx1))
    return 0


def _attach_positions(parent: Rect, side: str, w: int, h: int) -> list[Rect]:
    """All placements of a w x h rectangle on one side of the parent with
    at least MIN_PARENT_WALL cells of shared wall."""
    px1, py1, px2, py2 = parent
    out = []
    if side in ("N", "S"):
        y1 = py2 if side == "N" else py1 - h
        for x1 in range(px1 - w + 1, px2):
            if min(x1 + w, px2) - max(x1, px1) >= MIN_PARENT_WALL:
                out.append((x1, y1, x1 + w, y1 + h))
    else:
        x1 = px2 if side == "E" else px1 - w
        for y1 in range(py1 - h + 1, py2):
            if min(y1 + h, py2) - max(y1, py1) >= MIN_PARENT_WALL:
                out.append((x1, y1, x1 + w, y1 + h))
    return out


def _root_candidates(area: int, grid: int, degree: int) -> Iterator[Rect]:
    for w, h in _dims_for_area(area, degree):
        if w > grid or h > grid:
            continue
        x1 = (grid - w) // 2
        y1 = (grid - h) // 2
        yield (x1, y1, x1 + w, y1 + h)


def _attach_candidates(
    rng: random.Random,
    area: int,
    degree: int,
    parent: Rect,
    grid: int,
    placed: dict[int, Rect],
    must_touch: list[int],
) -> Iterator[Rect]:
    """Feasible placements against the live `placed` map: inside the grid,
    interior-disjoint from everything, >= 3 shared wall cells with the
    parent (by construction) and >= 1 with every other already-placed
    connectivity neighbor."""
    sides = list(_SIDES)
    rng.shuffle(sides)
    for w, h in _dims_for_area(area, degree):
        for side in sides:
            positions = _attach_positions(parent, side, w, h)
            rng.shuffle(positions)
            for rect in positions:
                x1, y1, x2, y2 = rect
                if x1 < 0 or y1 < 0 or x2 > grid or y2 > grid:
                    continue
                if _overlaps_any(rect, placed.values()):
                    continue
                if any(_rect_shared_wall(rect, placed[q]) < 1 for q in must_touch):
                    continue
                yield rect


def _bfs_order(n: int, edges: tuple[tuple[int, int], ...], root: int) -> tuple[list[int], dict[int, int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for lst in adj:
        lst.sort()
    order = [root]
    parent = {root: -1}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                queue.append(w)
    return order, parent


def _stretch_to_entrance(placed: dict[int, Rect], side: CompassOctant) -> None:
    """Pull the room nearest the entrance-side edge midpoint flush with the
    layout hull, when the strip in between is empty."""
    hx1 = min(r[0] for r in placed.values())
    hy1 = min(r[1] for r in placed.values())
    hx2 = max(r[2] for r in placed.values())
    hy2 = max(r[3] for r in placed.values())
    mid_x, mid_y = Fraction(hx1 + hx2, 2), Fraction(hy1 + hy2, 2)
    target = {
        CompassOctant.N: (mid_x, Fraction(hy2)),
        CompassOctant.S: (mid_x, Fraction(hy1)),
        CompassOctant.E: (Fraction(hx2), mid_y),
        CompassOctant.W: (Fraction(hx1), mid_y),
    }[side]

    def dist2(rect: Rect) -> Fraction:
        x1, y1, x2, y2 = rect
        dx = max(Fraction(x1) - target[0], target[0] - Fraction(x2), Fraction(0))
        dy = max(Fraction(y1) - target[1], target[1] - Fraction(y2), Fraction(0))
        return dx * dx + dy * dy

    idx = min(placed, key=lambda i: (dist2(placed[i]), i))
    x1, y1, x2, y2 = placed[idx]
    stretched = {
        CompassOctant.N: (x1, y1, x2, hy2),
        CompassOctant.S: (x1, hy1, x2, y2),
        CompassOctant.E: (x1, y1, hx2, y2),
        CompassOctant.W: (hx1, y1, x2, y2),
    }[side]
    others = [r for i, r in placed.items() if i != idx]
    if stretched != placed[idx] and not _overlaps_any(stretched, iter(others)):
        placed[idx] = stretched


def generate_layout(spec: GenSpec, cfg: GenConfig | None = None) -> Layout:
    """Generate a valid layout realizing the spec, scaled and centered on
    the 256-grid. Raises GenerationError when the placement search runs
    out of backtracks, naming the room that could not be placed."""
    cfg = cfg or GenConfig()
    rng = random.Random(spec.seed)
    grid = cfg.coarse_grid
    n = len(spec.rooms)
    root = next(i for i, (k, _) in enumerate(spec.rooms) if k is RoomType.LIVING_ROOM)
    order, parents = _bfs_order(n, spec.connectivity, root)
    neighbors: dict[int, set[int]] = {i: set() for i in range(n)}
    for a, b in spec.connectivity:
        neighbors[a].add(b)
        neighbors[b].add(a)

    placed: dict[int, Rect] = {}
    iters: dict[int, Iterator[Rect]] = {}
    pos = 0
    backtracks = 0
    while pos < len(order):
        r = order[pos]
        if r not in iters:
            area = spec.rooms[r][1]
            degree = len(neighbors[r])
            if r == root:
                iters[r] = _root_candidates(area, grid, degree)
            else:
                # Non-parent neighbors already placed must end up touching.
                must = [q for q in neighbors[r] if q in placed and q != parents[r]]
                iters[r] = _attach_candidates(
                    rng, area, degree, placed[parents[r]], grid, placed, must
                )
        rect = next(iters[r], None)
        if rect is not None:
            placed[r] = rect
            pos += 1
            continue
        del iters[r]
        backtracks += 1
        if pos == 0 or backtracks > cfg.max_backtracks:
            kind = spec.rooms[r][0]
            raise GenerationError(
                r, kind, f"could not place room {r} ({kind.value}) after {backtracks} backtracks"
            )
        pos -= 1
        del placed[order[pos]]

    _stretch_to_entrance(placed, spec.entrance_side)

    rooms = []
    for i, (kind, _) in enumerate(spec.rooms):
        x1, y1, x2, y2 = placed[i]
        rooms.append(
            Room(kind, (Point(x2, y2), Point(x1, y2), Point(x1, y1), Point(x2, y1)))
        )
    return scale_to_bbox(Layout(tuple(rooms)))


def sample_spec(category: CategoryKey, rng_seed: int) -> GenSpec:
    """Draw a random GenSpec for a bedroom/bathroom category: areas uniform
    per type, connectivity a random spanning tree rooted at the living
    room with corridors attached early and weighted to become hubs, and a
    uniform entrance side."""
    rng = random.Random(rng_seed)
    bedrooms, bathrooms = category
    n_corridors = (rng.random() < 0.5) + (rng.random() < 0.5)
    kinds = (
        [RoomType.LIVING_ROOM, RoomType.KITCHEN]
        + [RoomType.BEDROOM] * bedrooms
        + [RoomType.BATHROOM] * bathrooms
        + [RoomType.CORRIDOR] * n_corridors
    )
    rooms = tuple((k, rng.randint(*AREA_RANGES[k])) for k in kinds)

    # Tree sampling with capacity caps: a parent can host only as many
    # neighbors as its walls can fit, which keeps placement feasible.
    weights = {RoomType.CORRIDOR: 4, RoomType.LIVING_ROOM: 2}
    # One slot of slack on roomy hubs keeps the placement search loose.
    capacity = [max(2, attach_capacity(area) - 1) for _, area in rooms]
    degree = [0] * len(rooms)
    corridor_ids = [i for i, k in enumerate(kinds) if k is RoomType.CORRIDOR]
    other_ids = [i for i in range(1, len(kinds)) if kinds[i] is not RoomType.CORRIDOR]
    rng.shuffle(other_ids)
    edges = []
    attached = [0]
    for i in corridor_ids + other_ids:
        eligible = [j for j in attached if degree[j] < capacity[j]] or attached
        parent = rng.choices(eligible, weights=[weights.get(kinds[j], 1) for j in eligible])[0]
        edges.append((parent, i))
        degree[parent] += 1
        degree[i] += 1
        attached.append(i)

    entrance = rng.choice(_ENTRANCE_SIDES)
    return GenSpec(rooms, tuple(edges), entrance, rng.getrandbits(63))
