"""Layout grammar and exact geometry."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textplan.core import (
    CategoryKey,
    Layout,
    ParseError,
    Point,
    Room,
    RoomType,
    bounding_box,
    category_of,
    parse_layout,
    room_area,
    room_centroid,
    scale_to_bbox,
    serialize_layout,
)

PAPER_BEDROOM = "bedroom: (13,12),(8,12),(8,9),(13,9)"


def rect_room(kind, x1, y1, x2, y2):
    return Room(kind, (Point(x2, y2), Point(x1, y2), Point(x1, y1), Point(x2, y1)))


class TestParse:
    def test_paper_example(self):
        layout = parse_layout(PAPER_BEDROOM)
        assert len(layout.rooms) == 1
        room = layout.rooms[0]
        assert room.kind is RoomType.BEDROOM
        assert room.vertices == (Point(13, 12), Point(8, 12), Point(8, 9), Point(13, 9))

    def test_empty_input(self):
        with pytest.raises(ParseError) as err:
            parse_layout("")
        assert err.value.offset == 0
        with pytest.raises(ParseError):
            parse_layout("   \n ")

    def test_multiple_rooms(self):
        text = "bedroom: (0,0),(5,0),(5,5),(0,5), kitchen: (5,0),(9,0),(9,5),(5,5)"
        layout = parse_layout(text)
        assert [r.kind for r in layout.rooms] == [RoomType.BEDROOM, RoomType.KITCHEN]

    def test_living_room_spellings(self):
        for label in ("living_room", "living room", "Living Room"):
            layout = parse_layout(f"{label}: (0,0),(4,0),(4,4),(0,4)")
            assert layout.rooms[0].kind is RoomType.LIVING_ROOM

    def test_whitespace_tolerated(self):
        text = " bedroom :  (0, 0) , (5 ,0), (5,5) ,(0,5) ,  kitchen: (5,0),(9,0),(9,5),(5,5) "
        layout = parse_layout(text)
        assert len(layout.rooms) == 2

    def test_unknown_label(self):
        with pytest.raises(ParseError) as err:
            parse_layout("garage: (0,0),(1,0),(1,1)")
        assert "unknown room label" in str(err.value)
        assert err.value.offset == 0

    def test_unknown_label_offset_mid_text(self):
        text = "bedroom: (0,0),(5,0),(5,5),(0,5), garage: (0,0),(1,0),(1,1)"
        with pytest.raises(ParseError) as err:
            parse_layout(text)
        assert err.value.offset == text.index("garage")

    def test_out_of_range_coordinate(self):
        with pytest.raises(ParseError) as err:
            parse_layout("bedroom: (0,0),(300,0),(300,5),(0,5)")
        assert "outside" in str(err.value)
        with pytest.raises(ParseError):
            parse_layout("bedroom: (0,0),(-3,0),(5,5)")

    def test_too_few_vertices(self):
        with pytest.raises(ParseError) as err:
            parse_layout("bedroom: (1,1)")
        assert "fewer than 3" in str(err.value)
        with pytest.raises(ParseError):
            parse_layout("bedroom: (1,1),(2,2)")

    def test_malformed_point(self):
        for bad in ["bedroom: (1,)", "bedroom: 1,2", "bedroom: (1;2)", "bedroom: (1,2"]:
            with pytest.raises(ParseError):
                parse_layout(bad)

    def test_trailing_separator(self):
        with pytest.raises(ParseError):
            parse_layout("bedroom: (0,0),(5,0),(5,5),(0,5), ")

    def test_bytes_input(self):
        assert parse_layout(PAPER_BEDROOM.encode()) == parse_layout(PAPER_BEDROOM)
        with pytest.raises(ParseError):
            parse_layout(b"\xff\xfe junk")


class TestSerialize:
    def test_canonical_paper_example(self):
        assert serialize_layout(parse_layout(PAPER_BEDROOM)) == PAPER_BEDROOM

    def test_living_room_canonical_form(self):
        layout = parse_layout("living room: (0,0),(4,0),(4,4),(0,4)")
        assert serialize_layout(layout).startswith("living_room: (0,0)")

    def test_serialize_then_parse_is_identity(self, layout_corpus):
        for layout in layout_corpus:
            assert parse_layout(serialize_layout(layout)) == layout

    def test_parse_then_serialize_is_canonicalizing_and_idempotent(self):
        messy = " Bedroom : (0,0) ,(5, 0), (5,5),(0,5) ,living room: (5,0),(9,0),(9,5),(5,5)"
        canonical = serialize_layout(parse_layout(messy))
        assert canonical == "bedroom: (0,0),(5,0),(5,5),(0,5), living_room: (5,0),(9,0),(9,5),(5,5)"
        assert serialize_layout(parse_layout(canonical)) == canonical


_room_strategy = st.builds(
    lambda kind, pts: Room(kind, tuple(Point(x, y) for x, y in pts)),
    st.sampled_from(list(RoomType)),
    st.lists(
        st.tuples(st.integers(0, 256), st.integers(0, 256)), min_size=3, max_size=8
    ),
)


@given(st.lists(_room_strategy, min_size=1, max_size=6))
@settings(max_examples=200)
def test_grammar_round_trip_any_layout(rooms):
    layout = Layout(tuple(rooms))
    assert parse_layout(serialize_layout(layout)) == layout


class TestRoomArea:
    def test_unit_square(self):
        room = Room(RoomType.KITCHEN, (Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)))
        assert room_area(room) == 1

    def test_paper_bedroom_is_15(self):
        assert room_area(parse_layout(PAPER_BEDROOM).rooms[0]) == 15

    def test_l_shaped_hexagon(self):
        room = Room(
            RoomType.CORRIDOR,
            (Point(0, 0), Point(2, 0), Point(2, 1), Point(1, 1), Point(1, 2), Point(0, 2)),
        )
        assert room_area(room) == 3

    def test_degenerate_raises(self):
        room = Room(RoomType.KITCHEN, (Point(0, 0), Point(1, 1), Point(2, 2)))
        with pytest.raises(ValueError):
            room_area(room)

    @given(
        st.integers(1, 30), st.integers(1, 30), st.integers(0, 200), st.integers(0, 200),
        st.integers(1, 8),
    )
    def test_translation_rotation_scale_invariance(self, w, h, dx, dy, k):
        base = rect_room(RoomType.BEDROOM, 0, 0, w, h)
        translated = base.translated(dx, dy)
        assert room_area(translated) == room_area(base)
        rotated = Room(base.kind, tuple(Point(p.y, -p.x + w) for p in base.vertices))
        assert room_area(rotated) == room_area(base)
        scaled = Room(base.kind, tuple(Point(k * p.x, k * p.y) for p in base.vertices))
        assert room_area(scaled) == k * k * room_area(base)


class TestCentroid:
    def test_rectangle_centroid(self):
        room = parse_layout(PAPER_BEDROOM).rooms[0]
        assert room_centroid(room) == (Fraction(21, 2), Fraction(21, 2))

    def test_l_shape_centroid(self):
        room = Room(
            RoomType.CORRIDOR,
            (Point(0, 0), Point(2, 0), Point(2, 1), Point(1, 1), Point(1, 2), Point(0, 2)),
        )
        cx, cy = room_centroid(room)
        assert cx == cy == Fraction(5, 6)


class TestScaleToBbox:
    def test_full_span_identity(self):
        layout = Layout(
            (
                rect_room(RoomType.LIVING_ROOM, 0, 0, 256, 128),
                rect_room(RoomType.KITCHEN, 0, 128, 256, 256),
            )
        )
        assert scale_to_bbox(layout) == layout

    def test_32_grid_scales_by_8(self):
        layout = Layout(
            (
                rect_room(RoomType.LIVING_ROOM, 0, 0, 32, 16),
                rect_room(RoomType.KITCHEN, 0, 16, 32, 32),
            )
        )
        scaled = scale_to_bbox(layout)
        assert bounding_box(scaled) == (0, 0, 256, 256)
        assert scaled.rooms[0].vertices[0] == Point(256, 128)

    def test_shared_edge_stays_shared(self):
        left = rect_room(RoomType.BEDROOM, 1, 1, 5, 6)
        right = rect_room(RoomType.BATHROOM, 5, 1, 9, 6)
        scaled = scale_to_bbox(Layout((left, right)))
        a, b = scaled.rooms
        assert max(p.x for p in a.vertices) == min(p.x for p in b.vertices)

    def test_centering(self):
        layout = Layout((rect_room(RoomType.KITCHEN, 0, 0, 8, 4),))
        scaled = scale_to_bbox(layout)
        xmin, ymin, xmax, ymax = bounding_box(scaled)
        assert (xmin, xmax) == (0, 256)
        assert ymin == (256 - (ymax - ymin)) // 2

    def test_oversized_rejected(self):
        layout = Layout((rect_room(RoomType.KITCHEN, 0, 0, 300, 4),))
        with pytest.raises(ValueError):
            scale_to_bbox(layout)

    def test_category_preserved(self, layout_corpus):
        for layout in layout_corpus[:20]:
            assert category_of(scale_to_bbox(layout)) == category_of(layout)


class TestCategory:
    def test_two_one(self):
        layout = Layout(
            (
                rect_room(RoomType.BEDROOM, 0, 0, 3, 3),
                rect_room(RoomType.BEDROOM, 3, 0, 6, 3),
                rect_room(RoomType.BATHROOM, 0, 3, 3, 6),
            )
        )
        assert category_of(layout) == CategoryKey(2, 1)
        assert category_of(layout).label == "2/1"

    def test_corridor_only_is_zero_zero(self):
        layout = Layout((rect_room(RoomType.CORRIDOR, 0, 0, 4, 2),))
        assert category_of(layout) == CategoryKey(0, 0)

    def test_label_round_trip(self):
        assert CategoryKey.from_label("4/3") == CategoryKey(4, 3)
