"""Annotations: octants, extraction, rendering, prompt parsing."""

import math
import random
from fractions import Fraction

import pytest

from textplan.core import Layout, RoomType, scale_to_bbox
from textplan.semantics import (
    AdjacentTo,
    CompassOctant,
    LocatedIn,
    NotAdjacentTo,
    PromptParseError,
    RoomCount,
    RoomMix,
    annotation_category,
    annotation_to_json,
    check_correctness,
    classify_octant,
    extract_annotations,
    octant_of_vector,
    parse_prompt,
    render_annotation,
)

from test_core import rect_room


def all_annotations():
    """The complete enumerable annotation space."""
    anns = [RoomCount(n) for n in range(1, 11)]
    anns += [RoomMix(b, t) for b in range(1, 11) for t in range(1, 11)]
    for subject in RoomType:
        for obj in RoomType:
            if subject is obj:
                continue
            for unique in (True, False):
                anns.append(AdjacentTo(subject, unique, obj))
                anns.append(NotAdjacentTo(subject, unique, obj))
    anns += [
        LocatedIn(subject, unique, direction)
        for subject in RoomType
        for unique in (True, False)
        for direction in CompassOctant
    ]
    return anns


class TestOctants:
    def test_centroid_at_center_is_deadzone(self):
        assert classify_octant((10, 10), (10, 10), 20) is None

    def test_axis_directions(self):
        assert octant_of_vector(0, 10) is CompassOctant.N
        assert octant_of_vector(10, 0) is CompassOctant.E
        assert octant_of_vector(0, -10) is CompassOctant.S
        assert octant_of_vector(-10, 0) is CompassOctant.W

    def test_diagonals(self):
        assert octant_of_vector(10, 10) is CompassOctant.NE
        assert octant_of_vector(10, -10) is CompassOctant.SE
        assert octant_of_vector(-10, -10) is CompassOctant.SW
        assert octant_of_vector(-10, 10) is CompassOctant.NW

    def test_sector_boundary_is_half_open_clockwise(self):
        # tan(22.5°) = 0.41421356...; straddle it on both sides.
        assert octant_of_vector(41421, 100000) is CompassOctant.N
        assert octant_of_vector(41422, 100000) is CompassOctant.NE

    def test_matches_float_bearings_everywhere(self):
        order = [
            CompassOctant.N, CompassOctant.NE, CompassOctant.E, CompassOctant.SE,
            CompassOctant.S, CompassOctant.SW, CompassOctant.W, CompassOctant.NW,
        ]
        rng = random.Random(0)
        for _ in range(3000):
            x, y = rng.randint(-500, 500), rng.randint(-500, 500)
            if (x, y) == (0, 0):
                continue
            bearing = math.degrees(math.atan2(x, y)) % 360.0
            expected = order[int(((bearing + 22.5) % 360.0) // 45.0)]
            assert octant_of_vector(x, y) is expected, (x, y)

    def test_deadzone_boundary_is_exclusive(self):
        # Threshold = 5% of 20 = 1; distance exactly 1 classifies.
        assert classify_octant((10, 11), (10, 10), 20) is CompassOctant.N
        # Slightly inside stays unclassified.
        assert classify_octant((10, Fraction(219, 20)), (10, 10), 20) is None


def three_room_fixture():
    """Living room center, single bedroom due north, kitchen due south."""
    return Layout(
        (
            rect_room(RoomType.LIVING_ROOM, 0, 10, 20, 20),
            rect_room(RoomType.BEDROOM, 0, 20, 20, 30),
            rect_room(RoomType.KITCHEN, 0, 0, 20, 10),
        )
    )


class TestExtract:
    def test_room_count_and_mix(self):
        layout = Layout(
            (
                rect_room(RoomType.LIVING_ROOM, 0, 0, 10, 10),
                rect_room(RoomType.BEDROOM, 10, 0, 20, 10),
                rect_room(RoomType.BEDROOM, 0, 10, 10, 20),
                rect_room(RoomType.BATHROOM, 10, 10, 16, 20),
                rect_room(RoomType.BATHROOM, 16, 10, 20, 20),
                rect_room(RoomType.BATHROOM, 20, 0, 26, 10),
            )
        )
        anns = extract_annotations(layout)
        assert RoomCount(6) in anns
        assert RoomMix(2, 3) in anns
        assert render_annotation(RoomMix(2, 3)) == "a house with two bedrooms and three bathrooms"

    def test_five_rooms_renders_paper_sentence(self):
        layout = Layout(
            (
                rect_room(RoomType.LIVING_ROOM, 0, 0, 10, 10),
                rect_room(RoomType.BEDROOM, 10, 0, 20, 10),
                rect_room(RoomType.BATHROOM, 0, 10, 10, 16),
                rect_room(RoomType.KITCHEN, 10, 10, 20, 16),
                rect_room(RoomType.CORRIDOR, 0, 16, 10, 20),
            )
        )
        anns = extract_annotations(layout)
        assert RoomCount(5) in anns
        assert render_annotation(RoomCount(5)) == "a house with five rooms"

    def test_unique_bedroom_north(self):
        anns = extract_annotations(three_room_fixture())
        assert LocatedIn(RoomType.BEDROOM, True, CompassOctant.N) in anns
        assert LocatedIn(RoomType.KITCHEN, True, CompassOctant.S) in anns
        # Living room sits at the exact center: deadzone, no location.
        assert not any(
            isinstance(a, LocatedIn) and a.subject is RoomType.LIVING_ROOM for a in anns
        )

    def test_adjacency_annotations(self):
        anns = extract_annotations(three_room_fixture())
        assert AdjacentTo(RoomType.BEDROOM, True, RoomType.LIVING_ROOM) in anns
        assert NotAdjacentTo(RoomType.BEDROOM, True, RoomType.KITCHEN) in anns
        assert AdjacentTo(RoomType.BEDROOM, True, RoomType.KITCHEN) not in anns

    def test_non_unique_subjects(self):
        # Two bedrooms: one touching the kitchen, one far from it.
        layout = Layout(
            (
                rect_room(RoomType.KITCHEN, 0, 0, 10, 10),
                rect_room(RoomType.BEDROOM, 10, 0, 20, 10),
                rect_room(RoomType.BEDROOM, 30, 0, 40, 10),
                rect_room(RoomType.CORRIDOR, 20, 0, 30, 10),
            )
        )
        anns = extract_annotations(layout)
        assert AdjacentTo(RoomType.BEDROOM, False, RoomType.KITCHEN) in anns
        assert NotAdjacentTo(RoomType.BEDROOM, False, RoomType.KITCHEN) in anns
        assert AdjacentTo(RoomType.BEDROOM, True, RoomType.KITCHEN) not in anns

    def test_invalid_layout_rejected(self):
        layout = Layout(
            (rect_room(RoomType.BEDROOM, 0, 0, 5, 5), rect_room(RoomType.KITCHEN, 20, 20, 25, 25))
        )
        with pytest.raises(ValueError, match="invalid"):
            extract_annotations(layout)

    def test_at_most_one_rg_and_rs(self, layout_corpus):
        for layout in layout_corpus[:40]:
            anns = extract_annotations(layout)
            assert sum(isinstance(a, RoomCount) for a in anns) <= 1
            assert sum(isinstance(a, RoomMix) for a in anns) <= 1

    def test_unique_adjacency_mutually_exclusive(self, layout_corpus):
        for layout in layout_corpus[:40]:
            anns = extract_annotations(layout)
            for a in anns:
                if isinstance(a, AdjacentTo) and a.subject_unique:
                    assert NotAdjacentTo(a.subject, True, a.obj) not in anns

    def test_lu_lnu_never_coexist_per_type(self, layout_corpus):
        for layout in layout_corpus[:40]:
            anns = extract_annotations(layout)
            unique_subjects = {a.subject for a in anns if isinstance(a, LocatedIn) and a.unique}
            plural_subjects = {
                a.subject for a in anns if isinstance(a, LocatedIn) and not a.unique
            }
            assert not (unique_subjects & plural_subjects)

    def test_invariant_under_reordering_and_scaling(self, layout_corpus):
        rng = random.Random(3)
        for layout in layout_corpus[:25]:
            rooms = list(layout.rooms)
            rng.shuffle(rooms)
            assert extract_annotations(Layout(tuple(rooms))) == extract_annotations(layout)
            assert extract_annotations(scale_to_bbox(layout)) == extract_annotations(layout)


class TestRender:
    def test_paper_sentences(self):
        assert (
            render_annotation(NotAdjacentTo(RoomType.KITCHEN, True, RoomType.BATHROOM))
            == "the kitchen is not adjacent to the bathroom"
        )
        assert (
            render_annotation(LocatedIn(RoomType.BATHROOM, True, CompassOctant.SE))
            == "the bathroom is in the south east side of the house"
        )
        assert render_annotation(RoomMix(1, 1)) == "a house with one bedroom and one bathroom"

    def test_articles_and_living_room_words(self):
        assert (
            render_annotation(AdjacentTo(RoomType.BEDROOM, False, RoomType.LIVING_ROOM))
            == "a bedroom is adjacent to the living room"
        )

    def test_one_room_pluralization(self):
        assert render_annotation(RoomCount(1)) == "a house with one room"
        assert render_annotation(RoomCount(10)) == "a house with ten rooms"


class TestParsePrompt:
    def test_room_count(self):
        assert parse_prompt("a house with seven rooms") == RoomCount(7)

    def test_adjacency(self):
        assert parse_prompt("a bedroom is adjacent to the kitchen") == AdjacentTo(
            RoomType.BEDROOM, False, RoomType.KITCHEN
        )
        assert parse_prompt("the bathroom is not adjacent to the living room") == NotAdjacentTo(
            RoomType.BATHROOM, True, RoomType.LIVING_ROOM
        )

    def test_location(self):
        assert parse_prompt("a bedroom is in the north west side of the house") == LocatedIn(
            RoomType.BEDROOM, False, CompassOctant.NW
        )

    def test_published_typos_normalize(self):
        assert parse_prompt("a house with two bedrooms and one bathrooms") == RoomMix(2, 1)
        assert parse_prompt("a house with three bedroom and three bathrooms") == RoomMix(3, 3)
        assert parse_prompt("the bedroom is in the west east side of the house") == LocatedIn(
            RoomType.BEDROOM, True, CompassOctant.W
        )

    def test_case_and_whitespace_insensitive(self):
        assert parse_prompt("  A House   with FIVE rooms ") == RoomCount(5)
        assert parse_prompt("the LIVING_ROOM is adjacent to the kitchen") == AdjacentTo(
            RoomType.LIVING_ROOM, True, RoomType.KITCHEN
        )

    def test_errors(self):
        with pytest.raises(PromptParseError):
            parse_prompt("a house with eleven rooms")
        with pytest.raises(PromptParseError):
            parse_prompt("the garage is adjacent to the kitchen")
        with pytest.raises(PromptParseError):
            parse_prompt("the bedroom is in the up side of the house")
        with pytest.raises(PromptParseError):
            parse_prompt("draw me a house")
        with pytest.raises(PromptParseError):
            parse_prompt("the bedroom is adjacent to the bedroom")

    def test_round_trip_spot_checks(self):
        for ann in all_annotations()[::7]:
            assert parse_prompt(render_annotation(ann)) == ann


class TestCategoriesAndJson:
    def test_category_codes(self):
        assert annotation_category(RoomCount(5)) == "RG"
        assert annotation_category(RoomMix(2, 1)) == "RS"
        assert annotation_category(AdjacentTo(RoomType.BEDROOM, True, RoomType.KITCHEN)) == "AP"
        assert annotation_category(NotAdjacentTo(RoomType.BEDROOM, False, RoomType.KITCHEN)) == "AN"
        assert annotation_category(LocatedIn(RoomType.BEDROOM, True, CompassOctant.N)) == "LU"
        assert annotation_category(LocatedIn(RoomType.BEDROOM, False, CompassOctant.N)) == "LNU"

    def test_json_fields(self):
        data = annotation_to_json(LocatedIn(RoomType.LIVING_ROOM, False, CompassOctant.SW))
        assert data == {
            "category": "LNU",
            "subject": "living_room",
            "unique": False,
            "direction": "SW",
        }


class TestCheckCorrectness:
    def test_room_count_true_false(self):
        five = Layout(
            (
                rect_room(RoomType.LIVING_ROOM, 0, 0, 10, 10),
                rect_room(RoomType.BEDROOM, 10, 0, 20, 10),
                rect_room(RoomType.BATHROOM, 0, 10, 10, 16),
                rect_room(RoomType.KITCHEN, 10, 10, 20, 16),
                rect_room(RoomType.CORRIDOR, 0, 16, 10, 20),
            )
        )
        assert check_correctness("a house with five rooms", five)
        assert not check_correctness("a house with six rooms", five)

    def test_errors_are_distinct_from_incorrect(self):
        layout = three_room_fixture()
        with pytest.raises(PromptParseError):
            check_correctness("nonsense", layout)
        broken = Layout(
            (rect_room(RoomType.BEDROOM, 0, 0, 5, 5), rect_room(RoomType.KITCHEN, 20, 20, 25, 25))
        )
        with pytest.raises(ValueError):
            check_correctness("a house with five rooms", broken)

    def test_membership_semantics(self, layout_corpus):
        for layout in layout_corpus[:10]:
            anns = extract_annotations(layout)
            for ann in list(anns)[:8]:
                assert check_correctness(render_annotation(ann), layout)
