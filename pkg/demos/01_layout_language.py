#!/usr/bin/env python3
"""Tour of the layout text format and the validity checker.

Run: python demos/01_layout_language.py
"""

from textplan import (
    parse_layout,
    room_area,
    room_centroid,
    serialize_layout,
    validate,
    validate_text,
)

# A single room, written the way a generator would emit it.
text = "bedroom: (13,12),(8,12),(8,9),(13,9)"
layout = parse_layout(text)
room = layout.rooms[0]
print("parsed:", room.kind.value, "with", len(room.vertices), "corners")
print("area:", room_area(room), "sq units   centroid:", room_centroid(room))

# Parsing tolerates messy spacing and the spaced living-room spelling;
# serialization always produces the canonical form.
messy = " Living Room : (0, 0) ,(10,0) , (10,10),(0,10),  kitchen: (10,0),(16,0),(16,10),(10,10)"
print("\ncanonical:", serialize_layout(parse_layout(messy)))

# Validity: simple rectilinear rooms, disjoint interiors, no orphans.
good = "bedroom: (0,0),(10,0),(10,10),(0,10), kitchen: (10,0),(16,0),(16,10),(10,10)"
print("\nshared-wall pair:", validate_text(good).to_json())

orphaned = "bedroom: (0,0),(10,0),(10,10),(0,10), kitchen: (30,30),(36,30),(36,40),(30,40)"
print("island kitchen:", validate_text(orphaned).to_json())

overlapping = "bedroom: (0,0),(10,0),(10,10),(0,10), kitchen: (5,5),(15,5),(15,15),(5,15)"
print("overlapping pair:", validate_text(overlapping).to_json())

# Anything that fails to parse is simply an invalid sample, not a crash.
print("garbage:", validate_text("two ducks and a pond").to_json())
