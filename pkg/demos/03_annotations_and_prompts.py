#!/usr/bin/env python3
"""What a layout 'says': annotation extraction and prompt correctness.

Run: python demos/03_annotations_and_prompts.py
"""

from textplan import (
    CategoryKey,
    annotation_category,
    check_correctness,
    extract_annotations,
    generate_layout,
    parse_prompt,
    render_annotation,
    sample_spec,
)

layout = generate_layout(sample_spec(CategoryKey(2, 1), rng_seed=21))

# Every true statement about the layout, grouped by category code.
anns = extract_annotations(layout)
by_cat: dict[str, list[str]] = {}
for a in anns:
    by_cat.setdefault(annotation_category(a), []).append(render_annotation(a))
for cat in ("RG", "RS", "AP", "AN", "LU", "LNU"):
    for text in sorted(by_cat.get(cat, [])):
        print(f"{cat:>4}  {text}")

# Prompts parse back into the same annotation values, so correctness is
# plain set membership.
prompt = "a house with two bedrooms and one bathroom"
print("\nprompt:", prompt)
print("parsed:", parse_prompt(prompt))
print("correct for this layout:", check_correctness(prompt, layout))
print("correct for 'a house with ten rooms':", check_correctness("a house with ten rooms", layout))

# The published prompt list's typos normalize too.
print("\n'west east' normalizes:", parse_prompt("the bedroom is in the west east side of the house"))
print("'one bathrooms' normalizes:", parse_prompt("a house with two bedrooms and one bathrooms"))
