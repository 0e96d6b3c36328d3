"""The built-in 58-prompt evaluation suite.

Texts are shipped verbatim as published, including their quirks: AP.3/AP.5
and AN.3/AN.5 repeat the same sentence, RS.3 says "one bathrooms", RS.8
says "three bedroom", and LU.7/LU.15 say "west east" (the west slot of the
octant sequence). ``parse_prompt`` normalizes all of them.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass


@dataclass(frozen=True)
class PromptEntry:
    id: str
    text: str
    category: str

    def to_json(self) -> dict:
        return {"id": self.id, "text": self.text, "category": self.category}


def _suite(*groups: tuple[str, list[str]]) -> tuple[PromptEntry, ...]:
    entries = []
    for category, texts in groups:
        for i, text in enumerate(texts, start=1):
            entries.append(PromptEntry(f"{category}.{i}", text, category))
    return tuple(entries)


PROMPT_SUITE: tuple[PromptEntry, ...] = _suite(
    (
        "AN",
        [
            "the bedroom is not adjacent to the living room",
            "a bedroom is not adjacent to the living room",
            "the bedroom is not adjacent to the kitchen",
            "a bedroom is not adjacent to the kitchen",
            "the bedroom is not adjacent to the kitchen",
            "the kitchen is not adjacent to the bathroom",
            "a bathroom is not adjacent to the living room",
            "the bathroom is not adjacent to the living room",
        ],
    ),
    (
        "AP",
        [
            "the bedroom is adjacent to the living room",
            "a bedroom is adjacent to the living room",
            "the bedroom is adjacent to the kitchen",
            "a bedroom is adjacent to the kitchen",
            "the bedroom is adjacent to the kitchen",
            "the kitchen is adjacent to the bathroom",
            "a bathroom is adjacent to the living room",
            "the bathroom is adjacent to the living room",
        ],
    ),
    (
        "LNU",
        [
            "a bedroom is in the north side of the house",
            "a bedroom is in the north east side of the house",
            "a bedroom is in the east side of the house",
            "a bedroom is in the south east side of the house",
            "a bedroom is in the south side of the house",
            "a bedroom is in the south west side of the house",
            "a bedroom is in the west side of the house",
            "a bedroom is in the north west side of the house",
        ],
    ),
    (
        "LU",
        [
            "the bedroom is in the north side of the house",
            "the bedroom is in the north east side of the house",
            "the bedroom is in the east side of the house",
            "the bedroom is in the south east side of the house",
            "the bedroom is in the south side of the house",
            "the bedroom is in the south west side of the house",
            "the bedroom is in the west east side of the house",
            "the bedroom is in the north west side of the house",
            "the kitchen is in the north side of the house",
            "the kitchen is in the north east side of the house",
            "the kitchen is in the east side of the house",
            "the kitchen is in the south east side of the house",
            "the kitchen is in the south side of the house",
            "the kitchen is in the south west side of the house",
            "the kitchen is in the west east side of the house",
            "the kitchen is in the north west side of the house",
        ],
    ),
    (
        "RG",
        [
            "a house with five rooms",
            "a house with six rooms",
            "a house with seven rooms",
            "a house with eight rooms",
            "a house with nine rooms",
            "a house with ten rooms",
        ],
    ),
    (
        "RS",
        [
            "a house with one bedroom and one bathroom",
            "a house with one bedroom and two bathrooms",
            "a house with two bedrooms and one bathrooms",
            "a house with two bedrooms and two bathrooms",
            "a house with two bedrooms and three bathrooms",
            "a house with three bedrooms and one bathroom",
            "a house with three bedrooms and two bathrooms",
            "a house with three bedroom and three bathrooms",
            "a house with four bedrooms and one bathroom",
            "a house with four bedrooms and two bathrooms",
            "a house with four bedrooms and three bathrooms",
            "a house with four bedrooms and four bathrooms",
        ],
    ),
)

#: Pinned SHA-256 of the shipped suite; tests recompute and compare.
SUITE_DIGEST = "d7795e848feecb379b7ed77247677dfd76d8a570007c29f2e99bead777dea8b5"


def suite_digest(suite: tuple[PromptEntry, ...] = PROMPT_SUITE) -> str:
    blob = "\n".join(f"{e.id}\t{e.text}\t{e.category}" for e in suite)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def prompt_by_id(prompt_id: str) -> PromptEntry:
    for entry in PROMPT_SUITE:
        if entry.id == prompt_id:
            return entry
    raise KeyError(prompt_id)
