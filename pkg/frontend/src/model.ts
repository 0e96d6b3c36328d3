/** View-model layer: pure functions from server responses to what the
 * console shows. Every displayed verdict is a field read, never a
 * recomputation, so the contract tests can compare them 1:1. */

import type { GenerateResponse, GenerateResponseItem, PromptEntry } from "./types.js";

export interface GenerationCard {
  /** Position in the server response, used as a stable identity. */
  index: number;
  /** The untouched server item; badges read straight from it. */
  item: GenerateResponseItem;
  /** Client-side only; never sent anywhere. */
  bookmarked: boolean;
}

export function toCards(response: GenerateResponse): GenerationCard[] {
  return response.items.map((item, index) => ({ index, item, bookmarked: false }));
}

/** Descending server-reported diversity; invalid items (null diversity)
 * sink to the end; ties keep response order. */
export function sortByDiversity(cards: GenerationCard[]): GenerationCard[] {
  return [...cards].sort((a, b) => {
    const da = a.item.spatial_diversity;
    const db = b.item.spatial_diversity;
    if (da === null && db === null) return a.index - b.index;
    if (da === null) return 1;
    if (db === null) return -1;
    if (db !== da) return db - da;
    return a.index - b.index;
  });
}

export function toggleBookmark(cards: GenerationCard[], index: number): GenerationCard[] {
  return cards.map((c) => (c.index === index ? { ...c, bookmarked: !c.bookmarked } : c));
}

/** Badge strings shown on a card. Pure formatting of response fields. */
export interface CardBadges {
  valid: string;
  correct: string;
  ood: string | null;
  diversity: string;
  category: string;
}

export function cardBadges(item: GenerateResponseItem): CardBadges {
  return {
    valid: item.valid ? "valid ✓" : "valid ✗",
    correct: item.correct ? "correct ✓" : "correct ✗",
    ood: item.ood === true ? "OOD" : null,
    diversity: item.spatial_diversity === null ? "–" : item.spatial_diversity.toFixed(3),
    category: item.category ?? "–",
  };
}

export const CATEGORY_ORDER = ["RG", "RS", "AP", "AN", "LU", "LNU"];

export interface PromptGroup {
  category: string;
  prompts: PromptEntry[];
}

/** Group the suite for the picker, in the fixed category order. */
export function groupPrompts(entries: PromptEntry[]): PromptGroup[] {
  const groups = new Map<string, PromptEntry[]>();
  for (const entry of entries) {
    const bucket = groups.get(entry.category) ?? [];
    bucket.push(entry);
    groups.set(entry.category, bucket);
  }
  const ordered = [...groups.keys()].sort(
    (a, b) => CATEGORY_ORDER.indexOf(a) - CATEGORY_ORDER.indexOf(b),
  );
  return ordered.map((category) => ({ category, prompts: groups.get(category)! }));
}

/** The six template shapes, shown when the server rejects a prompt. */
export const TEMPLATE_SHAPES = [
  "a house with <number> rooms",
  "a house with <number> bedrooms and <number> bathrooms",
  "the|a <room> is adjacent to the <room>",
  "the|a <room> is not adjacent to the <room>",
  "the|a <room> is in the <direction> side of the house",
  "rooms: bathroom, bedroom, corridor, kitchen, living room; directions: the eight compass points",
];
