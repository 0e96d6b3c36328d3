/** HTML string renderers for the console. All text content is escaped;
 * the SVG comes from our own service and is embedded as-is. */

import { cardBadges, GenerationCard, PromptGroup, TEMPLATE_SHAPES } from "./model.js";
import type { AnnotationInfo, CheckResponse, Violation } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function renderCard(card: GenerationCard): string {
  const badges = cardBadges(card.item);
  const badgeHtml = [
    `<span class="badge ${card.item.valid ? "ok" : "bad"}">${badges.valid}</span>`,
    `<span class="badge ${card.item.correct ? "ok" : "bad"}">${badges.correct}</span>`,
    badges.ood ? `<span class="badge ood">${badges.ood}</span>` : "",
    `<span class="badge">cat ${escapeHtml(badges.category)}</span>`,
    `<span class="badge diversity">w ${badges.diversity}</span>`,
  ]
    .filter(Boolean)
    .join("");
  const star = card.bookmarked ? "★" : "☆";
  const picture = card.item.svg
    ? card.item.svg
    : `<div class="no-plan">${escapeHtml(card.item.violations.map(violationLabel).join(", ") || "no drawing")}</div>`;
  return `
    <article class="card" data-index="${card.index}">
      <div class="plan">${picture}</div>
      <footer>
        <div class="badges">${badgeHtml}</div>
        <button class="bookmark" data-index="${card.index}" title="bookmark">${star}</button>
      </footer>
    </article>`;
}

function violationLabel(v: Violation): string {
  return v.rooms.length ? `${v.kind} (rooms ${v.rooms.join(", ")})` : v.kind;
}

export function renderCardGrid(cards: GenerationCard[]): string {
  if (!cards.length) {
    return `<p class="empty">No layouts yet; pick a prompt and generate.</p>`;
  }
  return cards.map(renderCard).join("\n");
}

export function renderPromptPicker(groups: PromptGroup[]): string {
  const options = groups
    .map((group) => {
      const opts = group.prompts
        .map((p) => `<option value="${escapeHtml(p.text)}">${escapeHtml(p.id)} — ${escapeHtml(p.text)}</option>`)
        .join("");
      return `<optgroup label="${escapeHtml(group.category)}">${opts}</optgroup>`;
    })
    .join("");
  return `<option value="">— prompt suite —</option>${options}`;
}

export function renderAnnotationList(annotations: AnnotationInfo[]): string {
  const items = annotations
    .map((a) => `<li><span class="cat">${escapeHtml(a.category)}</span> ${escapeHtml(a.text)}</li>`)
    .join("");
  return `<ul class="annotations">${items}</ul>`;
}

/** Detail panel for a clicked card: raw layout string plus what the
 * server says about it. */
export function renderDetail(layout: string, check: CheckResponse): string {
  const head = check.valid
    ? `<p>valid ✓ — category ${escapeHtml(check.category ?? "–")}</p>`
    : `<p>valid ✗ — ${escapeHtml(check.violations.map(violationLabel).join("; "))}</p>`;
  const annotations = check.annotations?.length
    ? renderAnnotationList(check.annotations)
    : "<p>(no annotations)</p>";
  return `
    <h3>Layout</h3>
    <pre class="layout-text">${escapeHtml(layout)}</pre>
    ${head}
    <h3>Annotations</h3>
    ${annotations}`;
}

export function renderErrorBanner(message: string, showTemplates: boolean): string {
  const hint = showTemplates
    ? `<p>Prompts follow one of these shapes:</p><ul>${TEMPLATE_SHAPES.map(
        (t) => `<li><code>${escapeHtml(t)}</code></li>`,
      ).join("")}</ul>`
    : "";
  return `
    <div class="banner error">
      <span>${escapeHtml(message)}</span>
      ${hint}
      <button class="retry">retry</button>
    </div>`;
}
