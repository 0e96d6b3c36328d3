/** Browser wiring for the prompt console: one in-flight generation at a
 * time (a new submit cancels the previous request), spinner while
 * waiting, card grid with badges, detail panel via /api/check, and a
 * sort-by-diversity toggle that reorders by the server's values. */

import { ApiError, ApiConfig, checkLayout, fetchPrompts, generate } from "./api.js";
import { GenerationCard, groupPrompts, sortByDiversity, toCards, toggleBookmark } from "./model.js";
import { renderCardGrid, renderDetail, renderErrorBanner, renderPromptPicker } from "./render.js";

const config: ApiConfig = {
  baseUrl: new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8000",
};

let cards: GenerationCard[] = [];
let diversitySort = false;
let inflight: AbortController | null = null;
let lastRequest: (() => void) | null = null;

const el = {
  prompt: document.getElementById("prompt") as HTMLInputElement,
  picker: document.getElementById("picker") as HTMLSelectElement,
  count: document.getElementById("count") as HTMLInputElement,
  seed: document.getElementById("seed") as HTMLInputElement,
  submit: document.getElementById("submit") as HTMLButtonElement,
  sort: document.getElementById("sort") as HTMLInputElement,
  spinner: document.getElementById("spinner") as HTMLElement,
  banner: document.getElementById("banner") as HTMLElement,
  grid: document.getElementById("grid") as HTMLElement,
  detail: document.getElementById("detail") as HTMLElement,
};

function redrawGrid(): void {
  const shown = diversitySort ? sortByDiversity(cards) : cards;
  el.grid.innerHTML = renderCardGrid(shown);
}

function showError(message: string, badPrompt: boolean): void {
  el.banner.innerHTML = renderErrorBanner(message, badPrompt);
  el.banner.querySelector(".retry")?.addEventListener("click", () => {
    el.banner.innerHTML = "";
    lastRequest?.();
  });
}

async function submit(): Promise<void> {
  const prompt = el.prompt.value.trim();
  if (!prompt) return;
  lastRequest = () => void submit();

  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;

  el.banner.innerHTML = "";
  el.spinner.hidden = false;
  try {
    const n = Math.max(1, Number(el.count.value) || 1);
    const seedText = el.seed.value.trim();
    const response = await generate(
      config,
      seedText ? { prompt, n, seed: Number(seedText) } : { prompt, n },
      controller.signal,
    );
    cards = toCards(response);
    redrawGrid();
    el.detail.innerHTML = "";
  } catch (err) {
    if (controller.signal.aborted) return; // superseded by a newer submit
    if (err instanceof ApiError) {
      showError(err.detail, err.status === 400);
    } else {
      showError(`service unreachable: ${String(err)}`, false);
    }
  } finally {
    if (inflight === controller) {
      inflight = null;
      el.spinner.hidden = true;
    }
  }
}

async function openDetail(index: number): Promise<void> {
  const card = cards.find((c) => c.index === index);
  if (!card) return;
  try {
    const check = await checkLayout(config, card.item.layout);
    el.detail.innerHTML = renderDetail(card.item.layout, check);
  } catch (err) {
    showError(`check failed: ${String(err)}`, false);
  }
}

function wire(): void {
  el.submit.addEventListener("click", () => void submit());
  el.prompt.addEventListener("keydown", (e) => {
    if (e.key === "Enter") void submit();
  });
  el.picker.addEventListener("change", () => {
    if (el.picker.value) {
      el.prompt.value = el.picker.value;
      void submit();
    }
  });
  el.sort.addEventListener("change", () => {
    diversitySort = el.sort.checked;
    redrawGrid();
  });
  el.grid.addEventListener("click", (e) => {
    const target = e.target as HTMLElement;
    const bookmark = target.closest<HTMLElement>("button.bookmark");
    if (bookmark) {
      cards = toggleBookmark(cards, Number(bookmark.dataset.index));
      redrawGrid();
      return;
    }
    const card = target.closest<HTMLElement>("article.card");
    if (card) void openDetail(Number(card.dataset.index));
  });

  void fetchPrompts(config)
    .then((prompts) => {
      el.picker.innerHTML = renderPromptPicker(groupPrompts(prompts));
    })
    .catch((err) => showError(`could not load prompt suite: ${String(err)}`, false));
}

wire();
