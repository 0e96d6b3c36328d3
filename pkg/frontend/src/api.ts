/** Thin fetch wrappers for the textplan service. The base URL is the
 * only configuration the console takes. */

import type { CheckResponse, GenerateResponse, PromptEntry } from "./types.js";

export interface ApiConfig {
  baseUrl: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function request<T>(url: string, init: RequestInit, signal?: AbortSignal): Promise<T> {
  const response = await fetch(url, { ...init, signal });
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON error body; fall through with the status alone
  }
  if (!response.ok) {
    const detail =
      body && typeof body === "object" && "detail" in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export function fetchPrompts(cfg: ApiConfig, signal?: AbortSignal): Promise<PromptEntry[]> {
  return request(`${cfg.baseUrl}/api/prompts`, { method: "GET" }, signal);
}

export interface GenerateOptions {
  prompt: string;
  n: number;
  seed?: number;
}

export function generate(
  cfg: ApiConfig,
  options: GenerateOptions,
  signal?: AbortSignal,
): Promise<GenerateResponse> {
  return request(
    `${cfg.baseUrl}/api/generate`,
    {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(options),
    },
    signal,
  );
}

export function checkLayout(
  cfg: ApiConfig,
  layout: string,
  signal?: AbortSignal,
): Promise<CheckResponse> {
  return request(
    `${cfg.baseUrl}/api/check`,
    {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ layout }),
    },
    signal,
  );
}
