/** Server response shapes, mirrored field-for-field from docs/api.md.
 * The UI never recomputes any of these values; it only displays them. */

export interface Violation {
  kind: string;
  rooms: number[];
  detail: string;
}

export interface GenerateResponseItem {
  layout: string;
  valid: boolean;
  violations: Violation[];
  correct: boolean;
  category: string | null;
  ood: boolean | null;
  spatial_diversity: number | null;
  svg: string | null;
}

export interface GenerateResponse {
  items: GenerateResponseItem[];
}

export interface PromptEntry {
  id: string;
  text: string;
  category: string;
}

export interface AnnotationInfo {
  text: string;
  category: string;
  [field: string]: unknown;
}

export interface CheckResponse {
  valid: boolean;
  violations: Violation[];
  category?: string;
  annotations?: AnnotationInfo[];
  svg?: string;
}
