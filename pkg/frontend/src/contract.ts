/**
 * Wire types for the assistant HTTP API.
 *
 * These mirror the JSON bodies the service produces, field names
 * included, so responses can be used directly without a mapping layer.
 * Anything the page derives for its own purposes lives in state.ts,
 * not here.
 */

/** Top-level classification the service assigns to a query. */
export type Intent = "ViewItem" | "ItemQuestion" | "OutOfScope";

/** Where an answer came from inside the service. */
export type AnswerOrigin = "kbqa" | "faq" | "fallback";

/** One ranked catalog hit. */
export interface ItemHit {
  id: string;
  label: string;
  score: number;
}

/** Payload for ViewItem replies: the ranked items to show as cards. */
export interface ItemListPayload {
  items: ItemHit[];
}

/** Payload for answer-style replies (ItemQuestion and OutOfScope). */
export interface AnswerPayload {
  text: string;
  images: string[];
  source: AnswerOrigin;
}

export type QueryPayload = ItemListPayload | AnswerPayload;

/** Response body of POST /api/query. */
export interface QueryReply {
  session_id: string;
  intent: Intent;
  payload: QueryPayload;
}

/** Response body of POST /api/sessions/{id}/select. */
export interface SelectReply {
  ok: boolean;
  session_id: string;
  current_item: string;
}

/** One point-of-interest block on an item card. */
export interface PoiEntry {
  id: string;
  label: string;
  images: string[];
}

/** Response body of GET /api/items/{id}. All section keys are always present. */
export interface ItemCard {
  id: string;
  title: string;
  sections: {
    appearance: string[];
    poi: PoiEntry[];
    comment: string[];
  };
  properties: { name: string; value: string }[];
}

/** One step of an item explanation sequence. */
export interface StoryFrame {
  node: string;
  kind: string;
  utterance: string;
  images: string[];
}

/** Response body of GET /api/items/{id}/storyboard. */
export interface Storyboard {
  item: string;
  frames: StoryFrame[];
}

/** Response body of GET /api/search. */
export interface SearchReply {
  items: ItemHit[];
}

/** Body every non-2xx response carries. */
export interface ErrorBody {
  error: string;
  message: string;
}

/** Narrows a query payload to the ranked-items variant. */
export function isItemList(payload: QueryPayload): payload is ItemListPayload {
  return "items" in payload;
}
