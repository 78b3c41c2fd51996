/**
 * Page state shared by the renderers and the view controller.
 */

import type { AnswerPayload, ItemCard, ItemHit, Storyboard } from "./contract.js";

/** One bubble in the conversation log. */
export type ChatEntry =
  | { role: "user"; text: string }
  | { role: "assistant"; answer: AnswerPayload };

export interface ViewState {
  /** Session id handed out by the service on the first query. */
  sessionId: string | null;
  messages: ChatEntry[];
  /** Items from the latest ViewItem reply, shown as a card row. */
  ranking: ItemHit[];
  /** Detail card of the currently selected item. */
  card: ItemCard | null;
  /** Open explanation sequence, or null when the viewer is closed. */
  storyboard: Storyboard | null;
  error: string | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    messages: [],
    ranking: [],
    card: null,
    storyboard: null,
    error: null,
    busy: false,
  };
}
