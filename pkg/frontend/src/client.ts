/**
 * Typed client for the assistant service.
 *
 * Each method is one HTTP round trip returning the parsed body. Non-2xx
 * responses become ApiError carrying the service's error code, so
 * callers branch on `code` rather than on status numbers. The fetch
 * implementation is injectable, which is how the tests substitute a
 * mock server.
 */

import type {
  ItemCard,
  QueryReply,
  SearchReply,
  SelectReply,
  Storyboard,
} from "./contract.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

/** Error raised for any non-2xx service response. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export interface ClientOptions {
  /** Origin prefix without a trailing slash. Empty means same origin. */
  baseUrl?: string;
  /** Substitute transport, defaults to the global fetch. */
  fetchImpl?: FetchLike;
}

export class AssistantClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(options: ClientOptions = {}) {
    this.baseUrl = options.baseUrl ?? "";
    this.fetchImpl =
      options.fetchImpl ?? ((input, init) => fetch(input, init));
  }

  /** Sends one utterance, threading the session id when one exists. */
  query(text: string, sessionId?: string | null): Promise<QueryReply> {
    const body: Record<string, unknown> = { text };
    if (sessionId) {
      body.session_id = sessionId;
    }
    return this.request("POST", "/api/query", body);
  }

  /** Marks an item as the session's discussion subject. */
  select(sessionId: string, itemId: string): Promise<SelectReply> {
    const path = `/api/sessions/${encodeURIComponent(sessionId)}/select`;
    return this.request("POST", path, { item_id: itemId });
  }

  itemCard(itemId: string): Promise<ItemCard> {
    return this.request("GET", `/api/items/${encodeURIComponent(itemId)}`);
  }

  storyboard(itemId: string): Promise<Storyboard> {
    const path = `/api/items/${encodeURIComponent(itemId)}/storyboard`;
    return this.request("GET", path);
  }

  search(q: string, k?: number): Promise<SearchReply> {
    const params = new URLSearchParams({ q });
    if (k !== undefined) {
      params.set("k", String(k));
    }
    return this.request("GET", `/api/search?${params.toString()}`);
  }

  /** URL for an image entity's raster bytes, for use in img tags. */
  imageUrl(imageId: string): string {
    return `${this.baseUrl}/api/images/${encodeURIComponent(imageId)}`;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    let payload: unknown = null;
    try {
      payload = await response.json();
    } catch {
      // fall through: a body-less error still raises below
    }
    if (!response.ok) {
      const shaped = payload as { error?: string; message?: string } | null;
      throw new ApiError(
        response.status,
        shaped?.error ?? "http_error",
        shaped?.message ?? `request failed with status ${response.status}`,
      );
    }
    return payload as T;
  }
}
