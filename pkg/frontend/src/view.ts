/**
 * State container and interaction methods for the assistant page.
 *
 * createAssistantView wires an AssistantClient to a ViewState and
 * exposes one async method per user interaction. Each method resolves
 * only after the state has settled and every change notification has
 * fired, so callers and tests can await a single call per step. The
 * view never touches the DOM, the browser binding in main.ts does.
 */

import { ApiError, AssistantClient } from "./client.js";
import { isItemList } from "./contract.js";
import { renderApp } from "./render.js";
import { initialState, type ViewState } from "./state.js";

export interface AssistantViewOptions {
  client: AssistantClient;
  /** Called after every state change with the live state object. */
  onChange?: (state: ViewState) => void;
}

export interface AssistantView {
  /** Live state object. Treat as read-only outside the view. */
  state(): ViewState;
  /** Current markup for the mutable page region. */
  render(): string;
  sendQuery(text: string): Promise<void>;
  selectItem(itemId: string): Promise<void>;
  openStoryboard(itemId: string): Promise<void>;
  closeStoryboard(): void;
}

export function createAssistantView(
  options: AssistantViewOptions,
): AssistantView {
  const client = options.client;
  const state = initialState();

  const notify = (): void => {
    options.onChange?.(state);
  };

  const fail = (error: unknown): void => {
    state.error =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : String(error);
  };

  /** Runs one interaction with the busy flag held and errors captured. */
  const step = async (action: () => Promise<void>): Promise<void> => {
    state.error = null;
    state.busy = true;
    notify();
    try {
      await action();
    } catch (error) {
      fail(error);
    } finally {
      state.busy = false;
      notify();
    }
  };

  return {
    state: () => state,
    render: () => renderApp(state, client.baseUrl),

    sendQuery(text: string): Promise<void> {
      return step(async () => {
        state.messages.push({ role: "user", text });
        notify();
        const reply = await client.query(text, state.sessionId);
        state.sessionId = reply.session_id;
        if (isItemList(reply.payload)) {
          state.ranking = reply.payload.items;
        } else {
          state.messages.push({ role: "assistant", answer: reply.payload });
        }
      });
    },

    selectItem(itemId: string): Promise<void> {
      return step(async () => {
        if (state.sessionId === null) {
          throw new Error("no active session, send a query first");
        }
        await client.select(state.sessionId, itemId);
        state.card = await client.itemCard(itemId);
        // a storyboard left open for the previous item would be stale
        state.storyboard = null;
      });
    },

    openStoryboard(itemId: string): Promise<void> {
      return step(async () => {
        state.storyboard = await client.storyboard(itemId);
      });
    },

    closeStoryboard(): void {
      state.storyboard = null;
      notify();
    },
  };
}
