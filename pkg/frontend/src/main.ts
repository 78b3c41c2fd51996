/**
 * Browser entry point.
 *
 * The static shell (composer form, root element, styles) lives in
 * index.html. This module owns the mutable region and the event
 * wiring only. Clicks are dispatched through data-action attributes
 * so the handlers survive innerHTML re-renders.
 */

import { AssistantClient } from "./client.js";
import { createAssistantView } from "./view.js";

function boot(): void {
  const root = document.getElementById("app");
  const form = document.getElementById("composer") as HTMLFormElement | null;
  const input = document.getElementById(
    "composer-text",
  ) as HTMLInputElement | null;
  if (root === null || form === null || input === null) {
    throw new Error("page shell is missing #app, #composer or #composer-text");
  }

  const baseUrl = document.body.dataset.apiBase ?? "";
  const client = new AssistantClient({ baseUrl });
  const view = createAssistantView({
    client,
    onChange: () => {
      root.innerHTML = view.render();
      root.scrollTop = root.scrollHeight;
    },
  });
  root.innerHTML = view.render();

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value;
    if (!text.trim()) {
      return;
    }
    input.value = "";
    void view.sendQuery(text);
  });

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement | null;
    const actionable = target?.closest<HTMLElement>("[data-action]");
    if (!actionable) {
      return;
    }
    const itemId = actionable.dataset.itemId ?? "";
    switch (actionable.dataset.action) {
      case "select-item":
        void view.selectItem(itemId);
        break;
      case "open-storyboard":
        void view.openStoryboard(itemId);
        break;
      case "close-storyboard":
        view.closeStoryboard();
        break;
    }
  });
}

document.addEventListener("DOMContentLoaded", boot);
