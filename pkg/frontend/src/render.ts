/**
 * Pure renderers from page state to HTML strings.
 *
 * Nothing in this module touches the DOM, so every branch is testable
 * by plain string inspection. The browser layer assigns the output to
 * innerHTML and re-renders after each state change; interactive
 * elements carry data-action attributes that the event wiring in
 * main.ts dispatches on.
 */

import type { AnswerPayload, ItemCard, ItemHit, Storyboard } from "./contract.js";
import type { ChatEntry, ViewState } from "./state.js";

/** Escapes text for safe interpolation into markup or attribute values. */
export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function imageSrc(imageBase: string, imageId: string): string {
  return `${imageBase}/api/images/${encodeURIComponent(imageId)}`;
}

function renderImages(
  imageBase: string,
  imageIds: string[],
  cssClass: string,
): string {
  return imageIds
    .map(
      (id) =>
        `<img class="${cssClass}" src="${escapeHtml(imageSrc(imageBase, id))}" alt="${escapeHtml(id)}">`,
    )
    .join("");
}

function renderAnswer(answer: AnswerPayload, imageBase: string): string {
  return [
    `<div class="bubble assistant" data-source="${escapeHtml(answer.source)}">`,
    `<p class="answer-text">${escapeHtml(answer.text)}</p>`,
    renderImages(imageBase, answer.images, "answer-image"),
    `<span class="source-badge">${escapeHtml(answer.source)}</span>`,
    `</div>`,
  ].join("");
}

export function renderMessages(
  messages: ChatEntry[],
  imageBase: string,
): string {
  const bubbles = messages
    .map((entry) =>
      entry.role === "user"
        ? `<div class="bubble user"><p>${escapeHtml(entry.text)}</p></div>`
        : renderAnswer(entry.answer, imageBase),
    )
    .join("");
  return `<div class="chat-log">${bubbles}</div>`;
}

/** Ranked hits as a row of selectable cards. */
export function renderItemCards(items: ItemHit[]): string {
  if (items.length === 0) {
    return "";
  }
  const cards = items
    .map(
      (item) =>
        `<article class="item-card" data-action="select-item" ` +
        `data-item-id="${escapeHtml(item.id)}">` +
        `<span class="item-label">${escapeHtml(item.label)}</span>` +
        `<span class="item-score">${item.score.toFixed(2)}</span>` +
        `</article>`,
    )
    .join("");
  return `<section class="ranking">${cards}</section>`;
}

/**
 * Detail pane for the selected item.
 *
 * Shows the three card sections (appearance images, point-of-interest
 * chips, comments) plus the property table, and offers the storyboard
 * button when the pane is open.
 */
export function renderCardDetail(card: ItemCard, imageBase: string): string {
  const chips = card.sections.poi
    .map(
      (poi) =>
        `<li class="poi-chip" data-poi-id="${escapeHtml(poi.id)}">` +
        renderImages(imageBase, poi.images, "poi-image") +
        `<span class="poi-label">${escapeHtml(poi.label)}</span>` +
        `</li>`,
    )
    .join("");
  const comments = card.sections.comment
    .map((line) => `<li class="comment">${escapeHtml(line)}</li>`)
    .join("");
  const rows = card.properties
    .map(
      (prop) =>
        `<tr><th>${escapeHtml(prop.name)}</th>` +
        `<td>${escapeHtml(prop.value)}</td></tr>`,
    )
    .join("");
  return [
    `<section class="item-detail" data-item-id="${escapeHtml(card.id)}">`,
    `<h2>${escapeHtml(card.title)}</h2>`,
    `<div class="appearance">${renderImages(imageBase, card.sections.appearance, "appearance-image")}</div>`,
    `<ul class="poi-chips">${chips}</ul>`,
    `<ul class="comments">${comments}</ul>`,
    `<table class="properties"><tbody>${rows}</tbody></table>`,
    `<button type="button" data-action="open-storyboard" ` +
      `data-item-id="${escapeHtml(card.id)}">看讲解</button>`,
    `</section>`,
  ].join("");
}

/** Explanation sequence as an ordered list of frames. */
export function renderStoryboard(
  storyboard: Storyboard,
  imageBase: string,
): string {
  const frames = storyboard.frames
    .map(
      (frame) =>
        `<li class="frame" data-node="${escapeHtml(frame.node)}">` +
        `<span class="frame-kind">${escapeHtml(frame.kind)}</span>` +
        `<p class="utterance">${escapeHtml(frame.utterance)}</p>` +
        renderImages(imageBase, frame.images, "frame-image") +
        `</li>`,
    )
    .join("");
  return [
    `<section class="storyboard" data-item-id="${escapeHtml(storyboard.item)}">`,
    `<ol class="frames">${frames}</ol>`,
    `<button type="button" data-action="close-storyboard">关闭</button>`,
    `</section>`,
  ].join("");
}

export function renderError(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}

/** Composes the whole mutable region of the page. */
export function renderApp(state: ViewState, imageBase: string): string {
  const parts = [renderMessages(state.messages, imageBase)];
  parts.push(renderItemCards(state.ranking));
  if (state.card !== null) {
    parts.push(renderCardDetail(state.card, imageBase));
  }
  if (state.storyboard !== null) {
    parts.push(renderStoryboard(state.storyboard, imageBase));
  }
  if (state.error !== null) {
    parts.push(renderError(state.error));
  }
  if (state.busy) {
    parts.push(`<div class="busy-indicator">…</div>`);
  }
  return parts.join("");
}
