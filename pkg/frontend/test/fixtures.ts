/**
 * Responses recorded from a live service instance over the bundled
 * demo catalog. The mock server replays these verbatim, so the tests
 * exercise the exact bodies the real service produces.
 */

import type {
  ErrorBody,
  ItemCard,
  QueryReply,
  SearchReply,
  SelectReply,
  Storyboard,
} from "../src/contract.js";

/** Session id the service issued during the recording. */
export const SESSION_ID = "dc4026e0a48f4774b4b14b2e66d84070";

export const queryLipsticks: QueryReply = {
  session_id: SESSION_ID,
  intent: "ViewItem",
  payload: {
    items: [
      { id: "item:lip1", label: "MAC子弹头口红", score: 2.2 },
      { id: "item:lip2", label: "雾面哑光口红", score: 2.1818181818181817 },
    ],
  },
};

export const queryReturns: QueryReply = {
  session_id: SESSION_ID,
  intent: "ItemQuestion",
  payload: {
    text: "支持7天无理由退货。",
    images: [],
    source: "faq",
  },
};

export const queryFallback: QueryReply = {
  session_id: SESSION_ID,
  intent: "OutOfScope",
  payload: {
    text: "抱歉，这个问题我还回答不了。",
    images: [],
    source: "fallback",
  },
};

export const selectMianmo: SelectReply = {
  ok: true,
  session_id: SESSION_ID,
  current_item: "item:mianmo",
};

export const cardMianmo: ItemCard = {
  id: "item:mianmo",
  title: "面膜",
  sections: {
    appearance: ["img:mianmo"],
    poi: [{ id: "poi:baixi", label: "皮肤白皙", images: ["img:baixi"] }],
    comment: ["用了皮肤亮了很多"],
  },
  properties: [{ name: "成分", value: "甘草酸二钾" }],
};

export const storyboardMianmo: Storyboard = {
  item: "item:mianmo",
  frames: [
    {
      node: "scn:aoye",
      kind: "Scenario",
      utterance: "熬夜容易导致皮肤暗沉",
      images: [],
    },
    {
      node: "prb:anchen",
      kind: "Problem",
      utterance: "皮肤暗沉的困扰，需要皮肤白皙",
      images: [],
    },
    {
      node: "poi:baixi",
      kind: "POI",
      utterance: "想要皮肤白皙，看准甘草酸二钾",
      images: ["img:baixi"],
    },
    {
      node: "pv:gancaosuan",
      kind: "PropertyValue",
      utterance: "甘草酸二钾，帮你实现皮肤白皙",
      images: [],
    },
    {
      node: "item:mianmo",
      kind: "Item",
      utterance: "面膜，让皮肤白皙成为日常",
      images: ["img:mianmo"],
    },
  ],
};

export const searchLipstick: SearchReply = {
  items: [
    { id: "item:lip1", label: "MAC子弹头口红", score: 2.2222222222222223 },
    { id: "item:lip2", label: "雾面哑光口红", score: 2.2 },
  ],
};

export const notFound: ErrorBody = {
  error: "not_found",
  message: "no entity with id 'item:nope'",
};

export const blankQuery: ErrorBody = {
  error: "bad_request",
  message: "text must be non-empty",
};
