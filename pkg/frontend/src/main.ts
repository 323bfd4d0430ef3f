/** Browser bootstrap: wires the API client and renderers to the page. */

import { ApiError, SessionClient } from "./api.js";
import {
  renderRanking,
  renderScoreboard,
  renderShelf,
  renderTree,
  renderTreeComplete,
} from "./render.js";
import {
  SequenceGate,
  rankingView,
  scoreboardView,
  shelfView,
  treeView,
} from "./viewmodel.js";

const client = new SessionClient("");
const gate = new SequenceGate();

let sessionId: string | null = null;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(message: string) {
  el("error").textContent = message;
}

async function refresh() {
  if (!sessionId) return;
  const ticket = gate.next();
  try {
    const tree = await client.tree(sessionId);
    if (!gate.isCurrent(ticket)) return;
    el("tree").innerHTML = renderTree(treeView(tree));
    if (tree.complete) {
      el("frontier").innerHTML = renderTreeComplete();
    } else {
      const frontier = await client.frontier(sessionId);
      if (!gate.isCurrent(ticket)) return;
      el("frontier").innerHTML = renderRanking(rankingView(frontier));
    }
    const shelf = await client.shelf(sessionId);
    if (!gate.isCurrent(ticket)) return;
    el("shelf").innerHTML = renderShelf(shelfView(shelf.trees));
    showError("");
  } catch (err) {
    if (gate.isCurrent(ticket)) showError(String(err));
  }
}

async function onCreate() {
  const schemaText = (el("schema") as HTMLTextAreaElement).value;
  const dataText = (el("data") as HTMLTextAreaElement).value;
  try {
    const created = await client.createSession(schemaText, dataText);
    sessionId = created.session_id;
    el("session-id").textContent = sessionId;
    await refresh();
  } catch (err) {
    showError(String(err));
  }
}

async function onChoose(index: number) {
  if (!sessionId) return;
  try {
    await client.choose(sessionId, index);
    await refresh();
  } catch (err) {
    // invalid choices leave the session unchanged; keep the current view
    if (err instanceof ApiError && err.status === 400) {
      showError(err.detail);
    } else {
      showError(String(err));
    }
  }
}

async function onAutocomplete() {
  if (!sessionId) return;
  await client.autocomplete(sessionId);
  await refresh();
}

async function onPrune() {
  if (!sessionId) return;
  try {
    await client.prune(sessionId, { method: "pessimistic" });
    await refresh();
  } catch (err) {
    showError(String(err));
  }
}

async function onShelfEval() {
  if (!sessionId) return;
  const schemaText = (el("schema") as HTMLTextAreaElement).value;
  const testText = (el("test-data") as HTMLTextAreaElement).value;
  try {
    const payload = await client.shelfEval(sessionId, schemaText, testText);
    el("scoreboard").innerHTML = renderScoreboard(scoreboardView(payload));
  } catch (err) {
    showError(String(err));
  }
}

export function bootstrap() {
  el("create").addEventListener("click", () => void onCreate());
  el("autocomplete").addEventListener("click", () => void onAutocomplete());
  el("prune").addEventListener("click", () => void onPrune());
  el("eval").addEventListener("click", () => void onShelfEval());
  el("frontier").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest("[data-choose]");
    if (target) {
      void onChoose(Number(target.getAttribute("data-choose")));
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("create")) {
  bootstrap();
}
