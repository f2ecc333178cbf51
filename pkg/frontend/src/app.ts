/**
 * Browser entry point: wires the store and renderers to the DOM.
 *
 * The page needs elements with ids: file-input, graph, potential, history,
 * diagnostics, toast, undo, redo, export, server-url.
 */

import { SessionClient } from "./api.js";
import { DEFAULT_LAYOUT, layout } from "./layout.js";
import { renderAll, renderError } from "./render.js";
import { ExplorerStore } from "./store.js";
import type { IqpDocument } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function currentStore(): ExplorerStore {
  const base = (el<HTMLInputElement>("server-url").value || "").trim() ||
    "http://127.0.0.1:8512";
  return new ExplorerStore(new SessionClient(base));
}

let store: ExplorerStore | null = null;

function redraw(): void {
  if (!store || !store.loaded) return;
  const state = store.state;
  const positions = layout(state.current, DEFAULT_LAYOUT);
  const views = renderAll(state, positions);
  el("graph").innerHTML = views.svg;
  el("potential").textContent = views.potential;
  el("history").innerHTML = views.history;
  el("diagnostics").innerHTML = views.diagnostics;
  el<HTMLButtonElement>("undo").disabled = !store.canUndo;
  el<HTMLButtonElement>("redo").disabled = !store.canRedo;
  el("toast").innerHTML = store.lastError
    ? renderError(store.lastError.message)
    : "";
}

async function onGraphClick(event: Event): Promise<void> {
  if (!store) return;
  const target = event.target as Element | null;
  const vertexAttr = target?.getAttribute?.("data-vertex");
  if (vertexAttr == null) return;
  await store.clickMutate(Number(vertexAttr));
  redraw();
}

async function onFile(event: Event): Promise<void> {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  const text = await file.text();
  let doc: IqpDocument;
  try {
    doc = JSON.parse(text) as IqpDocument;
  } catch (err) {
    el("toast").innerHTML = renderError(`cannot parse file: ${err}`);
    return;
  }
  store = currentStore();
  try {
    await store.loadDocument(doc);
  } catch (err) {
    el("toast").innerHTML = renderError(String(err));
    return;
  }
  redraw();
}

function download(name: string, content: string): void {
  const blob = new Blob([content], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

export function init(): void {
  el("file-input").addEventListener("change", (e) => void onFile(e));
  el("graph").addEventListener("click", (e) => void onGraphClick(e));
  el("undo").addEventListener("click", async () => {
    if (store) {
      await store.undo();
      redraw();
    }
  });
  el("redo").addEventListener("click", async () => {
    if (store) {
      await store.redo();
      redraw();
    }
  });
  el("export").addEventListener("click", () => {
    if (store && store.loaded) download("icequiver-export.json", store.exportDocument());
  });
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  init();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", init);
}
