import { beforeEach, describe, expect, it } from "vitest";

import { SessionClient } from "../src/api.js";
import { ExplorerStore } from "../src/store.js";
import type { IqpDocument } from "../src/types.js";
import { FakeServer, fixture, fixtureText } from "./fake_server.js";

const triangle = fixture<IqpDocument>("triangle.doc.json");

describe("ExplorerStore against recorded backend responses", () => {
  let store: ExplorerStore;

  beforeEach(async () => {
    const server = new FakeServer();
    store = new ExplorerStore(new SessionClient("http://backend", server.fetch));
    await store.loadDocument(triangle, 8);
  });

  it("loads a document and exposes mutability badges", () => {
    expect(store.loaded).toBe(true);
    expect(store.isMutable(2)).toBe(true);
    expect(store.isMutable(1)).toBe(false);
    expect(store.isMutable(3)).toBe(false);
  });

  it("exports the server serialization verbatim", () => {
    // the UI does no algebra: the export equals the CLI's own canonical
    // output for the same state, byte for byte
    expect(store.exportDocument()).toBe(fixtureText("cli.initial.txt"));
  });

  it("click-mutate at 2 exports the CLI mutate --at 2 bytes", async () => {
    const ok = await store.clickMutate(2);
    expect(ok).toBe(true);
    expect(store.exportDocument()).toBe(fixtureText("cli.mutate2.txt"));
    expect(store.history.length).toBe(1);
  });

  it("mutate then undo restores the original export bytes", async () => {
    const before = store.exportDocument();
    await store.clickMutate(2);
    expect(store.exportDocument()).not.toBe(before);
    const undone = await store.undo();
    expect(undone).toBe(true);
    expect(store.exportDocument()).toBe(before);
    expect(store.canUndo).toBe(false);
  });

  it("redo after undo equals the mutated state", async () => {
    await store.clickMutate(2);
    const mutated = store.exportDocument();
    await store.undo();
    expect(store.canRedo).toBe(true);
    await store.redo();
    expect(store.exportDocument()).toBe(mutated);
  });

  it("clicking a frozen vertex is rejected with an explanation", async () => {
    const before = store.exportDocument();
    const ok = await store.clickMutate(1);
    expect(ok).toBe(false);
    expect(store.lastError?.body.code).toBe("precondition");
    expect(store.lastError?.message).toContain("cannot mutate");
    expect(store.exportDocument()).toBe(before);
  });

  it("a successful mutation clears the redo stack and the error", async () => {
    await store.clickMutate(1); // rejected, sets lastError
    await store.clickMutate(2);
    await store.undo();
    expect(store.canRedo).toBe(true);
    await store.clickMutate(2);
    expect(store.canRedo).toBe(false);
    expect(store.lastError).toBeNull();
  });

  it("double mutation matches the CLI --seq 2,2 bytes", async () => {
    // the double mutation recovers the original quiver up to renaming the
    // frozen arrow, so the bytes match the CLI sequence output rather than
    // the initial document
    await store.clickMutate(2);
    await store.clickMutate(2);
    expect(store.exportDocument()).toBe(fixtureText("cli.mutate22.txt"));
    expect(store.history.length).toBe(2);
  });
});
