/**
 * Session store: the single source of truth for what the UI shows.
 *
 * Every displayed quiver, potential and diagnostic comes verbatim from the
 * server's last response; the store performs no mutation arithmetic of its
 * own.  Undo talks to the server; redo replays the undone click, which is
 * deterministic on the backend.
 */

import { ApiError, SessionClient } from "./api.js";
import type { IqpDocument, MutationReport, SessionPayload } from "./types.js";

export class ExplorerStore {
  private client: SessionClient;
  private sessionId: string | null = null;
  private payload: SessionPayload | null = null;
  private redoStack: number[] = [];
  /** Last server rejection, for the toast line; cleared on success. */
  lastError: ApiError | null = null;

  constructor(client: SessionClient) {
    this.client = client;
  }

  get state(): SessionPayload {
    if (!this.payload) throw new Error("no session loaded");
    return this.payload;
  }

  get loaded(): boolean {
    return this.payload !== null;
  }

  get history(): MutationReport[] {
    return this.payload ? this.payload.history : [];
  }

  get canUndo(): boolean {
    return this.history.length > 0;
  }

  get canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  /** Start a session from a parsed document (POST /sessions + GET state). */
  async loadDocument(doc: IqpDocument, truncate?: number): Promise<SessionPayload> {
    this.sessionId = await this.client.createSession(doc, truncate);
    this.payload = await this.client.getState(this.sessionId);
    this.redoStack = [];
    this.lastError = null;
    return this.payload;
  }

  /** Is the vertex badge active? Mirrors the server's mutability report. */
  isMutable(vertex: number): boolean {
    if (!this.payload) return false;
    return this.payload.diagnostics.mutability[String(vertex)] === true;
  }

  /**
   * Mutate at a vertex.  Server-side rejections are stored on `lastError`
   * and leave the state untouched; the caller shows them as a toast.
   */
  async clickMutate(vertex: number): Promise<boolean> {
    if (!this.sessionId) throw new Error("no session loaded");
    try {
      this.payload = await this.client.mutate(this.sessionId, vertex);
      this.redoStack = [];
      this.lastError = null;
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err;
        return false;
      }
      throw err;
    }
  }

  async undo(): Promise<boolean> {
    if (!this.sessionId || !this.payload) throw new Error("no session loaded");
    const last = this.payload.history[this.payload.history.length - 1];
    if (!last) return false;
    this.payload = await this.client.undo(this.sessionId);
    this.redoStack.push(last.vertex);
    this.lastError = null;
    return true;
  }

  /** Redo re-issues the undone mutation; the backend is deterministic. */
  async redo(): Promise<boolean> {
    const vertex = this.redoStack.pop();
    if (vertex === undefined || !this.sessionId) return false;
    this.payload = await this.client.mutate(this.sessionId, vertex);
    this.lastError = null;
    return true;
  }

  /**
   * The canonical document for the current state, byte-identical to the
   * backend's own serialization (and hence to the CLI's output for the
   * same operations).
   */
  exportDocument(): string {
    return this.state.serialized;
  }
}
