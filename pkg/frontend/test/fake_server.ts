/**
 * In-memory stand-in for the session API, serving byte-identical recorded
 * backend responses (see fixtures/make_fixtures.py).  It mirrors the real
 * server's state-stack semantics for the triangle fixture: mutation is only
 * legal at vertex 2, two levels deep (the recorded depth), plus undo.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import type { FetchLike } from "../src/api.js";
import type { SessionPayload } from "../src/types.js";

const FIXTURES = join(__dirname, "..", "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export class FakeServer {
  /** Recorded session payloads by mutation depth (0, 1 and 2 clicks). */
  private readonly byDepth: SessionPayload[];
  private readonly frozenError: { status: number; body: unknown };
  private readonly analysisPayload: unknown;
  private depth = -1;

  constructor() {
    this.byDepth = [
      fixture<SessionPayload>("state.initial.json"),
      fixture<SessionPayload>("state.remutated.json"),
      fixture<SessionPayload>("state.mutated2.json"),
    ];
    this.frozenError = fixture("error.frozen.json");
    this.analysisPayload = fixture("analysis.json");
  }

  private respond(status: number, body: unknown) {
    return Promise.resolve({
      status,
      text: () => Promise.resolve(JSON.stringify(body)),
    });
  }

  fetch: FetchLike = (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body) : {};
    if (method === "POST" && url.endsWith("/sessions")) {
      this.depth = 0;
      return this.respond(200, { id: "SESSION" });
    }
    if (this.depth < 0) {
      return this.respond(404, { code: "unknown_session", message: "no session" });
    }
    if (method === "GET" && url.endsWith("/sessions/SESSION")) {
      return this.respond(200, this.byDepth[this.depth]);
    }
    if (method === "POST" && url.endsWith("/sessions/SESSION/mutate")) {
      if (body.vertex !== 2) {
        return this.respond(this.frozenError.status, this.frozenError.body);
      }
      if (this.depth + 1 >= this.byDepth.length) {
        return this.respond(409, {
          code: "unrecorded",
          message: "fixture depth exhausted",
        });
      }
      this.depth += 1;
      return this.respond(200, this.byDepth[this.depth]);
    }
    if (method === "POST" && url.endsWith("/sessions/SESSION/undo")) {
      if (this.depth === 0) {
        return this.respond(409, { code: "empty_history", message: "nothing to undo" });
      }
      this.depth -= 1;
      return this.respond(200, this.byDepth[this.depth]);
    }
    if (method === "GET" && url.endsWith("/sessions/SESSION/analysis")) {
      return this.respond(200, this.analysisPayload);
    }
    return this.respond(404, { code: "unknown", message: `no route ${url}` });
  };
}
