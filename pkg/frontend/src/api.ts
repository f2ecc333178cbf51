/**
 * Thin client for the session HTTP API.
 *
 * The fetch implementation is injectable so tests can serve recorded
 * backend responses byte-for-byte.
 */

import type {
  AnalysisPayload,
  ApiErrorBody,
  IqpDocument,
  SessionPayload,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; text(): Promise<string> }>;

/** Error carrying the backend's {code, message, detail} body. */
export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(`${body.code}: ${body.message}${body.detail ? ` (${body.detail})` : ""}`);
    this.status = status;
    this.body = body;
  }
}

export class SessionClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn =
      fetchFn ?? ((url, init) => fetch(url, init) as unknown as ReturnType<FetchLike>);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : {};
    if (response.status >= 400) {
      throw new ApiError(response.status, parsed as ApiErrorBody);
    }
    return parsed as T;
  }

  async createSession(iqp: IqpDocument, truncate?: number): Promise<string> {
    const body: Record<string, unknown> = { iqp };
    if (truncate !== undefined) body.truncate = truncate;
    const out = await this.request<{ id: string }>("POST", "/sessions", body);
    return out.id;
  }

  getState(id: string): Promise<SessionPayload> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, vertex: number): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<SessionPayload> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  analysis(id: string): Promise<AnalysisPayload> {
    return this.request("GET", `/sessions/${id}/analysis`);
  }
}
