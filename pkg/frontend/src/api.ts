/** Thin typed client for the session API. All server interaction funnels
 * through here; the fetch implementation is injectable for tests. */

import type {
  GraphSummary,
  SchemaPayload,
  SessionInfo,
  ViewPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = "http_error";
    let message = `${response.status}`;
    try {
      const body = (await response.json()) as { error?: { code: string; message: string } };
      if (body.error) {
        code = body.error.code;
        message = body.error.message;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(code, message, response.status);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post(path: string, body: unknown): Promise<Response> {
    return this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createGraph(text: string): Promise<GraphSummary> {
    const response = await this.fetchImpl(this.baseUrl + "/graphs", {
      method: "POST",
      headers: { "content-type": "text/plain" },
      body: text,
    });
    return unwrap<GraphSummary>(response);
  }

  async getSchema(graphId: string): Promise<SchemaPayload> {
    return unwrap(await this.fetchImpl(`${this.baseUrl}/graphs/${graphId}/schema`));
  }

  async createSession(graphId: string, lC: string[], lB: string[]): Promise<SessionInfo> {
    return unwrap(await this.post("/sessions", { graph: graphId, l_c: lC, l_b: lB }));
  }

  async select(sessionId: string, vertices: string[]): Promise<ViewPayload> {
    return unwrap(await this.post(`/sessions/${sessionId}/select`, { vertices }));
  }

  async expand(sessionId: string, lC: string[]): Promise<ViewPayload> {
    return unwrap(await this.post(`/sessions/${sessionId}/expand`, { l_c: lC }));
  }

  async navigate(sessionId: string, lC: string[], lB: string[]): Promise<ViewPayload> {
    return unwrap(await this.post(`/sessions/${sessionId}/navigate`, { l_c: lC, l_b: lB }));
  }

  async getView(sessionId: string, full = false): Promise<ViewPayload> {
    const suffix = full ? "?full=true" : "";
    return unwrap(await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/view${suffix}`));
  }

  async getHistory(sessionId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/history`);
    if (!response.ok) {
      throw new ApiError("http_error", `${response.status}`, response.status);
    }
    return response.text();
  }
}
