// Thin typed client for the session service. Every call round-trips
// through HTTP; the console never fabricates belief state locally.

import type {
  BeliefRow,
  RevisionResponse,
  SessionEvent,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: Record<string, unknown>,
  ) {
    super(typeof body.error === "string" ? body.error : `HTTP ${status}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ApiError(response.status, body);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    public readonly baseUrl: string,
    public sessionId: string | null = null,
  ) {}

  private session(path: string): string {
    if (!this.sessionId) {
      throw new Error("no session created yet");
    }
    return `${this.baseUrl}/sessions/${this.sessionId}${path}`;
  }

  async createSession(): Promise<string> {
    const body = await request<{ session_id: string }>(`${this.baseUrl}/sessions`, {
      method: "POST",
    });
    this.sessionId = body.session_id;
    return body.session_id;
  }

  async submitInput(text: string): Promise<SessionEvent[]> {
    const body = await request<{ events: SessionEvent[] }>(this.session("/input"), {
      method: "POST",
      body: JSON.stringify({ text }),
    });
    return body.events;
  }

  async getRevision(): Promise<RevisionResponse> {
    return request<RevisionResponse>(this.session("/revision"));
  }

  async submitRetractions(wffs: string[]): Promise<SessionEvent[]> {
    const body = await request<{ events: SessionEvent[] }>(
      this.session("/revision"),
      { method: "POST", body: JSON.stringify({ retract: wffs }) },
    );
    return body.events;
  }

  async submitKeep(): Promise<SessionEvent[]> {
    const body = await request<{ events: SessionEvent[] }>(
      this.session("/revision"),
      { method: "POST", body: JSON.stringify({ keep: true }) },
    );
    return body.events;
  }

  async getBeliefs(): Promise<BeliefRow[]> {
    const body = await request<{ beliefs: BeliefRow[] }>(this.session("/beliefs"));
    return body.beliefs;
  }

  async setMode(mode: "auto" | "manual"): Promise<void> {
    await request(this.session("/mode"), {
      method: "PUT",
      body: JSON.stringify({ mode }),
    });
  }
}
