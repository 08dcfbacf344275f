/** Thin typed client for the session service wire protocol.
 *
 * Rationals stay strings end to end; nothing numeric is converted here.
 */

export type Rel = ">" | ">=" | "=";

export interface ApiErrorPayload {
  error: string;
  message: string;
  offset?: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly payload: ApiErrorPayload) {
    super(payload.message);
  }
}

export interface StatusDelta {
  revision: number;
  consistent: boolean;
  judgment_id?: string;
  margin: string | null;
  conflict: string[] | null;
  a3_trivial?: boolean;
}

export interface JudgmentRow {
  id: string;
  lhs: string;
  rel: string;
  rhs: string;
}

export interface StatusPayload extends StatusDelta {
  judgments: JudgmentRow[];
}

export interface A1Verdict {
  passed: boolean;
  witness: { events: string[]; detail: string } | null;
  note: string | null;
}

export interface ReportPayload {
  revision: number;
  verdicts: { A1: A1Verdict };
  coverage: string;
}

export interface RealizationPayload {
  revision: number;
  distribution: Record<string, string>;
  margin: string;
}

export interface BoundsPayload {
  revision: number;
  lower: string;
  upper: string;
  attained_lower: boolean;
  attained_upper: boolean;
}

export interface EntailsPayload {
  revision: number;
  always: boolean;
  witness: Record<string, string> | null;
}

export class SessionApi {
  constructor(
    private readonly base: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchFn(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = (await res.json()) as unknown;
    if (!res.ok) {
      throw new ApiError(res.status, data as ApiErrorPayload);
    }
    return data as T;
  }

  createSession(space: string): Promise<{ id: string; revision: number; consistent: boolean }> {
    return this.request("POST", "/v1/sessions", { space });
  }

  assertJudgment(sid: string, lhs: string, rel: Rel, rhs: string): Promise<StatusDelta> {
    return this.request("POST", `/v1/sessions/${sid}/judgments`, { lhs, rel, rhs });
  }

  retractJudgment(sid: string, jid: string): Promise<StatusDelta> {
    return this.request("DELETE", `/v1/sessions/${sid}/judgments/${jid}`);
  }

  status(sid: string): Promise<StatusPayload> {
    return this.request("GET", `/v1/sessions/${sid}/status`);
  }

  report(sid: string): Promise<ReportPayload> {
    return this.request("GET", `/v1/sessions/${sid}/report`);
  }

  realization(sid: string): Promise<RealizationPayload> {
    return this.request("GET", `/v1/sessions/${sid}/realization`);
  }

  bounds(sid: string, event: string, given?: string): Promise<BoundsPayload> {
    const q = new URLSearchParams({ event });
    if (given !== undefined) q.set("given", given);
    return this.request("GET", `/v1/sessions/${sid}/bounds?${q}`);
  }

  entails(sid: string, lhs: string, rhs: string): Promise<EntailsPayload> {
    const q = new URLSearchParams({ lhs, rhs });
    return this.request("GET", `/v1/sessions/${sid}/entails?${q}`);
  }
}
