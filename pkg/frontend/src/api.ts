// Thin typed client over the review API. Every mutation echoes the ledger
// revision the caller last saw; a 409 surfaces as ConflictError so the UI can
// refresh instead of silently overwriting someone else's decision.

import type {
  CandidateRecord,
  DatasetRow,
  DecisionRequest,
  PipelineStats,
  QueueView,
} from "./model.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ConflictError extends ApiError {
  constructor(code: string, message: string) {
    super(409, code, message);
  }
}

export class ApiClient {
  private fetchImpl: FetchLike;

  constructor(
    public baseUrl: string = "",
    options: { token?: string; fetchImpl?: FetchLike } = {},
  ) {
    this.token = options.token;
    this.fetchImpl = options.fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private token?: string;

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "error";
      let message = `HTTP ${response.status}`;
      try {
        const payload = (await response.json()) as { code?: string; message?: string };
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body: keep the generic message
      }
      if (response.status === 409) throw new ConflictError(code, message);
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  queueNext(): Promise<QueueView> {
    return this.request<QueueView>("GET", "/api/queue/next");
  }

  candidate(mentionId: string): Promise<{ candidate: CandidateRecord; revision: number }> {
    return this.request("GET", `/api/candidates/${mentionId}`);
  }

  decide(
    mentionId: string,
    decision: DecisionRequest,
  ): Promise<{ applied: Record<string, unknown>; revision: number }> {
    return this.request("POST", `/api/candidates/${mentionId}/decision`, decision);
  }

  merge(
    datasetId: string,
    sourceMentionIds: string[],
    revision: number,
    note = "",
  ): Promise<{ applied: unknown[]; revision: number }> {
    return this.request("POST", `/api/datasets/${datasetId}/merge`, {
      source_mention_ids: sourceMentionIds,
      revision,
      note,
    });
  }

  confirmAccessibility(
    datasetId: string,
    status: "OPEN" | "NOT_OPEN",
    confirmation: boolean | null,
    note = "",
  ): Promise<{ recorded: Record<string, unknown>; revision: number }> {
    return this.request("POST", `/api/datasets/${datasetId}/accessibility`, {
      status,
      confirmation,
      note,
    });
  }

  stats(): Promise<PipelineStats> {
    return this.request<PipelineStats>("GET", "/api/stats");
  }

  datasets(language?: string): Promise<{ datasets: DatasetRow[]; revision: number }> {
    const suffix = language ? `?language=${encodeURIComponent(language)}` : "";
    return this.request("GET", `/api/datasets${suffix}`);
  }
}
