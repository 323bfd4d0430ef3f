/** Typed client for the tree-building session service (HTTP+JSON). */

export interface TestPayload {
  type: "discrete" | "threshold";
  attribute: string;
  threshold?: number;
}

export interface RankedEntry {
  test: TestPayload;
  gain: number;
  ratio: number;
}

export interface FrontierPayload {
  path: number[];
  counts: number[];
  class_labels: string[];
  default_index: number;
  gain_ratio_threshold: number;
  ranked: RankedEntry[];
}

export interface TreeNodePayload {
  kind: "leaf" | "internal";
  counts: number[];
  label?: string | null;
  test?: TestPayload;
  children?: TreeNodePayload[];
}

export interface TreePayload {
  format: string;
  class_labels: string[];
  attributes: { name: string; kind: string; values: string[] }[];
  pruning: Record<string, unknown> | null;
  size: number;
  root: TreeNodePayload;
  complete?: boolean;
}

export interface ShelfEntry {
  index: number;
  size: number;
  pruned: boolean;
  root_test: string[] | null;
}

export interface EvalReportPayload {
  model_id: string;
  percent_error: number;
  half_brier: number;
  n: number;
}

export interface ShelfEvalPayload {
  reports: EvalReportPayload[];
  combined: EvalReportPayload;
  warnings: { trees: number[]; kind: string }[];
}

export interface CreateSessionResult {
  session_id: string;
  complete: boolean;
}

export interface ChooseResult {
  complete: boolean;
  frontier?: FrontierPayload;
}

export interface AutocompleteResult {
  tree: TreePayload;
  shelf_size: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class SessionClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: Parameters<FetchLike>[1] = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      const detail =
        typeof payload === "object" && payload !== null && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : JSON.stringify(payload);
      throw new ApiError(resp.status, detail);
    }
    return payload as T;
  }

  createSession(schemaText: string, dataText: string, gainRatio?: number) {
    const body: Record<string, unknown> = {
      schema_text: schemaText,
      data_text: dataText,
    };
    if (gainRatio !== undefined) body.gain_ratio = gainRatio;
    return this.request<CreateSessionResult>("POST", "/sessions", body);
  }

  frontier(sessionId: string) {
    return this.request<FrontierPayload>("GET", `/sessions/${sessionId}/frontier`);
  }

  choose(sessionId: string, selection: number | TestPayload) {
    const body =
      typeof selection === "number" ? { index: selection } : { test: selection };
    return this.request<ChooseResult>("POST", `/sessions/${sessionId}/choose`, body);
  }

  autocomplete(sessionId: string) {
    return this.request<AutocompleteResult>(
      "POST",
      `/sessions/${sessionId}/autocomplete`,
    );
  }

  prune(
    sessionId: string,
    options: {
      method?: string;
      z?: number;
      correction?: number;
      holdout_schema_text?: string;
      holdout_data_text?: string;
    } = {},
  ) {
    return this.request<{ tree: TreePayload }>(
      "POST",
      `/sessions/${sessionId}/prune`,
      options,
    );
  }

  tree(sessionId: string) {
    return this.request<TreePayload>("GET", `/sessions/${sessionId}/tree`);
  }

  shelf(sessionId: string) {
    return this.request<{ trees: ShelfEntry[] }>(
      "GET",
      `/sessions/${sessionId}/shelf`,
    );
  }

  shelfEval(sessionId: string, schemaText: string, dataText: string, method?: string) {
    const body: Record<string, unknown> = {
      schema_text: schemaText,
      data_text: dataText,
    };
    if (method !== undefined) body.method = method;
    return this.request<ShelfEvalPayload>(
      "POST",
      `/sessions/${sessionId}/shelf/eval`,
      body,
    );
  }
}
