/** Thin typed client for the inference API. All numbers the UI ever
 * displays come back through this module; nothing downstream computes
 * probabilities of its own. */

export interface VariableSummary {
  id: string;
  label: string;
  states: string[];
}

export interface ModelSummary {
  id: string;
  name: string;
  variables: VariableSummary[];
  edges: [string, string][];
}

export interface QueryRequest {
  evidence?: Record<string, string>;
  do?: Record<string, string>;
  targets?: string[];
}

export interface QueryResponse {
  posteriors: Record<string, Record<string, number>>;
  evidence_probability: number;
}

export interface AuditRequest {
  exposure: string;
  outcome: string;
  outcome_state?: string;
  exposure_states?: [string, string];
  selection?: Record<string, string>;
}

export interface AuditResponse {
  exposure: string;
  outcome: string;
  selected_contrast: number;
  population_contrast: number;
  interventional_contrast: number;
  reversal: boolean;
}

export interface ApiError {
  code: string;
  message: string;
  location?: { line: number; column: number };
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw body as ApiError;
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async listModels(): Promise<ModelSummary[]> {
    const response = await this.fetchFn(`${this.baseUrl}/api/models`);
    return parseOrThrow<ModelSummary[]>(response);
  }

  async query(modelId: string, request: QueryRequest): Promise<QueryResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/models/${encodeURIComponent(modelId)}/query`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    return parseOrThrow<QueryResponse>(response);
  }

  async audit(modelId: string, request: AuditRequest): Promise<AuditResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/models/${encodeURIComponent(modelId)}/audit`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    return parseOrThrow<AuditResponse>(response);
  }
}
