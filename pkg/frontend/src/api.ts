/**
 * Typed client for the analytics service. All panels go through this —
 * the UI never computes statistics on its own, it only renders what the
 * service returns (curve geometry for drag feedback is the one
 * exception).
 */

export interface Industry {
  id: number;
  name: string;
  remark: string;
  type_label: string;
  enabled: boolean;
}

export interface IndexDef {
  id: number;
  name: string;
  remark: string;
  unit_label: string;
  enabled: boolean;
}

export interface SeriesResponse {
  industry_id: number;
  index_id: number;
  points: [number, number][];
}

export interface Belief {
  time: number;
  mean: number;
  std: number;
}

export interface PredictGaussianResponse {
  method: "gaussian";
  model: { a: number; b: number; sigma: number };
  beliefs: Belief[];
}

export interface CorrelateRequest {
  x?: { industry: number; index: number };
  y?: { industry: number; index: number };
  x_values?: number[];
  y_values?: number[];
  ratio_bins?: number;
  total_levels?: number;
}

export interface CorrelateResponse {
  n: number;
  pearson: number | null;
  kendall_tau: number | null;
  spearman: number | null;
  ratio: number | null;
  total: number | null;
  partial: number | null;
  report: string;
}

export interface MdpSolveRequest {
  gamma: number;
  rewards: number[];
  transitions: number[][][];
  states?: string[];
  actions?: string[];
  epsilon?: number;
}

export interface MdpSolveResponse {
  states: string[];
  actions: string[];
  utilities: number[];
  policy: number[];
  iterations: number;
}

/** Service error with the machine-readable code from the response body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let code = `HTTP${response.status}`;
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && typeof body.code === "string") code = body.code;
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, detail);
    }
    return response;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    return (await this.request(path, init)).json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  industries(): Promise<Industry[]> {
    return this.json("/industries");
  }

  indices(): Promise<IndexDef[]> {
    return this.json("/indices");
  }

  series(industry: number, index: number): Promise<SeriesResponse> {
    return this.json(`/series?industry=${industry}&index=${index}`);
  }

  predictGaussian(
    industry: number,
    index: number,
    horizon: number,
  ): Promise<PredictGaussianResponse> {
    return this.post("/predict", { method: "gaussian", industry, index, horizon });
  }

  correlate(body: CorrelateRequest): Promise<CorrelateResponse> {
    return this.post("/correlate", body);
  }

  solveMdp(body: MdpSolveRequest): Promise<MdpSolveResponse> {
    return this.post("/mdp/solve", body);
  }

  async getTemplate(id: string): Promise<string> {
    return (await this.request(`/templates/${id}`)).text();
  }

  async putTemplate(id: string, document: string): Promise<void> {
    await this.request(`/templates/${id}`, {
      method: "PUT",
      headers: { "content-type": "text/plain" },
      body: document,
    });
  }
}
