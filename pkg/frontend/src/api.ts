import type { HealthResponse, PredictRequest, PredictResponse, ServiceSchema } from "./types";

/** Error carrying the HTTP status and the service's `detail` message. */
export class ApiError extends Error {
  readonly status: number;
  readonly detail: string;

  constructor(status: number, detail: string) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    /* non-JSON error body; fall through */
  }
  return response.statusText || `request failed (${response.status})`;
}

/** Thin typed client over the three service endpoints. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    // Bind so the client works when the global fetch is a plain function.
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return (await response.json()) as T;
  }

  health(): Promise<HealthResponse> {
    return this.get<HealthResponse>("/health");
  }

  schema(): Promise<ServiceSchema> {
    return this.get<ServiceSchema>("/schema");
  }

  async predict(request: PredictRequest): Promise<PredictResponse> {
    const response = await this.fetchFn(this.base + "/predict", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return (await response.json()) as PredictResponse;
  }
}
