// Typed client for the /v1 JSON API.  Every number shown in the UI comes
// through here; the dashboard never touches raw article records.

export type Granularity = "daily" | "weekly";

export interface SeriesPoint {
  date: string; // ISO YYYY-MM-DD
  value: number;
}

// Series endpoints return a bare array of points.
export type Series = SeriesPoint[];

// /v1/bias/counts: one point list per bias label (all labels present).
export type BiasCounts = Record<string, SeriesPoint[]>;

export type BiasShares = Record<string, number>;
export type BiasRatios = Record<string, number | null>;

export interface KeywordRow {
  keyword: string;
  count: number;
}

export interface Manifest {
  version: number;
  coverage: Record<string, [string, string]>; // metric -> [first, last] ISO dates
  reports: unknown[];
}

export interface SeriesQuery {
  granularity?: Granularity;
  from?: string;
  to?: string;
  region?: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string) => Promise<Response>;

function buildQuery(params: Record<string, string | undefined>): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== "") {
      parts.push(`${encodeURIComponent(key)}=${encodeURIComponent(value)}`);
    }
  }
  return parts.length ? `?${parts.join("&")}` : "";
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string, params: Record<string, string | undefined> = {}): Promise<T> {
    const url = `${this.base}${path}${buildQuery(params)}`;
    const resp = await this.fetchImpl(url);
    const body: unknown = await resp.json().catch(() => null);
    if (!resp.ok) {
      let code = "http_error";
      let message = resp.statusText || `HTTP ${resp.status}`;
      if (body && typeof body === "object") {
        const err = body as { error?: unknown; message?: unknown };
        if (typeof err.error === "string") code = err.error;
        if (typeof err.message === "string") message = err.message;
      }
      throw new ApiError(resp.status, code, message);
    }
    return body as T;
  }

  private seriesParams(q: SeriesQuery): Record<string, string | undefined> {
    return {
      granularity: q.granularity,
      from: q.from,
      to: q.to,
      region: q.region,
    };
  }

  articles(q: SeriesQuery = {}): Promise<Series> {
    return this.get("/v1/series/articles", this.seriesParams(q));
  }

  cases(q: SeriesQuery = {}): Promise<Series> {
    return this.get("/v1/series/cases", this.seriesParams(q));
  }

  deaths(q: SeriesQuery = {}): Promise<Series> {
    return this.get("/v1/series/deaths", this.seriesParams(q));
  }

  mobility(region: string, category: string, q: SeriesQuery = {}): Promise<Series> {
    const path = `/v1/series/mobility/${encodeURIComponent(region)}/${encodeURIComponent(category)}`;
    return this.get(path, this.seriesParams(q));
  }

  distancing(state: string, q: SeriesQuery = {}): Promise<Series> {
    return this.get(`/v1/series/distancing/${encodeURIComponent(state)}`, this.seriesParams(q));
  }

  trends(keyword: string, state: string, q: SeriesQuery = {}): Promise<Series> {
    const path = `/v1/series/trends/${encodeURIComponent(keyword)}/${encodeURIComponent(state)}`;
    return this.get(path, this.seriesParams(q));
  }

  biasCounts(q: SeriesQuery = {}): Promise<BiasCounts> {
    return this.get("/v1/bias/counts", this.seriesParams(q));
  }

  biasShares(): Promise<BiasShares> {
    return this.get("/v1/bias/shares");
  }

  biasRatios(): Promise<BiasRatios> {
    return this.get("/v1/bias/ratios");
  }

  topKeywords(k: number): Promise<KeywordRow[]> {
    return this.get("/v1/keywords/top", { k: String(k) });
  }

  manifest(): Promise<Manifest> {
    return this.get("/v1/manifest");
  }
}
