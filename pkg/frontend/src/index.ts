/**
 * Node client for the anls-star scoring service.
 *
 * The client is delegation-only: values are shipped to the service as JSON
 * and scored there, so results are bit-identical to the core library and
 * the CLI. Ground-truth alternatives are expressed with {@link OneOf},
 * which serializes to the `{"$oneof": [...]}` wire convention.
 */

export const VERSION = "0.1.0";

export type BoundValue =
  | null
  | string
  | number
  | boolean
  | OneOf
  | BoundValue[]
  | { [key: string]: BoundValue };

/** A set of acceptable ground-truth alternatives ("one of"). */
export class OneOf {
  readonly alternatives: readonly BoundValue[];

  constructor(alternatives: readonly BoundValue[]) {
    if (alternatives.length === 0) {
      throw new Error("a one-of set must contain at least one alternative");
    }
    this.alternatives = [...alternatives];
  }

  toJSON(): unknown {
    return { $oneof: this.alternatives };
  }
}

export function oneOf(...alternatives: BoundValue[]): OneOf {
  return new OneOf(alternatives);
}

export interface ScoreOptions {
  tau?: number;
  caseFold?: boolean;
  trim?: boolean;
  breakdown?: boolean;
}

export interface EvalOptions extends ScoreOptions {
  jobs?: number;
}

export interface KeyPair {
  s: number;
  l: number;
}

export interface ScoreResult {
  score: number;
  s: number;
  l: number;
  per_key?: Record<string, KeyPair>;
}

export interface EvalRecord {
  id: string;
  value: BoundValue;
}

export type SampleStatus = "scored" | "missing_prediction" | "parse_error";

export interface SampleResult {
  id: string;
  score: number;
  s: number;
  l: number;
  status: SampleStatus;
  per_key?: Record<string, KeyPair>;
}

export interface ConfigEcho {
  tau: number;
  case_fold: boolean;
  trim: boolean;
  aggregation: string;
}

export interface EvalReport {
  mean_score: number;
  sample_count: number;
  failed_count: number;
  results: SampleResult[];
  config_echo: ConfigEcho;
  warnings: string[];
}

export interface ClientOptions {
  baseUrl: string;
  fetchImpl?: typeof fetch;
}

/** Raised when the service rejects a request; carries its diagnostic. */
export class AnlsStarError extends Error {}

export class AnlsStarClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: typeof fetch;

  constructor(options: ClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/+$/, "");
    this.fetchImpl = options.fetchImpl ?? fetch;
  }

  /** Tree similarity score in [0, 1] for a ground-truth/prediction pair. */
  async anlsStar(groundTruth: BoundValue, prediction: BoundValue, tau?: number): Promise<number> {
    const result = await this.score(groundTruth, prediction, tau === undefined ? {} : { tau });
    return result.score;
  }

  async score(
    groundTruth: BoundValue,
    prediction: BoundValue,
    options: ScoreOptions = {},
  ): Promise<ScoreResult> {
    return await this.post<ScoreResult>("/score", {
      ground_truth: groundTruth,
      prediction,
      config: configPayload(options),
      breakdown: options.breakdown ?? false,
    });
  }

  async evaluate(
    groundTruth: EvalRecord[],
    predictions: EvalRecord[],
    options: EvalOptions = {},
  ): Promise<EvalReport> {
    return await this.post<EvalReport>("/evaluate", {
      ground_truth: groundTruth,
      predictions,
      config: configPayload(options),
      breakdown: options.breakdown ?? false,
      jobs: options.jobs ?? 1,
    });
  }

  async coreVersion(): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/version`);
    if (!response.ok) {
      throw new AnlsStarError(`version request failed with status ${response.status}`);
    }
    const body = (await response.json()) as { version: string };
    return body.version;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(`${this.baseUrl}/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    const text = await response.text();
    if (!response.ok) {
      throw new AnlsStarError(extractDetail(text, response.status));
    }
    return JSON.parse(text) as T;
  }
}

function configPayload(options: ScoreOptions) {
  return {
    tau: options.tau ?? 0.5,
    case_fold: options.caseFold ?? true,
    trim: options.trim ?? true,
  };
}

function extractDetail(text: string, status: number): string {
  try {
    const body = JSON.parse(text) as { detail?: unknown };
    if (typeof body.detail === "string") {
      return body.detail;
    }
    if (body.detail !== undefined) {
      return JSON.stringify(body.detail);
    }
  } catch {
    // fall through to the raw body
  }
  return text || `request failed with status ${status}`;
}

export { formatFixed6 } from "./fixed6.js";
