/** Thin typed client over the design-service HTTP endpoints.
 *
 * The studio computes no geometry: every coordinate it draws comes out of
 * one of these calls.
 */

import type {
  CombResponse,
  ContinuityResponse,
  ErrorEnvelope,
  IsolinesResponse,
  MeshResponse,
  ModelResponse,
  MutationResponse,
  SamplesResponse,
  SpiralReportResponse,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly path: string;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(envelope.message);
    this.status = status;
    this.code = envelope.code;
    this.path = envelope.path;
  }
}

export class StudioApi {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let envelope: ErrorEnvelope;
      try {
        envelope = (await response.json()) as ErrorEnvelope;
      } catch {
        envelope = { code: "unknown", message: `HTTP ${response.status}`, path };
      }
      throw new ApiError(response.status, envelope);
    }
    return (await response.json()) as T;
  }

  getHealth(): Promise<{ status: string; revision: number }> {
    return this.request("/health");
  }

  getModel(): Promise<ModelResponse> {
    return this.request("/model");
  }

  getSamples(name: string, n: number): Promise<SamplesResponse> {
    return this.request(`/curves/${encodeURIComponent(name)}/samples?n=${n}`);
  }

  getComb(name: string, n: number, scale?: number): Promise<CombResponse> {
    const query = scale === undefined ? `n=${n}` : `n=${n}&scale=${scale}`;
    return this.request(`/curves/${encodeURIComponent(name)}/comb?${query}`);
  }

  getSpiralReport(name: string): Promise<SpiralReportResponse> {
    return this.request(`/curves/${encodeURIComponent(name)}/spiral-report`);
  }

  getContinuity(a: string, b: string): Promise<ContinuityResponse> {
    return this.request(
      `/continuity?a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}`,
    );
  }

  getIsolines(name: string, dir: "u" | "v", values: number[]): Promise<IsolinesResponse> {
    return this.request(
      `/surfaces/${encodeURIComponent(name)}/isolines?dir=${dir}&values=${values.join(",")}`,
    );
  }

  getMesh(name: string, nu: number, nv: number): Promise<MeshResponse> {
    return this.request(`/surfaces/${encodeURIComponent(name)}/mesh?nu=${nu}&nv=${nv}`);
  }

  patchControl(
    name: string,
    index: number,
    position: { x: number; y: number; z?: number },
  ): Promise<MutationResponse> {
    return this.request(`/curves/${encodeURIComponent(name)}/control/${index}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ x: position.x, y: position.y, z: position.z ?? 0 }),
    });
  }
}
