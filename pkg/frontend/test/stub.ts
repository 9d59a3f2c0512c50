/** In-memory stand-in for the design service, driven through FetchLike.
 *
 * Holds one mutable model, bumps a revision per PATCH, and fabricates
 * deterministic interrogation payloads that visibly depend on the control
 * points, so mutations show up in comb responses.  Records every request
 * and tracks PATCH concurrency so tests can assert the throttle contract.
 */

import type { FetchLike } from "../src/api";
import type { ControlPointWire, CurveWire, Vec3 } from "../src/types";

export interface LoggedRequest {
  method: string;
  path: string;
  body?: unknown;
  at: number;
}

const json = (status: number, body: unknown): Response =>
  new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });

const cubic = (name: string): CurveWire => ({
  name,
  degree: 3,
  knots: [0, 0, 0, 0, 1, 1, 1, 1],
  control: [
    { x: 0, y: 0, z: 0, weight: 1 },
    { x: 1, y: 1, z: 0, weight: 1 },
    { x: 2, y: -1, z: 0, weight: 1 },
    { x: 3, y: 0, z: 0, weight: 1 },
  ],
});

export const ninePointCircle = (): CurveWire => ({
  name: "circle",
  degree: 2,
  knots: [0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1],
  control: [
    [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1], [1, 0],
  ].map(([x, y], i) => ({ x, y, z: 0, weight: i % 2 === 0 ? 1 : Math.SQRT1_2 })),
});

export interface StubOptions {
  curves?: CurveWire[];
  patchLatencyMs?: number;
  /** bump the revision out-of-band after this many requests (simulates a
   *  concurrent writer, for stale-frame tests) */
  mutateAfterRequests?: number;
  rejectPatchesWhere?: (body: { x: number; y: number }) => boolean;
}

export class StubService {
  revision = 0;
  curves: CurveWire[];
  log: LoggedRequest[] = [];
  maxConcurrentPatches = 0;
  private activePatches = 0;
  private requestCount = 0;
  private readonly options: StubOptions;

  constructor(options: StubOptions = {}) {
    this.options = options;
    this.curves = options.curves ?? [cubic("arc")];
  }

  private curve(name: string): CurveWire | undefined {
    return this.curves.find((c) => c.name === name);
  }

  /** fake sample points: the control polygon itself, resampled */
  private samplePoints(curve: CurveWire, n: number): Vec3[] {
    const cps = curve.control;
    const points: Vec3[] = [];
    for (let i = 0; i < n; i += 1) {
      const t = (i / (n - 1)) * (cps.length - 1);
      const k = Math.min(Math.floor(t), cps.length - 2);
      const f = t - k;
      points.push([
        cps[k].x + f * (cps[k + 1].x - cps[k].x),
        cps[k].y + f * (cps[k + 1].y - cps[k].y),
        0,
      ]);
    }
    return points;
  }

  private combPayload(curve: CurveWire, n: number): unknown {
    const points = this.samplePoints(curve, n);
    const samples = points.map((p, i) => ({
      t: i / (n - 1),
      point: p,
      tangent: [1, 0, 0],
      normal: [0, 1, 0],
      kappa: curve.control[1].y * (0.2 + i / n),
    }));
    return {
      revision: this.revision,
      name: curve.name,
      scale: 0.25,
      samples,
      tips: samples.map((s) => [
        s.point[0],
        s.point[1] + 0.25 * s.kappa,
        0,
      ]),
    };
  }

  readonly fetch: FetchLike = async (input, init) => {
    const url = new URL(input);
    const method = (init?.method ?? "GET").toUpperCase();
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.log.push({ method, path: url.pathname + url.search, body, at: Date.now() });

    this.requestCount += 1;
    if (this.requestCount === this.options.mutateAfterRequests) {
      this.revision += 1; // a concurrent writer snuck in
    }

    const match = (pattern: RegExp): RegExpMatchArray | null =>
      url.pathname.match(pattern);

    if (method === "GET" && url.pathname === "/health") {
      return json(200, { status: "ok", revision: this.revision });
    }
    if (method === "GET" && url.pathname === "/model") {
      return json(200, {
        revision: this.revision,
        model: {
          schemaVersion: 1,
          name: "stub",
          curves: this.curves,
          surfaces: [],
          annotations: {},
        },
      });
    }

    let m = match(/^\/curves\/([^/]+)\/samples$/);
    if (method === "GET" && m) {
      const curve = this.curve(decodeURIComponent(m[1]));
      if (!curve) return json(404, { code: "not_found", message: "no such curve", path: url.pathname });
      const n = Number(url.searchParams.get("n") ?? "100");
      return json(200, { revision: this.revision, name: curve.name, points: this.samplePoints(curve, n) });
    }

    m = match(/^\/curves\/([^/]+)\/comb$/);
    if (method === "GET" && m) {
      const curve = this.curve(decodeURIComponent(m[1]));
      if (!curve) return json(404, { code: "not_found", message: "no such curve", path: url.pathname });
      const n = Number(url.searchParams.get("n") ?? "64");
      return json(200, this.combPayload(curve, n));
    }

    m = match(/^\/curves\/([^/]+)\/spiral-report$/);
    if (method === "GET" && m) {
      const curve = this.curve(decodeURIComponent(m[1]));
      if (!curve) return json(404, { code: "not_found", message: "no such curve", path: url.pathname });
      const kappaEnd = curve.control[1].y;
      return json(200, {
        revision: this.revision,
        name: curve.name,
        monotone: kappaEnd >= 0,
        kappaStart: 0,
        kappaEnd,
        maxViolation: kappaEnd >= 0 ? 0 : Math.abs(kappaEnd),
        inflectionCount: 0,
      });
    }

    if (method === "GET" && url.pathname === "/continuity") {
      return json(200, {
        revision: this.revision,
        level: "G2",
        positionGap: 0,
        tangentAngleGap: 0,
        curvatureGap: 0,
      });
    }

    m = match(/^\/curves\/([^/]+)\/control\/(\d+)$/);
    if (method === "PATCH" && m) {
      const curve = this.curve(decodeURIComponent(m[1]));
      const index = Number(m[2]);
      if (!curve || index >= curve.control.length) {
        return json(404, { code: "not_found", message: "no such control point", path: url.pathname });
      }
      this.activePatches += 1;
      this.maxConcurrentPatches = Math.max(this.maxConcurrentPatches, this.activePatches);
      if (this.options.patchLatencyMs) {
        await new Promise((resolve) => setTimeout(resolve, this.options.patchLatencyMs));
      }
      this.activePatches -= 1;
      const move = body as { x: number; y: number; z?: number };
      if (this.options.rejectPatchesWhere?.(move)) {
        return json(422, { code: "invalid", message: "rejected by stub", path: url.pathname });
      }
      const cp: ControlPointWire = curve.control[index];
      cp.x = move.x;
      cp.y = move.y;
      cp.z = move.z ?? 0;
      this.revision += 1;
      return json(200, { revision: this.revision, name: curve.name, index });
    }

    return json(404, { code: "not_found", message: "no route", path: url.pathname });
  };
}
