/** Wire types mirroring the service's JSON payloads. */

export interface ControlPointWire {
  x: number;
  y: number;
  z: number;
  weight: number;
}

export interface CurveWire {
  name: string;
  degree: number;
  knots: number[];
  control: ControlPointWire[];
}

export interface SurfaceWire {
  name: string;
  degreeU: number;
  degreeV: number;
  knotsU: number[];
  knotsV: number[];
  net: ControlPointWire[][];
}

export interface ModelWire {
  schemaVersion: number;
  name: string;
  curves: CurveWire[];
  surfaces: SurfaceWire[];
  annotations: Record<string, unknown>;
}

export interface ModelResponse {
  revision: number;
  model: ModelWire;
}

export type Vec3 = [number, number, number];

export interface CombSample {
  t: number;
  point: Vec3;
  tangent: Vec3;
  normal: Vec3;
  kappa: number;
}

export interface CombResponse {
  revision: number;
  name: string;
  scale: number;
  samples: CombSample[];
  tips: Vec3[];
}

export interface SamplesResponse {
  revision: number;
  name: string;
  points: Vec3[];
}

export interface SpiralReportResponse {
  revision: number;
  name: string;
  monotone: boolean;
  kappaStart: number;
  kappaEnd: number;
  maxViolation: number;
  inflectionCount: number;
}

export interface ContinuityResponse {
  revision: number;
  level: "NONE" | "G0" | "G1" | "G2";
  positionGap: number;
  tangentAngleGap: number;
  curvatureGap: number;
}

export interface IsolinesResponse {
  revision: number;
  name: string;
  isolines: { direction: "u" | "v"; value: number; curve: Omit<CurveWire, "name"> }[];
}

export interface MeshResponse {
  revision: number;
  name: string;
  us: number[];
  vs: number[];
  points: Vec3[][];
  degenerate: [number, number][];
}

export interface MutationResponse {
  revision: number;
  name: string;
  index?: number;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  path: string;
}
