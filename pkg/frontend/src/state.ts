/** View state and consistent frame building.
 *
 * A frame bundles everything drawn on screen for one model revision.  The
 * builder re-fetches until every sub-response reports the same revision as
 * the model snapshot, so no frame ever mixes revisions; responses from
 * stale revisions are discarded by the retry loop.
 */

import type { StudioApi } from "./api";
import type {
  CombResponse,
  ContinuityResponse,
  CurveWire,
  SpiralReportResponse,
  SurfaceWire,
  Vec3,
} from "./types";

export interface Toggles {
  controlPolygon: boolean;
  comb: boolean;
  osculating: boolean;
  isolines: boolean;
}

export const defaultToggles: Toggles = {
  controlPolygon: true,
  comb: true,
  osculating: false,
  isolines: true,
};

export interface Camera {
  centerX: number;
  centerY: number;
  scale: number; // pixels per model unit
}

export interface Selection {
  curve: string;
  index: number;
}

export interface CurveView {
  wire: CurveWire;
  samples: Vec3[];
  comb: CombResponse | null;
  spiralReport: SpiralReportResponse | null;
}

export interface SurfaceView {
  wire: SurfaceWire;
  /** mesh rows/columns double as sampled isolines of the surface */
  meshPoints: Vec3[][] | null;
}

export interface ContinuityBadge {
  a: string;
  b: string;
  report: ContinuityResponse;
}

export interface Frame {
  revision: number;
  curves: CurveView[];
  surfaces: SurfaceView[];
  continuity: ContinuityBadge[];
}

export interface ViewState {
  frame: Frame | null;
  camera: Camera;
  toggles: Toggles;
  selection: Selection | null;
  pending: boolean;
  banner: string | null;
}

export const initialViewState = (): ViewState => ({
  frame: null,
  camera: { centerX: 0, centerY: 0, scale: 100 },
  toggles: { ...defaultToggles },
  selection: null,
  pending: false,
  banner: null,
});

export const CURVE_SAMPLES = 128;
export const COMB_SAMPLES = 48;
export const MESH_DENSITY = 13;

class StaleRevisionError extends Error {}

const checkRevision = (expected: number, got: number): void => {
  if (got !== expected) throw new StaleRevisionError(`revision ${got} != ${expected}`);
};

async function buildOnce(api: StudioApi, toggles: Toggles): Promise<Frame> {
  const { revision, model } = await api.getModel();

  const curves: CurveView[] = [];
  for (const wire of model.curves) {
    const samples = await api.getSamples(wire.name, CURVE_SAMPLES);
    checkRevision(revision, samples.revision);

    let comb: CombResponse | null = null;
    if (toggles.comb || toggles.osculating) {
      // the osculating-circle layer reuses the comb payload's end samples
      comb = await api.getComb(wire.name, toggles.comb ? COMB_SAMPLES : 2);
      checkRevision(revision, comb.revision);
    }

    let spiralReport: SpiralReportResponse | null = null;
    try {
      spiralReport = await api.getSpiralReport(wire.name);
      checkRevision(revision, spiralReport.revision);
    } catch (error) {
      if (error instanceof StaleRevisionError) throw error;
      spiralReport = null; // singular curves have no verdict; drop the badge
    }

    curves.push({ wire, samples: samples.points, comb, spiralReport });
  }

  const surfaces: SurfaceView[] = [];
  for (const wire of model.surfaces) {
    let meshPoints: Vec3[][] | null = null;
    if (toggles.isolines) {
      const mesh = await api.getMesh(wire.name, MESH_DENSITY, MESH_DENSITY);
      checkRevision(revision, mesh.revision);
      meshPoints = mesh.points;
    }
    surfaces.push({ wire, meshPoints });
  }

  const continuity: ContinuityBadge[] = [];
  for (let i = 0; i + 1 < model.curves.length; i += 1) {
    const a = model.curves[i].name;
    const b = model.curves[i + 1].name;
    try {
      const report = await api.getContinuity(a, b);
      checkRevision(revision, report.revision);
      continuity.push({ a, b, report });
    } catch (error) {
      if (error instanceof StaleRevisionError) throw error;
      // joints with singular endpoints simply get no badge
    }
  }

  return { revision, curves, surfaces, continuity };
}

/** Fetch a revision-consistent frame, discarding stale partial responses. */
export async function buildFrame(
  api: StudioApi,
  toggles: Toggles,
  maxAttempts = 4,
): Promise<Frame> {
  let lastError: unknown = null;
  for (let attempt = 0; attempt < maxAttempts; attempt += 1) {
    try {
      return await buildOnce(api, toggles);
    } catch (error) {
      if (!(error instanceof StaleRevisionError)) throw error;
      lastError = error;
    }
  }
  throw lastError;
}

/** Camera that fits every sampled coordinate of a frame with 10% margin. */
export function fitCamera(
  frame: Frame,
  viewportWidth: number,
  viewportHeight: number,
): Camera {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  const touch = (p: Vec3): void => {
    minX = Math.min(minX, p[0]);
    maxX = Math.max(maxX, p[0]);
    minY = Math.min(minY, p[1]);
    maxY = Math.max(maxY, p[1]);
  };
  for (const curve of frame.curves) {
    curve.samples.forEach(touch);
    for (const cp of curve.wire.control) touch([cp.x, cp.y, cp.z]);
  }
  for (const surface of frame.surfaces) {
    surface.meshPoints?.forEach((row) => row.forEach(touch));
  }
  if (!Number.isFinite(minX)) return { centerX: 0, centerY: 0, scale: 100 };
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min(viewportWidth / (1.2 * spanX), viewportHeight / (1.2 * spanY));
  return { centerX: (minX + maxX) / 2, centerY: (minY + maxY) / 2, scale };
}
