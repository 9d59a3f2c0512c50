/** Scene building and canvas painting.
 *
 * buildScene turns a frame into a flat display list; every coordinate in it
 * comes from a service response (curve samples, control points, comb tips,
 * mesh grids).  The only arithmetic applied to service data is the
 * osculating-circle offset center = point + normal / kappa, taken from the
 * comb's end samples — no curve is ever evaluated client-side.
 */

import type { Frame, Camera, Selection, Toggles } from "./state";
import type { Vec3 } from "./types";

export type Primitive =
  | { kind: "polyline"; layer: "curve" | "control-polygon" | "mesh"; points: Vec3[] }
  | { kind: "segment"; layer: "comb"; a: Vec3; b: Vec3 }
  | {
      kind: "marker";
      layer: "control-point";
      at: Vec3;
      curve: string;
      index: number;
      selected: boolean;
    }
  | { kind: "circle"; layer: "osculating"; center: [number, number]; radius: number }
  | { kind: "badge"; layer: "badge"; text: string; tone: "ok" | "warn" | "info" };

export function buildScene(
  frame: Frame,
  toggles: Toggles,
  selection: Selection | null,
): Primitive[] {
  const scene: Primitive[] = [];

  for (const surface of frame.surfaces) {
    if (!toggles.isolines || !surface.meshPoints) continue;
    const grid = surface.meshPoints;
    for (const row of grid) {
      scene.push({ kind: "polyline", layer: "mesh", points: row });
    }
    for (let j = 0; j < grid[0].length; j += 1) {
      scene.push({ kind: "polyline", layer: "mesh", points: grid.map((row) => row[j]) });
    }
  }

  for (const curve of frame.curves) {
    if (toggles.controlPolygon) {
      scene.push({
        kind: "polyline",
        layer: "control-polygon",
        points: curve.wire.control.map((cp) => [cp.x, cp.y, cp.z] as Vec3),
      });
    }
    scene.push({ kind: "polyline", layer: "curve", points: curve.samples });

    if (toggles.comb && curve.comb) {
      curve.comb.samples.forEach((sample, i) => {
        scene.push({ kind: "segment", layer: "comb", a: sample.point, b: curve.comb!.tips[i] });
      });
    }

    if (toggles.osculating && curve.comb) {
      for (const sample of [curve.comb.samples[0], curve.comb.samples.at(-1)!]) {
        if (Math.abs(sample.kappa) < 1e-9) continue;
        scene.push({
          kind: "circle",
          layer: "osculating",
          center: [
            sample.point[0] + sample.normal[0] / sample.kappa,
            sample.point[1] + sample.normal[1] / sample.kappa,
          ],
          radius: 1 / Math.abs(sample.kappa),
        });
      }
    }

    if (curve.spiralReport) {
      const r = curve.spiralReport;
      scene.push({
        kind: "badge",
        layer: "badge",
        text: `${curve.wire.name}: ${r.monotone ? "spiral" : "not a spiral"} ` +
          `(kappa ${r.kappaStart.toFixed(3)} to ${r.kappaEnd.toFixed(3)})`,
        tone: r.monotone ? "ok" : "warn",
      });
    }

    if (toggles.controlPolygon) {
      curve.wire.control.forEach((cp, index) => {
        scene.push({
          kind: "marker",
          layer: "control-point",
          at: [cp.x, cp.y, cp.z],
          curve: curve.wire.name,
          index,
          selected:
            selection !== null &&
            selection.curve === curve.wire.name &&
            selection.index === index,
        });
      });
    }
  }

  for (const badge of frame.continuity) {
    scene.push({
      kind: "badge",
      layer: "badge",
      text: `${badge.a} -> ${badge.b}: ${badge.report.level}`,
      tone: badge.report.level === "G2" ? "ok" : "info",
    });
  }

  return scene;
}

export const worldToScreen = (
  p: Vec3 | [number, number],
  camera: Camera,
  width: number,
  height: number,
): [number, number] => [
  width / 2 + (p[0] - camera.centerX) * camera.scale,
  height / 2 - (p[1] - camera.centerY) * camera.scale,
];

export const screenToWorld = (
  sx: number,
  sy: number,
  camera: Camera,
  width: number,
  height: number,
): [number, number] => [
  camera.centerX + (sx - width / 2) / camera.scale,
  camera.centerY - (sy - height / 2) / camera.scale,
];

/** Nearest control marker within tolPx of a screen position, if any. */
export function hitTestControl(
  scene: Primitive[],
  sx: number,
  sy: number,
  camera: Camera,
  width: number,
  height: number,
  tolPx = 9,
): Selection | null {
  let best: Selection | null = null;
  let bestDist = tolPx;
  for (const primitive of scene) {
    if (primitive.kind !== "marker") continue;
    const [mx, my] = worldToScreen(primitive.at, camera, width, height);
    const d = Math.hypot(mx - sx, my - sy);
    if (d <= bestDist) {
      bestDist = d;
      best = { curve: primitive.curve, index: primitive.index };
    }
  }
  return best;
}

const STROKES: Record<string, { style: string; width: number; dash: number[] }> = {
  curve: { style: "#1f4e9c", width: 2.0, dash: [] },
  "control-polygon": { style: "#9a9a9a", width: 1.0, dash: [6, 4] },
  mesh: { style: "#8888aa", width: 0.8, dash: [] },
  comb: { style: "#2e8b57", width: 1.0, dash: [] },
  osculating: { style: "#b06000", width: 1.2, dash: [4, 4] },
};

export function paint(
  ctx: CanvasRenderingContext2D,
  scene: Primitive[],
  camera: Camera,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const w2s = (p: Vec3 | [number, number]): [number, number] =>
    worldToScreen(p, camera, width, height);

  for (const primitive of scene) {
    if (primitive.kind === "badge") continue;
    const stroke = STROKES[primitive.layer] ?? STROKES.curve;
    ctx.strokeStyle = stroke.style;
    ctx.lineWidth = stroke.width;
    ctx.setLineDash(stroke.dash);
    if (primitive.kind === "polyline") {
      ctx.beginPath();
      primitive.points.forEach((p, i) => {
        const [x, y] = w2s(p);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
    } else if (primitive.kind === "segment") {
      const [ax, ay] = w2s(primitive.a);
      const [bx, by] = w2s(primitive.b);
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
      ctx.stroke();
    } else if (primitive.kind === "circle") {
      const [cx, cy] = w2s(primitive.center);
      ctx.beginPath();
      ctx.arc(cx, cy, primitive.radius * camera.scale, 0, 2 * Math.PI);
      ctx.stroke();
    } else {
      const [x, y] = w2s(primitive.at);
      ctx.setLineDash([]);
      ctx.fillStyle = primitive.selected ? "#e07020" : "#c03020";
      ctx.beginPath();
      ctx.arc(x, y, primitive.selected ? 6 : 4.5, 0, 2 * Math.PI);
      ctx.fill();
      ctx.strokeStyle = "#ffffff";
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
  }
}
