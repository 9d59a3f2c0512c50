/** Browser wiring: canvas, toolbar, drag loop, live interrogation refresh. */

import { ApiError, StudioApi } from "./api";
import { DragController } from "./drag";
import { buildScene, hitTestControl, paint, screenToWorld } from "./render";
import {
  buildFrame,
  fitCamera,
  initialViewState,
  type Toggles,
  type ViewState,
} from "./state";

const canvas = document.getElementById("studio") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const badgesEl = document.getElementById("badges")!;
const bannerEl = document.getElementById("banner")!;
const statusEl = document.getElementById("status")!;
const addressEl = document.getElementById("service-address") as HTMLInputElement;

const state: ViewState = initialViewState();
let api = new StudioApi(addressEl.value);
let fitted = false;

const redraw = (): void => {
  if (!state.frame) return;
  const scene = buildScene(state.frame, state.toggles, state.selection);
  paint(ctx, scene, state.camera, canvas.width, canvas.height);
  badgesEl.replaceChildren(
    ...scene
      .filter((p) => p.kind === "badge")
      .map((p) => {
        const el = document.createElement("span");
        el.className = `badge ${(p as { tone: string }).tone}`;
        el.textContent = (p as { text: string }).text;
        return el;
      }),
  );
  statusEl.textContent =
    `revision ${state.frame.revision}` + (state.pending ? " | mutation in flight" : "");
};

const showBanner = (message: string | null): void => {
  state.banner = message;
  bannerEl.textContent = message ?? "";
  bannerEl.style.display = message === null ? "none" : "block";
};

async function reload(): Promise<void> {
  try {
    state.frame = await buildFrame(api, state.toggles);
    showBanner(null);
    if (!fitted) {
      state.camera = fitCamera(state.frame, canvas.width, canvas.height);
      fitted = true;
    }
    redraw();
  } catch (error) {
    const detail = error instanceof Error ? error.message : String(error);
    showBanner(`service unreachable or failed: ${detail} — press Retry`);
  }
}

// delegate so reconnects swap the backend under a live controller
const patchSender = {
  patchControl: (name: string, index: number, position: { x: number; y: number; z?: number }) =>
    api.patchControl(name, index, position),
};

const drag = new DragController(patchSender, {
  onCommitted: (revision, position) => {
    // keep the marker under the pointer without waiting for the refetch
    if (state.frame && state.selection) {
      const curve = state.frame.curves.find((c) => c.wire.name === state.selection!.curve);
      const cp = curve?.wire.control[state.selection.index];
      if (cp) {
        cp.x = position.x;
        cp.y = position.y;
      }
      state.frame.revision = revision;
    }
    void refreshAfterMutation();
  },
  onRejected: (error: ApiError, lastCommitted) => {
    showBanner(`move rejected (${error.code}): ${error.message}`);
    if (state.frame && state.selection) {
      const curve = state.frame.curves.find((c) => c.wire.name === state.selection!.curve);
      const cp = curve?.wire.control[state.selection.index];
      if (cp) {
        cp.x = lastCommitted.x;
        cp.y = lastCommitted.y;
      }
    }
    redraw();
  },
});

async function refreshAfterMutation(): Promise<void> {
  state.pending = drag.hasInFlightRequest;
  await reload();
  state.pending = drag.hasInFlightRequest;
  redraw();
}

canvas.addEventListener("pointerdown", (event) => {
  if (!state.frame) return;
  const rect = canvas.getBoundingClientRect();
  const sx = event.clientX - rect.left;
  const sy = event.clientY - rect.top;
  const scene = buildScene(state.frame, state.toggles, state.selection);
  const hit = hitTestControl(scene, sx, sy, state.camera, canvas.width, canvas.height);
  state.selection = hit;
  if (hit) {
    const [wx, wy] = screenToWorld(sx, sy, state.camera, canvas.width, canvas.height);
    drag.begin(hit.curve, hit.index, { x: wx, y: wy });
    canvas.setPointerCapture(event.pointerId);
  }
  redraw();
});

canvas.addEventListener("pointermove", (event) => {
  if (!drag.active) return;
  const rect = canvas.getBoundingClientRect();
  const [wx, wy] = screenToWorld(
    event.clientX - rect.left,
    event.clientY - rect.top,
    state.camera,
    canvas.width,
    canvas.height,
  );
  drag.move({ x: wx, y: wy });
});

canvas.addEventListener("pointerup", (event) => {
  if (!drag.active) return;
  const rect = canvas.getBoundingClientRect();
  const [wx, wy] = screenToWorld(
    event.clientX - rect.left,
    event.clientY - rect.top,
    state.camera,
    canvas.width,
    canvas.height,
  );
  void drag.end({ x: wx, y: wy }).then(refreshAfterMutation);
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  state.camera.scale *= event.deltaY < 0 ? 1.1 : 1 / 1.1;
  redraw();
});

for (const layer of ["controlPolygon", "comb", "osculating", "isolines"] as (keyof Toggles)[]) {
  const box = document.getElementById(`toggle-${layer}`) as HTMLInputElement;
  box.checked = state.toggles[layer];
  box.addEventListener("change", () => {
    state.toggles[layer] = box.checked;
    // hidden layers issue no further fetches; turning one on refetches
    void reload();
  });
}

document.getElementById("retry")!.addEventListener("click", () => void reload());
document.getElementById("connect")!.addEventListener("click", () => {
  api = new StudioApi(addressEl.value);
  fitted = false;
  void reload();
});

void reload();
