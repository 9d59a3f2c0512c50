/** Control-point drag loop: throttled PATCHes with a guaranteed final commit.
 *
 * Invariants: at most one mutation in flight per drag; sends happen at most
 * once per throttle interval; the pointer-up position is always committed
 * exactly, even if it arrives mid-flight or inside the throttle window.
 * A 422 reverts the marker to the last committed position.
 */

import type { ApiError } from "./api";
import type { MutationResponse } from "./types";

/** The one service call a drag needs; StudioApi satisfies it. */
export interface PatchSender {
  patchControl(
    name: string,
    index: number,
    position: { x: number; y: number; z?: number },
  ): Promise<MutationResponse>;
}

export interface DragPosition {
  x: number;
  y: number;
}

export interface DragCallbacks {
  /** A PATCH was acknowledged; the model is now at `revision`. */
  onCommitted(revision: number, position: DragPosition): void;
  /** The service rejected the move; marker reverts to `lastCommitted`. */
  onRejected(error: ApiError, lastCommitted: DragPosition): void;
}

export class DragController {
  private readonly api: PatchSender;
  private readonly throttleMs: number;
  private readonly callbacks: DragCallbacks;

  private curve: string | null = null;
  private index = 0;
  private lastCommitted: DragPosition = { x: 0, y: 0 };
  private pending: DragPosition | null = null;
  private inFlight = false;
  private lastSendAt = -Infinity;
  private trailingTimer: ReturnType<typeof setTimeout> | null = null;
  private ended = false;
  private settle: (() => void) | null = null;

  constructor(api: PatchSender, callbacks: DragCallbacks, throttleMs = 50) {
    this.api = api;
    this.callbacks = callbacks;
    this.throttleMs = throttleMs;
  }

  get active(): boolean {
    return this.curve !== null;
  }

  get hasInFlightRequest(): boolean {
    return this.inFlight;
  }

  begin(curve: string, index: number, start: DragPosition): void {
    this.curve = curve;
    this.index = index;
    this.lastCommitted = start;
    this.pending = null;
    this.ended = false;
  }

  move(position: DragPosition): void {
    if (!this.active || this.ended) return;
    this.pending = position;
    this.pump();
  }

  /** Final position; resolves once it has been committed (or rejected). */
  end(position: DragPosition): Promise<void> {
    if (!this.active) return Promise.resolve();
    this.pending = position;
    this.ended = true;
    return new Promise((resolve) => {
      this.settle = resolve;
      this.pump();
    });
  }

  private pump(): void {
    if (!this.active || this.inFlight || this.pending === null) return;
    const wait = this.lastSendAt + this.throttleMs - Date.now();
    if (wait > 0 && !this.ended) {
      // trailing send keeps the last move of a burst; the final commit
      // bypasses the window so pointer-up is never delayed
      if (this.trailingTimer === null) {
        this.trailingTimer = setTimeout(() => {
          this.trailingTimer = null;
          this.pump();
        }, wait);
      }
      return;
    }
    this.send();
  }

  private send(): void {
    if (this.curve === null || this.pending === null) return;
    const position = this.pending;
    this.pending = null;
    this.inFlight = true;
    this.lastSendAt = Date.now();
    this.api
      .patchControl(this.curve, this.index, position)
      .then((response) => {
        this.lastCommitted = position;
        this.callbacks.onCommitted(response.revision, position);
      })
      .catch((error) => {
        this.callbacks.onRejected(error as ApiError, this.lastCommitted);
      })
      .finally(() => {
        this.inFlight = false;
        if (this.pending !== null) {
          this.pump();
        } else if (this.ended) {
          this.finish();
        }
      });
  }

  private finish(): void {
    this.curve = null;
    if (this.trailingTimer !== null) {
      clearTimeout(this.trailingTimer);
      this.trailingTimer = null;
    }
    this.settle?.();
    this.settle = null;
  }
}
