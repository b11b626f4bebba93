/** Pointer-drag view control and throttled layout polling. */

import type { LayoutDoc } from "./types.js";

export interface ViewAngles {
  yaw: number;
  pitch: number;
}

export interface DragRotator {
  pointerDown(x: number, y: number): void;
  pointerMove(x: number, y: number): void;
  pointerUp(): void;
  view(): ViewAngles;
  attach(el: HTMLElement): void;
}

/**
 * Horizontal drags rotate yaw at a fixed degrees-per-pixel ratio;
 * vertical drags adjust pitch the same way.  Yaw accumulates exactly
 * (one multiply and one add per move), so a drag that sums to zero
 * pixels lands back on the starting angle with no drift.
 */
export function createDragRotator(
  degPerPixel: number,
  onChange?: (view: ViewAngles) => void
): DragRotator {
  let yaw = 0;
  let pitch = 0;
  let dragging = false;
  let lastX = 0;
  let lastY = 0;

  function pointerDown(x: number, y: number) {
    dragging = true;
    lastX = x;
    lastY = y;
  }

  function pointerMove(x: number, y: number) {
    if (!dragging) {
      return;
    }
    // dragging the scene left turns the viewer right (clockwise)
    yaw += (lastX - x) * degPerPixel;
    pitch += (y - lastY) * degPerPixel;
    pitch = Math.max(-90, Math.min(90, pitch));
    lastX = x;
    lastY = y;
    if (onChange) {
      onChange({ yaw, pitch });
    }
  }

  function pointerUp() {
    dragging = false;
  }

  return {
    pointerDown,
    pointerMove,
    pointerUp,
    view: () => ({ yaw, pitch }),
    attach(el: HTMLElement) {
      el.addEventListener("pointerdown", (e) => {
        e.preventDefault();
        pointerDown(e.clientX, e.clientY);
      });
      el.addEventListener("pointermove", (e) => pointerMove(e.clientX, e.clientY));
      el.addEventListener("pointerup", pointerUp);
      el.addEventListener("pointerleave", pointerUp);
    },
  };
}

export interface LayoutPoller {
  request(view: ViewAngles): void;
  flush(): Promise<void>;
}

/**
 * Keeps at most one layout request in flight and at most one queued
 * behind it (latest view wins), and spaces request starts by
 * minIntervalMs.  Responses that arrive for a superseded view are
 * dropped instead of being rendered out of order.
 */
export function createLayoutPoller(
  fetchLayout: (view: ViewAngles) => Promise<LayoutDoc>,
  onLayout: (layout: LayoutDoc, view: ViewAngles) => void,
  minIntervalMs = 1000 / 60,
  onError?: (err: unknown) => void
): LayoutPoller {
  let pending: ViewAngles | null = null;
  let inFlight = false;
  let lastStart = -Infinity;
  let timer: ReturnType<typeof setTimeout> | null = null;
  let waiters: (() => void)[] = [];

  function settleIfIdle() {
    if (!inFlight && pending === null && timer === null) {
      const ws = waiters;
      waiters = [];
      ws.forEach((w) => w());
    }
  }

  async function launch() {
    timer = null;
    if (inFlight || pending === null) {
      return;
    }
    const view = pending;
    pending = null;
    inFlight = true;
    lastStart = Date.now();
    try {
      const layout = await fetchLayout(view);
      // a newer view was requested while this one was in flight
      if (pending === null) {
        onLayout(layout, view);
      }
    } catch (err) {
      if (onError) {
        onError(err);
      }
    } finally {
      inFlight = false;
      if (pending !== null) {
        schedule();
      }
      settleIfIdle();
    }
  }

  function schedule() {
    if (timer !== null || inFlight) {
      return;
    }
    const wait = Math.max(0, lastStart + minIntervalMs - Date.now());
    timer = setTimeout(launch, wait);
  }

  return {
    request(view: ViewAngles) {
      pending = view;
      schedule();
    },
    flush() {
      return new Promise((resolve) => {
        waiters.push(resolve);
        settleIfIdle();
      });
    },
  };
}
