import { describe, expect, it } from "vitest";

import { createDragRotator, createLayoutPoller, ViewAngles } from "../src/view.js";
import type { LayoutDoc } from "../src/types.js";

const EMPTY: LayoutDoc = { strategy: "situated", boxes: [], leaders: [] };

function dragBy(rotator: ReturnType<typeof createDragRotator>, dxTotal: number, steps: number) {
  rotator.pointerDown(0, 0);
  let x = 0;
  for (let i = 1; i <= steps; i++) {
    const next = (dxTotal * i) / steps;
    rotator.pointerMove(next, 0);
    x = next;
  }
  rotator.pointerUp();
  return x;
}

describe("drag rotator", () => {
  it("applies a fixed degrees-per-pixel ratio", () => {
    const rotator = createDragRotator(0.25);
    dragBy(rotator, -100, 10);
    expect(rotator.view().yaw).toBeCloseTo(25, 9);
  });

  it("returns to the start after a 360 degree round trip", () => {
    const rotator = createDragRotator(0.25);
    // 1440 px left then 1440 px right, in uneven chunks
    dragBy(rotator, -1440, 97);
    dragBy(rotator, 1440, 53);
    const yaw = ((rotator.view().yaw % 360) + 360) % 360;
    const dist = Math.min(yaw, 360 - yaw);
    expect(dist).toBeLessThanOrEqual(1e-6);
  });

  it("lands on a multiple of 360 after a full forward turn", () => {
    const rotator = createDragRotator(0.5);
    dragBy(rotator, -720, 731);
    const yaw = ((rotator.view().yaw % 360) + 360) % 360;
    const dist = Math.min(yaw, 360 - yaw);
    expect(dist).toBeLessThanOrEqual(1e-6);
  });

  it("clamps pitch and ignores moves when not dragging", () => {
    const rotator = createDragRotator(1);
    rotator.pointerMove(50, 50);
    expect(rotator.view().yaw).toBe(0);
    rotator.pointerDown(0, 0);
    rotator.pointerMove(0, 500);
    expect(rotator.view().pitch).toBe(90);
  });
});

describe("layout poller", () => {
  it("coalesces a burst into few requests and keeps the latest view", async () => {
    const fetched: ViewAngles[] = [];
    const rendered: ViewAngles[] = [];
    const poller = createLayoutPoller(
      async (view) => {
        fetched.push(view);
        return EMPTY;
      },
      (_layout, view) => rendered.push(view),
      5
    );
    for (let i = 0; i < 50; i++) {
      poller.request({ yaw: i, pitch: 0 });
    }
    await poller.flush();
    expect(fetched.length).toBeLessThan(10);
    expect(rendered[rendered.length - 1].yaw).toBe(49);
  });

  it("drops responses for superseded views", async () => {
    let release: (() => void) | null = null;
    const rendered: ViewAngles[] = [];
    const poller = createLayoutPoller(
      (view) =>
        new Promise<LayoutDoc>((resolve) => {
          if (view.yaw === 1) {
            release = () => resolve(EMPTY);
          } else {
            resolve(EMPTY);
          }
        }),
      (_layout, view) => rendered.push(view),
      0
    );
    poller.request({ yaw: 1, pitch: 0 });
    // wait for the slow request to start, then supersede it
    await new Promise((r) => setTimeout(r, 10));
    poller.request({ yaw: 2, pitch: 0 });
    release!();
    await poller.flush();
    expect(rendered.map((v) => v.yaw)).toEqual([2]);
  });

  it("reports fetch failures through the error hook", async () => {
    const errors: unknown[] = [];
    const poller = createLayoutPoller(
      async () => {
        throw new Error("boom");
      },
      () => {},
      0,
      (err) => errors.push(err)
    );
    poller.request({ yaw: 0, pitch: 0 });
    await poller.flush();
    expect(errors.length).toBe(1);
  });
});
