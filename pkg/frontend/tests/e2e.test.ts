import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApiClient, ServiceError } from "../src/api.js";
import { createDragRotator } from "../src/view.js";
import type { SceneDoc, SessionDoc } from "../src/types.js";

const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;
const DEG_PER_PIXEL = 0.25;

let server: ChildProcess;
const api = createApiClient(BASE);

beforeAll(async () => {
  server = spawn("arlabel", ["serve", "--host", "127.0.0.1", "--port", String(PORT)], {
    stdio: "ignore",
  });
  for (let i = 0; i < 100; i++) {
    if (await api.health()) {
      return;
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not come up");
});

afterAll(() => {
  server.kill();
});

function elevationDeg(scene: SceneDoc, objectId: number): number {
  const obj = scene.objects.find((o) => o.id === objectId)!;
  return (Math.atan2(obj.height_m - 1.6, obj.radius_m) * 180) / Math.PI;
}

function azimuthDeg(scene: SceneDoc, objectId: number): number {
  return scene.objects.find((o) => o.id === objectId)!.azimuth_deg;
}

function clusterMean(session: SessionDoc, cluster: "red" | "blue"): number {
  const ids = session.task.clusters![cluster];
  const ratings = new Map(session.scene.objects.map((o) => [o.id, o.rating]));
  return ids.reduce((acc, id) => acc + ratings.get(id)!, 0) / ids.length;
}

async function faceObject(
  rotator: ReturnType<typeof createDragRotator>,
  session: SessionDoc,
  objectId: number
) {
  // drag until the object's azimuth is centered, then fetch that view
  const target = azimuthDeg(session.scene, objectId);
  const current = ((rotator.view().yaw % 360) + 360) % 360;
  let delta = target - current;
  if (delta > 180) delta -= 360;
  if (delta <= -180) delta += 360;
  rotator.pointerDown(0, 0);
  rotator.pointerMove(-delta / DEG_PER_PIXEL, 0);
  rotator.pointerUp();
  const view = rotator.view();
  return api.getLayout(session.session_id, view.yaw, elevationDeg(session.scene, objectId));
}

describe("scripted end-to-end session", () => {
  it("runs create, rotate, reveal, answer and exports one correct row", async () => {
    const session = await api.createSession("situated", "summarize", 10, 1234);
    expect(session.task.kind).toBe("summarize");
    const [redSeed, blueSeed] = session.task.target_ids;

    const rotator = createDragRotator(DEG_PER_PIXEL);
    await api.getLayout(session.session_id, 0, 0);

    await faceObject(rotator, session, redSeed);
    expect((await api.reveal(session.session_id, redSeed)).sort()).toEqual(["red"]);

    const layout = await faceObject(rotator, session, blueSeed);
    const seedBox = layout.boxes.find((b) => b.object_id === blueSeed);
    expect(seedBox?.highlight).toBe("blue");
    expect((await api.reveal(session.session_id, blueSeed)).sort()).toEqual([
      "blue",
      "red",
    ]);

    const red = clusterMean(session, "red");
    const blue = clusterMean(session, "blue");
    const answer = red > blue ? "red" : blue > red ? "blue" : "equal";
    expect(await api.answer(session.session_id, answer, 12.5)).toBe(true);

    const csv = await api.exportCsv(session.session_id);
    const lines = csv.trim().split("\n");
    expect(lines.length).toBe(2);
    expect(lines[0].split(",")[0]).toBe("trial_id");
    const row = lines[1].split(",");
    const header = lines[0].split(",");
    const cell = (name: string) => row[header.indexOf(name)];
    expect(cell("condition")).toBe("situated");
    expect(cell("task")).toBe("summarize");
    expect(cell("size")).toBe("10");
    expect(cell("answer")).toBe(answer);
    expect(cell("correct")).toBe("true");
    expect(Number(cell("proxy_time_s"))).toBeCloseTo(12.5, 9);
  });

  it("rejects reveals for non-seed objects and duplicate answers", async () => {
    const session = await api.createSession("angle", "summarize", 10, 77);
    const [redSeed] = session.task.target_ids;
    const nonSeed = session.scene.objects
      .map((o) => o.id)
      .find(
        (id) =>
          !session.task.clusters!.red.includes(id) &&
          !session.task.clusters!.blue.includes(id)
      )!;
    await expect(api.reveal(session.session_id, nonSeed)).rejects.toMatchObject({
      status: 409,
    });

    await api.getLayout(
      session.session_id,
      azimuthDeg(session.scene, redSeed),
      elevationDeg(session.scene, redSeed)
    );
    await api.reveal(session.session_id, redSeed);
    await api.answer(session.session_id, "equal", 3.0);
    await expect(api.answer(session.session_id, "equal", 3.0)).rejects.toMatchObject({
      status: 409,
    });
  });

  it("grades identify answers against the scene", async () => {
    const session = await api.createSession("height", "identify", 10, 5);
    const target = session.task.target_ids[0];
    const color = session.scene.objects.find((o) => o.id === target)!.color;
    await api.getLayout(session.session_id, 0, 0);
    expect(await api.answer(session.session_id, color, 4.2)).toBe(true);
  });

  it("rejects unknown conditions", async () => {
    await expect(api.createSession("floating", "identify", 10, 1)).rejects.toSatisfy(
      (err: unknown) => err instanceof ServiceError && err.status === 400
    );
  });
});
