/** Study runner entry point: session flow, timing, and answer dialog. */

import { createApiClient, ServiceError } from "./api.js";
import { makePixelFrame } from "./geometry.js";
import { createFrameRenderer } from "./render.js";
import { createDragRotator, createLayoutPoller } from "./view.js";
import type { SessionDoc } from "./types.js";

const PROMPTS: Record<string, string> = {
  identify: "What is the color of the object linked to the green label?",
  compare: "What is the color of the object with the highest rating?",
  summarize:
    "In the two colored clusters, which cluster has a higher average rating?",
};

const ANSWER_CHOICES: Record<string, string[]> = {
  identify: ["red", "yellow", "blue"],
  compare: ["red", "yellow", "blue"],
  summarize: ["red", "blue", "equal"],
};

const SCALE_PX_PER_M = 800;
const DEG_PER_PIXEL = 0.25;

export async function startApp(root: HTMLElement, baseUrl: string) {
  const params = new URLSearchParams(window.location.search);
  const condition = params.get("condition") ?? "situated";
  const task = params.get("task") ?? "identify";
  const size = Number(params.get("size") ?? "10");
  const seedParam = params.get("seed");
  const seed = seedParam === null ? undefined : Number(seedParam);

  const api = createApiClient(baseUrl);
  let session: SessionDoc;
  try {
    session = await api.createSession(condition, task, size, seed);
  } catch (err) {
    root.textContent = `could not start session: ${String(err)}`;
    return;
  }

  const banner = document.createElement("div");
  banner.className = "banner";
  banner.style.display = "none";
  banner.style.background = "#8a2a2a";
  banner.style.color = "#fff";
  banner.style.padding = "4px 8px";
  banner.textContent = "connection lost, retrying...";

  const prompt = document.createElement("p");
  prompt.className = "prompt";
  prompt.textContent = PROMPTS[session.task.kind];

  const frame = makePixelFrame(SCALE_PX_PER_M);
  const renderer = createFrameRenderer(frame);

  const status = document.createElement("p");
  status.className = "status";

  const buttons = document.createElement("div");
  buttons.className = "answers";

  root.append(banner, prompt, renderer.element, buttons, status);

  const objectColors: Record<number, string> = {};
  for (const obj of session.scene.objects) {
    objectColors[obj.id] = obj.color;
  }

  let startedAt: number | null = null;
  let submitted = false;

  const poller = createLayoutPoller(
    (view) => api.getLayout(session.session_id, view.yaw, view.pitch),
    (layout, view) => {
      banner.style.display = "none";
      renderer.render(session.scene, layout, view.yaw, view.pitch, objectColors);
      if (startedAt === null) {
        startedAt = performance.now();
      }
    },
    1000 / 60,
    () => {
      banner.style.display = "";
    }
  );

  const rotator = createDragRotator(DEG_PER_PIXEL, (view) => poller.request(view));
  rotator.attach(renderer.element);

  renderer.onObjectClick(async (objectId) => {
    if (session.task.kind !== "summarize" || submitted) {
      return;
    }
    try {
      const revealed = await api.reveal(session.session_id, objectId);
      const clusters = session.task.clusters;
      if (clusters) {
        for (const cluster of revealed) {
          for (const oid of clusters[cluster as "red" | "blue"]) {
            objectColors[oid] = cluster;
          }
        }
      }
      poller.request(rotator.view());
    } catch (err) {
      if (!(err instanceof ServiceError && err.status === 409)) {
        banner.style.display = "";
      }
    }
  });

  for (const choice of ANSWER_CHOICES[session.task.kind]) {
    const button = document.createElement("button");
    button.textContent = choice;
    button.addEventListener("click", async () => {
      if (submitted || startedAt === null) {
        return;
      }
      submitted = true;
      const elapsedS = (performance.now() - startedAt) / 1000;
      buttons.querySelectorAll("button").forEach((b) => (b.disabled = true));
      try {
        const correct = await api.answer(session.session_id, choice, elapsedS);
        status.textContent = correct ? "correct" : "incorrect";
      } catch (err) {
        status.textContent = `submission failed: ${String(err)}`;
      }
    });
    buttons.appendChild(button);
  }

  poller.request(rotator.view());
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = new URLSearchParams(window.location.search).get("service")
    ?? "http://127.0.0.1:8000";
  startApp(document.getElementById("app") as HTMLElement, base);
}
