/** DOM rendering of the AR frame: backdrop cubes, label boxes, leaders. */

import {
  CANVAS_DISTANCE_M,
  PixelFrame,
  normalizeAngle,
  project,
  toPixels,
} from "./geometry.js";
import type { LayoutDoc, SceneDoc } from "./types.js";

const HIGHLIGHT_FILL: Record<string, string> = {
  green: "#2e9e4f",
  red: "#c23b3b",
  blue: "#3b6fc2",
};

const OBJECT_FILL: Record<string, string> = {
  red: "#c23b3b",
  yellow: "#d9b13b",
  blue: "#3b6fc2",
  grey: "#9a9a9a",
};

export interface FrameRenderer {
  element: HTMLElement;
  render(
    scene: SceneDoc,
    layout: LayoutDoc,
    yaw: number,
    pitch: number,
    objectColors: Record<number, string>
  ): void;
  onObjectClick(handler: (objectId: number) => void): void;
}

export function createFrameRenderer(frame: PixelFrame): FrameRenderer {
  const element = document.createElement("div");
  element.className = "ar-frame";
  element.style.position = "relative";
  element.style.overflow = "hidden";
  element.style.width = `${frame.widthPx}px`;
  element.style.height = `${frame.heightPx}px`;
  element.style.background = "#1c1c22";
  element.style.touchAction = "none";

  const backdrop = document.createElement("div");
  backdrop.className = "backdrop";
  const leaderSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  leaderSvg.setAttribute("width", String(frame.widthPx));
  leaderSvg.setAttribute("height", String(frame.heightPx));
  leaderSvg.style.position = "absolute";
  leaderSvg.style.left = "0";
  leaderSvg.style.top = "0";
  leaderSvg.style.pointerEvents = "none";
  const labelLayer = document.createElement("div");
  labelLayer.className = "labels";
  element.append(backdrop, leaderSvg, labelLayer);

  let clickHandler: ((objectId: number) => void) | null = null;

  function renderBackdrop(
    scene: SceneDoc,
    yaw: number,
    pitch: number,
    colors: Record<number, string>
  ) {
    backdrop.textContent = "";
    for (const obj of scene.objects) {
      const pt = project(obj.azimuth_deg, obj.radius_m, obj.height_m, yaw, pitch);
      if (pt === null) {
        continue;
      }
      const { xPx, yPx } = toPixels(frame, pt.xM, pt.yM);
      // apparent size falls off with head-frame depth
      const edgePx =
        scene.config.cube_edge * (CANVAS_DISTANCE_M / pt.depthM) * frame.scalePxPerM;
      const cube = document.createElement("div");
      cube.className = "cube";
      cube.dataset.objectId = String(obj.id);
      cube.style.position = "absolute";
      cube.style.left = `${xPx - edgePx / 2}px`;
      cube.style.top = `${yPx - edgePx / 2}px`;
      cube.style.width = `${edgePx}px`;
      cube.style.height = `${edgePx}px`;
      cube.style.background = OBJECT_FILL[colors[obj.id] ?? obj.color] ?? "#9a9a9a";
      cube.style.cursor = "pointer";
      cube.addEventListener("click", () => {
        if (clickHandler) {
          clickHandler(obj.id);
        }
      });
      backdrop.appendChild(cube);
    }
  }

  function renderLabels(layout: LayoutDoc) {
    labelLayer.textContent = "";
    for (const box of layout.boxes) {
      // service coordinates used verbatim, scaled once to pixels
      const { xPx, yPx } = toPixels(frame, box.x_m, box.y_m);
      const wPx = box.w_m * frame.scalePxPerM;
      const hPx = box.h_m * frame.scalePxPerM;
      const el = document.createElement("div");
      el.className = "label-box";
      el.dataset.objectId = String(box.object_id);
      el.style.position = "absolute";
      el.style.left = `${xPx - wPx / 2}px`;
      el.style.top = `${yPx - hPx / 2}px`;
      el.style.width = `${wPx}px`;
      el.style.height = `${hPx}px`;
      el.style.background = HIGHLIGHT_FILL[box.highlight] ?? "#e8e8e8";
      el.style.font = `${Math.max(9, hPx * 0.5)}px sans-serif`;
      el.style.overflow = "hidden";
      el.style.whiteSpace = "nowrap";
      let text = `${box.text} ${"★".repeat(box.value)}`;
      if (box.arrow === "left") {
        text = `◀ ${text}`;
      } else if (box.arrow === "right") {
        text = `${text} ▶`;
      }
      el.textContent = text;
      labelLayer.appendChild(el);
    }
  }

  function renderLeaders(layout: LayoutDoc) {
    leaderSvg.textContent = "";
    for (const leader of layout.leaders) {
      const a = toPixels(frame, leader.from[0], leader.from[1]);
      const b = toPixels(frame, leader.to[0], leader.to[1]);
      const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
      line.setAttribute("x1", String(a.xPx));
      line.setAttribute("y1", String(a.yPx));
      line.setAttribute("x2", String(b.xPx));
      line.setAttribute("y2", String(b.yPx));
      line.setAttribute("stroke", "#d0d0d0");
      line.setAttribute("stroke-width", "1");
      leaderSvg.appendChild(line);
    }
  }

  return {
    element,
    render(scene, layout, yaw, pitch, objectColors) {
      renderBackdrop(scene, normalizeAngle(yaw), pitch, objectColors);
      renderLeaders(layout);
      renderLabels(layout);
    },
    onObjectClick(handler) {
      clickHandler = handler;
    },
  };
}
