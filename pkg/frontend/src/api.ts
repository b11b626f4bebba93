/** Thin typed client for the arlabel session service. */

import type { LayoutDoc, SessionDoc } from "./types.js";

export class ServiceError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function parseError(res: Response): Promise<never> {
  let message = res.statusText;
  try {
    const doc = await res.json();
    if (doc && typeof doc.error === "string") {
      message = doc.error;
    }
  } catch {
    // non-JSON error body, keep the status text
  }
  throw new ServiceError(res.status, message);
}

export interface ApiClient {
  createSession(
    condition: string,
    task: string,
    size: number,
    seed?: number
  ): Promise<SessionDoc>;
  getLayout(sessionId: string, yaw: number, pitch: number): Promise<LayoutDoc>;
  reveal(sessionId: string, objectId: number): Promise<string[]>;
  answer(
    sessionId: string,
    answer: string,
    elapsedS: number
  ): Promise<boolean>;
  exportCsv(sessionId: string): Promise<string>;
  health(): Promise<boolean>;
}

export function createApiClient(baseUrl: string): ApiClient {
  const base = baseUrl.replace(/\/$/, "");

  async function getJson(path: string): Promise<any> {
    const res = await fetch(base + path);
    if (!res.ok) {
      await parseError(res);
    }
    return res.json();
  }

  async function postJson(path: string, body: unknown): Promise<any> {
    const res = await fetch(base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) {
      await parseError(res);
    }
    return res.json();
  }

  return {
    async createSession(condition, task, size, seed) {
      const body: Record<string, unknown> = { condition, task, size };
      if (seed !== undefined) {
        body.seed = seed;
      }
      return postJson("/session", body);
    },

    async getLayout(sessionId, yaw, pitch) {
      const query = `yaw=${encodeURIComponent(yaw)}&pitch=${encodeURIComponent(pitch)}`;
      return getJson(`/session/${sessionId}/layout?${query}`);
    },

    async reveal(sessionId, objectId) {
      const doc = await postJson(`/session/${sessionId}/reveal`, {
        object_id: objectId,
      });
      return doc.reveal_state;
    },

    async answer(sessionId, answer, elapsedS) {
      const doc = await postJson(`/session/${sessionId}/answer`, {
        answer,
        elapsed_s: elapsedS,
      });
      return doc.correct;
    },

    async exportCsv(sessionId) {
      const res = await fetch(`${base}/session/${sessionId}/export.csv`);
      if (!res.ok) {
        await parseError(res);
      }
      return res.text();
    },

    async health() {
      try {
        const res = await fetch(base + "/healthz");
        return res.ok;
      } catch {
        return false;
      }
    },
  };
}
