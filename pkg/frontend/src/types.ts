/** Wire shapes returned by the arlabel HTTP service. */

export interface SceneObjectDoc {
  id: number;
  name: string;
  rating: number;
  color: string;
  azimuth_deg: number;
  radius_m: number;
  height_m: number;
  zone: number;
}

export interface SceneDoc {
  version: number;
  seed: number;
  config: {
    size: number;
    radius_range: [number, number];
    height_range: [number, number];
    min_separation: number;
    cube_edge: number;
  };
  objects: SceneObjectDoc[];
}

export interface TaskDoc {
  scene: SceneDoc;
  kind: "identify" | "compare" | "summarize";
  target_ids: number[];
  clusters: { red: number[]; blue: number[] } | null;
  reveal_state: string[];
}

export interface LabelBoxDoc {
  object_id: number;
  x_m: number;
  y_m: number;
  w_m: number;
  h_m: number;
  text: string;
  value: number;
  highlight: string;
  arrow: string;
}

export interface LeaderDoc {
  object_id: number;
  from: [number, number];
  to: [number, number];
}

export interface LayoutDoc {
  strategy: string;
  boxes: LabelBoxDoc[];
  leaders: LeaderDoc[];
}

export interface SessionDoc {
  session_id: string;
  condition: string;
  seed: number;
  scene: SceneDoc;
  task: TaskDoc;
}
