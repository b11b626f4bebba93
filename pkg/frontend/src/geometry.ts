/** Client-side mirror of the service's viewing conventions.
 *
 * Angles in degrees, lengths in meters, azimuth clockwise from the
 * initial facing direction.  The head-locked canvas sits 1.8 m ahead
 * and spans a 35 x 25 degree window.
 */

export const CANVAS_DISTANCE_M = 1.8;
export const EYE_HEIGHT_M = 1.6;

const rad = (deg: number) => (deg * Math.PI) / 180;

export const CANVAS_HALF_WIDTH_M = CANVAS_DISTANCE_M * Math.tan(rad(17.5));
export const CANVAS_HALF_HEIGHT_M = CANVAS_DISTANCE_M * Math.tan(rad(12.5));

/** Wrap an angle into [0, 360). */
export function normalizeAngle(deg: number): number {
  const a = deg % 360;
  const b = a < 0 ? a + 360 : a;
  return b >= 360 ? 0 : b;
}

export interface ProjectedPoint {
  xM: number;
  yM: number;
  depthM: number;
}

/**
 * Perspective-project a world object onto the canvas plane.  Returns
 * null for points in the rear hemisphere of the head frame; a non-null
 * result may still lie outside the canvas bounds.
 */
export function project(
  azimuthDeg: number,
  radiusM: number,
  heightM: number,
  yawDeg: number,
  pitchDeg: number
): ProjectedPoint | null {
  const relAz = rad(azimuthDeg - yawDeg);
  const f = radiusM * Math.cos(relAz);
  const r = radiusM * Math.sin(relAz);
  const u = heightM - EYE_HEIGHT_M;
  // positive pitch looks up
  const pitch = rad(pitchDeg);
  const f2 = f * Math.cos(pitch) + u * Math.sin(pitch);
  const u2 = u * Math.cos(pitch) - f * Math.sin(pitch);
  if (f2 <= 0) {
    return null;
  }
  const s = CANVAS_DISTANCE_M / f2;
  return { xM: r * s, yM: u2 * s, depthM: f2 };
}

export interface PixelFrame {
  widthPx: number;
  heightPx: number;
  scalePxPerM: number;
}

/** A single scale factor maps canvas meters to frame pixels. */
export function makePixelFrame(scalePxPerM: number): PixelFrame {
  return {
    widthPx: 2 * CANVAS_HALF_WIDTH_M * scalePxPerM,
    heightPx: 2 * CANVAS_HALF_HEIGHT_M * scalePxPerM,
    scalePxPerM,
  };
}

/** Canvas offset (x right, y up) to CSS pixel position (y down). */
export function toPixels(
  frame: PixelFrame,
  xM: number,
  yM: number
): { xPx: number; yPx: number } {
  return {
    xPx: (CANVAS_HALF_WIDTH_M + xM) * frame.scalePxPerM,
    yPx: (CANVAS_HALF_HEIGHT_M - yM) * frame.scalePxPerM,
  };
}
