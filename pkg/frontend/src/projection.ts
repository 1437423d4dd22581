/** Minimal 3-D -> 2-D math for the backbone view. Visual only, no physics. */

import type { BackboneSample, TubeInfo } from "./types.js";

export interface Projected {
  x: number;
  y: number;
  /** depth after rotation; used for painter's-order hints only */
  z: number;
}

/** Rotate by yaw about +z then pitch about the screen x-axis, drop depth. */
export function project(point: number[], yawDeg: number, pitchDeg: number): Projected {
  const yaw = (yawDeg * Math.PI) / 180;
  const pitch = (pitchDeg * Math.PI) / 180;
  const [x = 0, y = 0, z = 0] = point;
  const x1 = x * Math.cos(yaw) - y * Math.sin(yaw);
  const y1 = x * Math.sin(yaw) + y * Math.cos(yaw);
  // screen: x right, y up (z points up on screen before pitch)
  const sy = z * Math.cos(pitch) - y1 * Math.sin(pitch);
  const depth = z * Math.sin(pitch) + y1 * Math.cos(pitch);
  return { x: x1, y: sy, z: depth };
}

export interface Viewport {
  width: number;
  height: number;
  margin: number;
}

/** Uniform scale + offset fitting all points into the viewport (y flipped). */
export function fitTransform(points: Projected[], vp: Viewport) {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  if (!points.length || !isFinite(minX)) {
    return { scale: 1, toScreen: (p: Projected) => ({ x: vp.width / 2, y: vp.height / 2 }) };
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min(
    (vp.width - 2 * vp.margin) / spanX,
    (vp.height - 2 * vp.margin) / spanY,
  );
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  return {
    scale,
    toScreen: (p: Projected) => ({
      x: vp.width / 2 + (p.x - cx) * scale,
      y: vp.height / 2 - (p.y - cy) * scale,
    }),
  };
}

/** Outer radius of the outermost tube still deployed past arc length s. */
export function radiusAt(s: number, tubes: TubeInfo[], translations: number[]): number {
  for (let i = 0; i < tubes.length; i++) {
    const rho = translations[i] ?? 0;
    if (rho > s) return tubes[i]!.outer_diameter / 2;
  }
  return 0;
}

export interface StrokedSegment {
  from: { x: number; y: number };
  to: { x: number; y: number };
  width: number;
}

/** Backbone polyline as stroked segments with tube-radius line widths. */
export function backboneStrokes(
  samples: BackboneSample[],
  tubes: TubeInfo[],
  translations: number[],
  yawDeg: number,
  pitchDeg: number,
  vp: Viewport,
): StrokedSegment[] {
  const projected = samples.map((sample) => project(sample.p, yawDeg, pitchDeg));
  const { scale, toScreen } = fitTransform(projected, vp);
  const strokes: StrokedSegment[] = [];
  for (let i = 1; i < samples.length; i++) {
    const mid = (samples[i - 1]!.s + samples[i]!.s) / 2;
    strokes.push({
      from: toScreen(projected[i - 1]!),
      to: toScreen(projected[i]!),
      width: Math.max(2 * radiusAt(mid, tubes, translations) * scale, 1),
    });
  }
  return strokes;
}
