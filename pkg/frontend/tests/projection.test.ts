import { describe, expect, it } from "vitest";

import { backboneStrokes, fitTransform, project, radiusAt } from "../src/projection";
import type { RobotState } from "../src/types";
import { statePayload } from "./fixtures.js";

describe("projection", () => {
  it("keeps +z pointing up on screen at zero angles", () => {
    const p = project([0, 0, 100], 0, 0);
    expect(p.x).toBeCloseTo(0, 12);
    expect(p.y).toBeCloseTo(100, 12);
  });

  it("yaw swings x into y", () => {
    const p = project([10, 0, 0], 90, 0);
    expect(p.x).toBeCloseTo(0, 12);
  });

  it("fits points inside the viewport", () => {
    const pts = [project([0, 0, 0], -35, 65), project([0, 0, 160], -35, 65)];
    const { toScreen } = fitTransform(pts, { width: 400, height: 400, margin: 20 });
    for (const p of pts) {
      const s = toScreen(p);
      expect(s.x).toBeGreaterThanOrEqual(20 - 1e-9);
      expect(s.x).toBeLessThanOrEqual(380 + 1e-9);
      expect(s.y).toBeGreaterThanOrEqual(20 - 1e-9);
      expect(s.y).toBeLessThanOrEqual(380 + 1e-9);
    }
  });

  it("uses the outermost deployed tube for the stroke radius", () => {
    const state = JSON.parse(statePayload(0)) as RobotState;
    // outer tube covers s < 100, inner-only section beyond
    expect(radiusAt(50, state.tubes, state.joints.translations)).toBe(1.2);
    expect(radiusAt(130, state.tubes, state.joints.translations)).toBe(0.9);
    expect(radiusAt(200, state.tubes, state.joints.translations)).toBe(0);
  });

  it("builds one stroke per backbone span", () => {
    const state = JSON.parse(statePayload(0)) as RobotState;
    const strokes = backboneStrokes(
      state.backbone.samples,
      state.tubes,
      state.joints.translations,
      -35,
      65,
      { width: 560, height: 560, margin: 40 },
    );
    expect(strokes).toHaveLength(state.backbone.samples.length - 1);
    expect(strokes.every((s) => s.width >= 1)).toBe(true);
  });
});
