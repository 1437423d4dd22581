/** Service payload shapes, mirrored field-for-field from the HTTP API. */

export interface Joints {
  translations: number[];
  rotations: number[];
}

export interface LinkRow {
  s_start: number;
  s_end: number;
  arc_length: number;
  members: Record<string, string>; // tube id -> "straight" | "curved"
  curvature: number;
  plane_angle: number;
  absolute_plane_angle: number;
}

export interface TipPose {
  position: number[];
  rotation: number[][];
}

export interface BackboneSample {
  s: number;
  p: number[];
}

export interface TubeInfo {
  tube_id: number;
  youngs_modulus_gpa: number;
  outer_diameter: number;
  inner_diameter: number;
  precurvature: number;
  straight_length: number;
  curved_length: number;
  bending_stiffness: number;
}

export interface RobotState {
  session_id: string;
  name: string;
  seq: number;
  homed: boolean;
  joints: Joints;
  actual_joints: Joints;
  limits: { translation: number[]; rotation: number[] };
  tubes: TubeInfo[];
  links: LinkRow[];
  tip: TipPose;
  backbone: { ds: number; samples: BackboneSample[] };
  registration: unknown | null;
}

export type ExperimentMode = "free" | "in-plane" | "out-of-plane";

export interface InPlaneResult {
  predicted_before: number[];
  predicted_after: number[];
  in_plane_before: number[];
  in_plane_after: number[];
  error_vector?: number[] | null;
  error_norm?: number | null;
}

export interface OutOfPlaneResult {
  predicted_before: number[];
  predicted_after: number[];
  plane_angle_before: number;
  plane_angle_after: number;
  plane_angle_change: number;
}
