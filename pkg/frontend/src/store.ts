/** Panel state: one mirrored robot state, newest sequence number wins. */

import { tipLiterals } from "./raw.js";
import type { ExperimentMode, RobotState } from "./types.js";

export type Listener = (store: PanelStore) => void;

export class PanelStore {
  state: RobotState | null = null;
  /** Server spellings of the tip coordinates for the rendered state. */
  tipText: [string, string, string] | null = null;
  mode: ExperimentMode = "free";
  /** Slider positions the user is dragging, not yet committed. */
  pending: { translations: number[]; rotations: number[] } | null = null;

  private listeners: Listener[] = [];

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  /** Apply a state payload; stale events (lower seq) are discarded. */
  applyEvent(raw: string): boolean {
    const incoming = JSON.parse(raw) as RobotState;
    if (this.state && incoming.seq < this.state.seq) return false;
    this.state = incoming;
    this.tipText = tipLiterals(raw);
    this.pending = null;
    this.notify();
    return true;
  }

  setMode(mode: ExperimentMode): void {
    this.mode = mode;
    this.notify();
  }

  /** Current slider values: pending drag positions over committed joints. */
  sliderValues(): { translations: number[]; rotations: number[] } {
    if (this.pending) return this.pending;
    if (!this.state) return { translations: [], rotations: [] };
    return {
      translations: [...this.state.joints.translations],
      rotations: [...this.state.joints.rotations],
    };
  }

  setPending(kind: "translations" | "rotations", index: number, value: number): void {
    const values = this.sliderValues();
    if (kind === "rotations" && this.mode === "in-plane") {
      // in-plane mode keeps every tube at the same rotation
      values.rotations = values.rotations.map(() => value);
    } else {
      values[kind][index] = value;
    }
    this.pending = values;
    this.notify();
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }
}
