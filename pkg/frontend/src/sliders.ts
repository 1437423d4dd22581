/** Commit-on-release slider behaviour.
 *
 * Dragging only updates the pending overlay in the store; releasing the
 * handle issues exactly one joints PATCH. The optional live mode sends
 * throttled PATCHes while dragging (at most one per interval).
 */

import type { PanelStore } from "./store.js";
import type { Joints } from "./types.js";

export type PatchFn = (joints: Joints) => Promise<unknown>;

export class SliderCommitter {
  live = false;
  private liveIntervalMs: number;
  private lastLiveAt = -Infinity;
  private inFlight = false;

  constructor(
    private readonly store: PanelStore,
    private readonly patchFn: PatchFn,
    private readonly onError: (message: string) => void = () => {},
    private readonly now: () => number = () => Date.now(),
    liveHz = 10,
  ) {
    this.liveIntervalMs = 1000 / liveHz;
  }

  onDrag(kind: "translations" | "rotations", index: number, value: number): void {
    this.store.setPending(kind, index, value);
    if (this.live) {
      const t = this.now();
      if (t - this.lastLiveAt >= this.liveIntervalMs) {
        this.lastLiveAt = t;
        void this.send(this.store.sliderValues());
      }
    }
  }

  /** One PATCH per release; a release without a preceding drag is a no-op. */
  async onRelease(): Promise<void> {
    if (!this.store.pending) return;
    await this.send(this.store.pending);
  }

  private async send(joints: Joints): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    try {
      await this.patchFn({
        translations: [...joints.translations],
        rotations: [...joints.rotations],
      });
    } catch (err) {
      this.store.pending = null; // revert sliders to the committed state
      this.onError(err instanceof Error ? err.message : String(err));
    } finally {
      this.inFlight = false;
    }
  }
}
