/** DOM wiring: sliders, tip readout, link table, backbone canvas, modes. */

import { ApiClient, ServiceError } from "./api.js";
import { backboneStrokes } from "./projection.js";
import { SliderCommitter } from "./sliders.js";
import { PanelStore } from "./store.js";
import { connectStream } from "./stream.js";
import { linkTableHeader, linkTableRows } from "./table.js";
import type { ExperimentMode, InPlaneResult, OutOfPlaneResult } from "./types.js";

const YAW_DEG = -35;
const PITCH_DEG = 65;

export class TeachPanel {
  readonly store = new PanelStore();
  private committer: SliderCommitter;
  private disconnect: (() => void) | null = null;
  private sessionId = "";
  private lastExperiment: InPlaneResult | OutOfPlaneResult | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.committer = new SliderCommitter(
      this.store,
      (joints) => this.api.patchJoints(this.sessionId, joints).then((r) => this.store.applyEvent(r.raw)),
      (message) => this.showError(message),
    );
    this.root.innerHTML = `
      <div class="banner" id="banner" hidden></div>
      <div class="layout">
        <div class="left">
          <canvas id="view" width="560" height="560"></canvas>
          <div class="tip" id="tip"></div>
        </div>
        <div class="right">
          <div class="modes">
            <button data-mode="free">free</button>
            <button data-mode="in-plane">in-plane</button>
            <button data-mode="out-of-plane">out-of-plane</button>
            <label><input type="checkbox" id="live"> live drag</label>
          </div>
          <div id="sliders"></div>
          <div id="experiment"></div>
          <table id="links"></table>
        </div>
      </div>`;
    for (const button of this.root.querySelectorAll<HTMLButtonElement>("[data-mode]")) {
      button.onclick = () => this.setMode(button.dataset.mode as ExperimentMode);
    }
    const live = this.root.querySelector<HTMLInputElement>("#live")!;
    live.onchange = () => {
      this.committer.live = live.checked;
    };
    this.store.subscribe(() => this.render());
  }

  async start(sessionId: string): Promise<void> {
    this.sessionId = sessionId;
    const { raw } = await this.api.getState(sessionId);
    this.store.applyEvent(raw);
    this.disconnect = connectStream(this.api.streamUrl(sessionId), {
      onEvent: (data) => this.store.applyEvent(data),
      onStatus: (connected) => this.showError(connected ? null : "connection lost, retrying…"),
    });
  }

  stop(): void {
    this.disconnect?.();
  }

  private setMode(mode: ExperimentMode): void {
    this.lastExperiment = null;
    this.store.setMode(mode);
  }

  private showError(message: string | null): void {
    const banner = this.root.querySelector<HTMLElement>("#banner")!;
    banner.hidden = message === null;
    banner.textContent = message ?? "";
  }

  private render(): void {
    const state = this.store.state;
    if (!state) return;

    const tip = this.root.querySelector<HTMLElement>("#tip")!;
    const [x, y, z] = this.store.tipText!;
    tip.innerHTML = `tip (mm): <code>${x}</code>, <code>${y}</code>, <code>${z}</code>
      <span class="seq">seq ${state.seq}</span>`;

    this.renderSliders();
    this.renderTable();
    this.renderCanvas();
    this.renderExperiment();
  }

  private renderSliders(): void {
    const holder = this.root.querySelector<HTMLElement>("#sliders")!;
    const state = this.store.state!;
    const values = this.store.sliderValues();
    const [tLow, tHigh] = state.limits.translation;
    const [rLow, rHigh] = state.limits.rotation;
    holder.innerHTML = "";
    state.tubes.forEach((tube, i) => {
      const row = document.createElement("div");
      row.className = "tube-row";
      const rotationHidden =
        this.store.mode === "out-of-plane" && i !== state.tubes.length - 1;
      row.innerHTML = `
        <span class="label">tube ${tube.tube_id}</span>
        <label>ρ <input type="range" data-kind="translations" data-index="${i}"
          min="${tLow}" max="${Math.min(tHigh ?? 0, tube.straight_length + tube.curved_length)}"
          step="0.1" value="${values.translations[i]}">
          <span>${values.translations[i]?.toFixed(1)} mm</span></label>
        <label ${rotationHidden ? "hidden" : ""}>θ <input type="range" data-kind="rotations" data-index="${i}"
          min="${rLow}" max="${rHigh}" step="0.5" value="${values.rotations[i]}">
          <span>${values.rotations[i]?.toFixed(1)}°</span></label>`;
      holder.appendChild(row);
    });
    for (const input of holder.querySelectorAll<HTMLInputElement>("input[type=range]")) {
      const kind = input.dataset.kind as "translations" | "rotations";
      const index = Number(input.dataset.index);
      input.oninput = () => this.committer.onDrag(kind, index, Number(input.value));
      input.onchange = () => void this.committer.onRelease();
    }
  }

  private renderTable(): void {
    const table = this.root.querySelector<HTMLTableElement>("#links")!;
    const header = `<tr>${linkTableHeader()
      .map((h) => `<th>${h}</th>`)
      .join("")}</tr>`;
    const rows = linkTableRows(this.store.state!.links)
      .map((row) => `<tr>${row.cells.map((c) => `<td>${c}</td>`).join("")}</tr>`)
      .join("");
    table.innerHTML = header + rows;
  }

  private renderCanvas(): void {
    const canvas = this.root.querySelector<HTMLCanvasElement>("#view")!;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const state = this.store.state!;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const strokes = backboneStrokes(
      state.backbone.samples,
      state.tubes,
      state.joints.translations,
      YAW_DEG,
      PITCH_DEG,
      { width: canvas.width, height: canvas.height, margin: 40 },
    );
    ctx.lineCap = "round";
    ctx.strokeStyle = "#2f6f8f";
    for (const stroke of strokes) {
      ctx.lineWidth = stroke.width;
      ctx.beginPath();
      ctx.moveTo(stroke.from.x, stroke.from.y);
      ctx.lineTo(stroke.to.x, stroke.to.y);
      ctx.stroke();
    }
  }

  private renderExperiment(): void {
    const holder = this.root.querySelector<HTMLElement>("#experiment")!;
    const mode = this.store.mode;
    if (mode === "free") {
      holder.innerHTML = "";
      return;
    }
    if (!holder.querySelector("form")) {
      const isInPlane = mode === "in-plane";
      holder.innerHTML = `
        <form>
          <label>${isInPlane ? "Δρ (mm)" : "Δθ (deg)"}
            <input name="delta" type="number" step="any" value="${isInPlane ? 10 : 90}"></label>
          <label>measured tip (x,y,z mm, optional)
            <input name="measured" placeholder="blank = predicted only"></label>
          <button type="submit">run</button>
        </form>
        <div class="result"></div>`;
      holder.querySelector("form")!.onsubmit = (ev) => {
        ev.preventDefault();
        void this.runExperiment();
      };
    }
    const result = holder.querySelector<HTMLElement>(".result")!;
    result.innerHTML = this.experimentSummary();
  }

  private experimentSummary(): string {
    const r = this.lastExperiment;
    if (!r) return "";
    if ("in_plane_before" in r) {
      const [r0 = 0, z0 = 0] = r.in_plane_before;
      const [r1 = 0, z1 = 0] = r.in_plane_after;
      const measured =
        r.error_norm == null ? "" : `<br>measured error: ${r.error_norm.toFixed(6)} mm`;
      return `bending plane (r, z): (${r0.toFixed(3)}, ${z0.toFixed(3)}) →
        (${r1.toFixed(3)}, ${z1.toFixed(3)}) mm${measured}`;
    }
    return `distal plane angle: ${r.plane_angle_before.toFixed(3)}° →
      ${r.plane_angle_after.toFixed(3)}° (change ${r.plane_angle_change.toFixed(3)}°)`;
  }

  private async runExperiment(): Promise<void> {
    const holder = this.root.querySelector<HTMLElement>("#experiment")!;
    const delta = Number(holder.querySelector<HTMLInputElement>("[name=delta]")!.value);
    const measuredText = holder.querySelector<HTMLInputElement>("[name=measured]")!.value.trim();
    try {
      if (this.store.mode === "in-plane") {
        const measured = measuredText ? measuredText.split(",").map(Number) : undefined;
        this.lastExperiment = await this.api.runInPlane(this.sessionId, delta, measured);
      } else {
        const state = this.store.state!;
        const tubeId = state.tubes[state.tubes.length - 1]!.tube_id;
        this.lastExperiment = await this.api.runOutOfPlane(this.sessionId, delta, tubeId);
      }
      this.showError(null);
    } catch (err) {
      this.showError(err instanceof ServiceError ? err.message : String(err));
    }
    this.renderExperiment();
  }
}
