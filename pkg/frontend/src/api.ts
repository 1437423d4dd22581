/** HTTP client for the ctrkit service. Keeps the raw response text around so
 * displays can quote the server's own number spellings (see raw.ts). */

import type { InPlaneResult, Joints, OutOfPlaneResult, RobotState } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface StateResponse {
  state: RobotState;
  raw: string;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<string> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    if (!response.ok) {
      let message = text;
      try {
        const detail = JSON.parse(text).detail;
        message = typeof detail === "string" ? detail : (detail?.message ?? text);
      } catch {
        // non-JSON error body: show it as-is
      }
      throw new ServiceError(response.status, message);
    }
    return text;
  }

  private async stateRequest(method: string, path: string, body?: unknown): Promise<StateResponse> {
    const raw = await this.request(method, path, body);
    return { state: JSON.parse(raw) as RobotState, raw };
  }

  createSession(body: {
    file?: string;
    name?: string;
    joints?: Joints;
    backbone_ds?: number;
  }): Promise<StateResponse> {
    return this.stateRequest("POST", "/robots", body);
  }

  getState(sessionId: string): Promise<StateResponse> {
    return this.stateRequest("GET", `/robots/${sessionId}`);
  }

  patchJoints(sessionId: string, joints: Joints): Promise<StateResponse> {
    return this.stateRequest("PATCH", `/robots/${sessionId}/joints`, joints);
  }

  async runInPlane(sessionId: string, deltaRho: number, measured?: number[]): Promise<InPlaneResult> {
    const body: Record<string, unknown> = { delta_rho: deltaRho };
    if (measured) body.measured_after = measured;
    return JSON.parse(await this.request("POST", `/robots/${sessionId}/experiments/in-plane`, body));
  }

  async runOutOfPlane(sessionId: string, deltaTheta: number, tubeId: number): Promise<OutOfPlaneResult> {
    return JSON.parse(
      await this.request("POST", `/robots/${sessionId}/experiments/out-of-plane`, {
        delta_theta: deltaTheta,
        tube_id: tubeId,
      }),
    );
  }

  streamUrl(sessionId: string): string {
    return this.baseUrl.replace(/^http/, "ws") + `/robots/${sessionId}/stream`;
  }
}
