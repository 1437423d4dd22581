/** Bootstrap: resolve the service base URL and a session, mount the panel.
 *
 * Query parameters:
 *   ?base=http://host:8642   service origin (default: page origin)
 *   ?session=<id>            attach to an existing session (default: create
 *                            a demo two-tube robot)
 */

import { ApiClient } from "./api.js";
import { TeachPanel } from "./panel.js";

const DEMO_BODY = {
  name: "teach-demo",
  tubes: [
    {
      tube_id: 1,
      youngs_modulus_gpa: 75,
      outer_diameter: 2.4,
      inner_diameter: 2.0,
      radius_of_curvature: 180,
      straight_length: 120,
      curved_length: 40,
    },
    {
      tube_id: 2,
      youngs_modulus_gpa: 75,
      outer_diameter: 1.8,
      inner_diameter: 1.4,
      radius_of_curvature: 120,
      straight_length: 140,
      curved_length: 60,
    },
  ],
  limits: { translation: [0, 200] as [number, number], rotation: [-180, 180] as [number, number] },
  joints: { translations: [100, 160], rotations: [0, 90] },
};

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("base") ?? window.location.origin;
  const api = new ApiClient(base);
  const root = document.getElementById("app")!;
  const panel = new TeachPanel(root, api);
  try {
    let session = params.get("session");
    if (!session) {
      const created = await api.createSession(DEMO_BODY);
      session = created.state.session_id;
    }
    await panel.start(session);
  } catch (err) {
    root.innerHTML = `<div class="banner">cannot reach ctrkit service at ${base}: ${err}</div>`;
  }
}

void boot();
