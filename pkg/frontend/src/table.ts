/** Link table rows as plain data, so tests can check them without a DOM. */

import type { LinkRow } from "./types.js";

export interface RenderedRow {
  cells: string[];
}

const HEADER = ["link", "span (mm)", "length (mm)", "curvature (1/mm)", "plane angle (deg)", "members"];

export function linkTableHeader(): string[] {
  return [...HEADER];
}

export function linkTableRows(links: LinkRow[]): RenderedRow[] {
  return links.map((link, i) => ({
    cells: [
      String(i + 1),
      `${link.s_start.toFixed(3)} – ${link.s_end.toFixed(3)}`,
      link.arc_length.toFixed(3),
      link.curvature.toExponential(6),
      link.absolute_plane_angle.toFixed(3),
      Object.entries(link.members)
        .map(([tubeId, role]) => `${tubeId}:${role}`)
        .join(", "),
    ],
  }));
}
