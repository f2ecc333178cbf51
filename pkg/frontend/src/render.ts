/**
 * Pure string renderers: session state in, SVG/HTML out.
 *
 * Conventions follow the usual pictures: frozen vertices are boxed, frozen
 * arrows dashed.  Mutable vertices carry a clickable badge with a
 * data-vertex attribute; the DOM layer wires the clicks.
 */

import type { Point } from "./layout.js";
import type { Diagnostics, IqpDocument, MutationReport, SessionPayload } from "./types.js";

const VERTEX_R = 16;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function arrowPath(a: Point, b: Point, bend: number): string {
  const mx = (a.x + b.x) / 2;
  const my = (a.y + b.y) / 2;
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
  const nx = -dy / d;
  const ny = dx / d;
  const cx = mx + nx * bend;
  const cy = my + ny * bend;
  return `M ${a.x.toFixed(1)} ${a.y.toFixed(1)} Q ${cx.toFixed(1)} ${cy.toFixed(1)} ${b.x.toFixed(1)} ${b.y.toFixed(1)}`;
}

function loopPath(p: Point): string {
  return `M ${p.x} ${p.y - VERTEX_R} C ${p.x - 40} ${p.y - 60}, ${p.x + 40} ${p.y - 60}, ${p.x} ${p.y - VERTEX_R}`;
}

/** Render the quiver graph as a self-contained SVG fragment. */
export function renderSvg(
  doc: IqpDocument,
  positions: Map<number, Point>,
  diagnostics: Diagnostics,
  width = 640,
  height = 480,
): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="quiver">`,
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">` +
      `<path d="M0,0 L7,3 L0,6 z"/></marker></defs>`,
  );
  // spread parallel/opposite arrows with alternating bends
  const groups = new Map<string, string[]>();
  for (const arrow of doc.arrows) {
    const key = [Math.min(arrow.tail, arrow.head), Math.max(arrow.tail, arrow.head)].join("~");
    groups.set(key, [...(groups.get(key) ?? []), arrow.id]);
  }
  for (const arrow of doc.arrows) {
    const a = positions.get(arrow.tail);
    const b = positions.get(arrow.head);
    if (!a || !b) continue;
    const key = [Math.min(arrow.tail, arrow.head), Math.max(arrow.tail, arrow.head)].join("~");
    const siblings = groups.get(key)!;
    const index = siblings.indexOf(arrow.id);
    const bend = (index - (siblings.length - 1) / 2) * 26 + (arrow.tail > arrow.head ? 10 : 0);
    const d = arrow.tail === arrow.head ? loopPath(a) : arrowPath(a, b, bend);
    const dash = arrow.frozen ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<path class="arrow${arrow.frozen ? " frozen" : ""}" data-arrow="${escapeXml(arrow.id)}"` +
        ` d="${d}" fill="none" stroke="currentColor"${dash} marker-end="url(#arrowhead)"/>`,
    );
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    parts.push(
      `<text class="arrow-label" x="${(mx + bend * 0.6).toFixed(1)}" y="${(my - 4).toFixed(1)}">` +
        `${escapeXml(arrow.id)}</text>`,
    );
  }
  for (const vertex of doc.vertices) {
    const p = positions.get(vertex.id);
    if (!p) continue;
    const mutable = diagnostics.mutability[String(vertex.id)] === true;
    const classes = ["vertex", vertex.frozen ? "frozen" : "mutable"];
    if (mutable) classes.push("badge-mutable");
    const common =
      `class="${classes.join(" ")}" data-vertex="${vertex.id}"`;
    if (vertex.frozen) {
      parts.push(
        `<rect ${common} x="${(p.x - VERTEX_R).toFixed(1)}" y="${(p.y - VERTEX_R).toFixed(1)}"` +
          ` width="${2 * VERTEX_R}" height="${2 * VERTEX_R}" fill="white" stroke="currentColor"/>`,
      );
    } else {
      parts.push(
        `<circle ${common} cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${VERTEX_R}"` +
          ` fill="white" stroke="currentColor"/>`,
      );
    }
    parts.push(
      `<text class="vertex-label" data-vertex="${vertex.id}" x="${p.x.toFixed(1)}"` +
        ` y="${(p.y + 4).toFixed(1)}" text-anchor="middle">${vertex.id}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Plain-text potential display: coefficient times concatenated cycle. */
export function renderPotential(doc: IqpDocument): string {
  if (doc.potential.length === 0) return "W = 0";
  const terms = doc.potential.map((t) => {
    const word = t.cycle.join("");
    if (t.coeff === "1") return word;
    if (t.coeff === "-1") return `-${word}`;
    return `${t.coeff}·${word}`;
  });
  return "W = " + terms.join(" + ").replace(/\+ -/g, "− ");
}

export function renderHistory(history: MutationReport[]): string {
  if (history.length === 0) return "<ol class=\"history\"></ol>";
  const items = history
    .map(
      (h, i) =>
        `<li data-step="${i}">μ${h.vertex}` +
        `${h.fz_agreement ? "" : " (FZ mismatch)"}</li>`,
    )
    .join("");
  return `<ol class="history">${items}</ol>`;
}

export function renderDiagnostics(diag: Diagnostics, report?: MutationReport): string {
  const lines: string[] = [];
  lines.push(`<dt>reduced</dt><dd>${diag.is_reduced ? "yes" : "no"}</dd>`);
  lines.push(`<dt>mutable</dt><dd>${diag.mutable_vertices.join(", ") || "none"}</dd>`);
  const cycles = diag.unfrozen_two_cycles.map((pair) => pair.join("/")).join(", ");
  lines.push(`<dt>unfrozen 2-cycles</dt><dd>${escapeXml(cycles || "none")}</dd>`);
  lines.push(`<dt>truncation</dt><dd>${diag.truncation}</dd>`);
  if (report) {
    lines.push(`<dt>fz agreement</dt><dd>${report.fz_agreement ? "yes" : "no"}</dd>`);
    const r = report.rigidity;
    lines.push(
      `<dt>rigidity</dt><dd>${
        r.rigid ? `rigid up to ${r.bound}` : `not rigid (${(r.witness ?? []).join("")})`
      }</dd>`,
    );
  }
  return `<dl class="diagnostics">${lines.join("")}</dl>`;
}

/** One-line summary used by the toast area for server rejections. */
export function renderError(message: string): string {
  return `<div class="toast error">${escapeXml(message)}</div>`;
}

export function renderAll(state: SessionPayload, positions: Map<number, Point>): {
  svg: string;
  potential: string;
  history: string;
  diagnostics: string;
} {
  return {
    svg: renderSvg(state.current, positions, state.diagnostics),
    potential: renderPotential(state.current),
    history: renderHistory(state.history),
    diagnostics: renderDiagnostics(state.diagnostics, state.report),
  };
}
