import { describe, expect, it } from "vitest";

import { DEFAULT_LAYOUT, layout, mulberry32 } from "../src/layout.js";
import {
  renderDiagnostics,
  renderError,
  renderHistory,
  renderPotential,
  renderSvg,
} from "../src/render.js";
import type { SessionPayload } from "../src/types.js";
import { fixture } from "./fake_server.js";

const initial = fixture<SessionPayload>("state.initial.json");
const mutated = fixture<SessionPayload>("state.remutated.json");

describe("layout", () => {
  it("is deterministic for a fixed seed", () => {
    const a = layout(initial.current, DEFAULT_LAYOUT);
    const b = layout(initial.current, DEFAULT_LAYOUT);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it("pins frozen vertices on the boundary ring", () => {
    const { width, height } = DEFAULT_LAYOUT;
    const ring = Math.min(width, height) / 2 - 40;
    const positions = layout(initial.current, DEFAULT_LAYOUT);
    for (const vertex of initial.current.vertices) {
      const p = positions.get(vertex.id)!;
      const r = Math.hypot(p.x - width / 2, p.y - height / 2);
      if (vertex.frozen) {
        expect(Math.abs(r - ring)).toBeLessThan(1e-9);
      } else {
        expect(r).toBeLessThan(ring - 1);
      }
    }
  });

  it("mulberry32 streams are reproducible", () => {
    const a = mulberry32(42);
    const b = mulberry32(42);
    for (let i = 0; i < 5; i++) expect(a()).toBe(b());
  });
});

describe("renderSvg", () => {
  const positions = layout(initial.current, DEFAULT_LAYOUT);
  const svg = renderSvg(initial.current, positions, initial.diagnostics);

  it("boxes frozen vertices and circles mutable ones", () => {
    expect(svg).toContain('<rect class="vertex frozen" data-vertex="1"');
    expect(svg).toContain('<rect class="vertex frozen" data-vertex="3"');
    expect(svg).toContain('<circle class="vertex mutable badge-mutable" data-vertex="2"');
  });

  it("dashes exactly the frozen arrows", () => {
    const dashed = svg.match(/stroke-dasharray/g) ?? [];
    expect(dashed.length).toBe(1); // a3 is the only frozen arrow
    expect(svg).toContain('data-arrow="a3"');
  });

  it("marks only mutable vertices with the badge class", () => {
    expect(svg.match(/badge-mutable/g)?.length).toBe(1);
  });

  it("renders the mutated quiver with the composite frozen arrow dashed", () => {
    const pos = layout(mutated.current, DEFAULT_LAYOUT);
    const out = renderSvg(mutated.current, pos, mutated.diagnostics);
    expect(out).toContain('data-arrow="[a2,a1]"');
    const frozenArrow = out.split("<path").find((chunk) => chunk.includes("[a2,a1]"));
    expect(frozenArrow).toContain("stroke-dasharray");
  });
});

describe("panel renderers", () => {
  it("renders the potential as coefficient times word", () => {
    expect(renderPotential(initial.current)).toBe("W = a1a3a2");
    expect(renderPotential(mutated.current)).toBe("W = [a2,a1]a1*a2*");
    expect(renderPotential({ vertices: [], arrows: [], potential: [] })).toBe("W = 0");
  });

  it("renders history entries as mutation steps", () => {
    expect(renderHistory([])).toBe('<ol class="history"></ol>');
    const html = renderHistory(mutated.history);
    expect(html).toContain("μ2");
  });

  it("renders diagnostics including rigidity from the step report", () => {
    const html = renderDiagnostics(mutated.diagnostics, mutated.report);
    expect(html).toContain("<dt>reduced</dt><dd>yes</dd>");
    expect(html).toContain("rigid up to 8");
    expect(html).toContain("<dt>fz agreement</dt><dd>yes</dd>");
  });

  it("escapes error text", () => {
    expect(renderError("<oops>")).toContain("&lt;oops&gt;");
  });
});

describe("imported dimer document", () => {
  const dimer = fixture<SessionPayload>("state.dimer.json");

  it("renders seven faces with five boxed and five dashed arrows", () => {
    const positions = layout(dimer.current, DEFAULT_LAYOUT);
    const svg = renderSvg(dimer.current, positions, dimer.diagnostics);
    expect(svg.match(/<rect class="vertex frozen"/g)?.length).toBe(5);
    expect(svg.match(/<circle class="vertex/g)?.length).toBe(2);
    expect(svg.match(/stroke-dasharray/g)?.length).toBe(5);
  });
});

describe("empty document", () => {
  it("renders an empty canvas with no badges", () => {
    const doc = { vertices: [], arrows: [], potential: [] };
    const diagnostics = {
      mutable_vertices: [],
      mutability: {},
      unfrozen_two_cycles: [],
      is_reduced: true,
      truncation: 4,
    };
    const svg = renderSvg(doc, layout(doc, DEFAULT_LAYOUT), diagnostics);
    expect(svg).not.toContain("<circle");
    expect(svg).not.toContain("<rect");
    expect(svg).not.toContain("badge-mutable");
  });
});
