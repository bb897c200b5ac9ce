/** Render a SessionView; the text form doubles as the snapshot format
 * in tests, the HTML form feeds the browser page. */

import { SessionView } from "./session.js";

export function renderText(view: SessionView): string {
  const lines: string[] = [];
  lines.push(`connection: ${view.connection}${view.halted ? " (halted)" : ""}`);
  lines.push("== questions ==");
  for (const card of view.pending) {
    lines.push(`? ${card.atom} [${card.status}]`);
  }
  lines.push("== frontier ==");
  for (const row of view.frontier) {
    lines.push(
      `#${row.seq} ${row.value} {${row.assumptions.join(", ")}} ${row.status}`,
    );
  }
  lines.push("== explanations ==");
  for (const r of view.results) {
    lines.push(`${r.value} (posterior ${r.posterior}) {${r.assumptions.join(", ")}}`);
  }
  if (view.exhausted) lines.push("-- no further explanations --");
  lines.push("== timeline ==");
  for (const t of view.timeline) {
    lines.push(`[${t.kind}] ${t.text}`);
  }
  return lines.join("\n");
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderHtml(view: SessionView): string {
  const questions = view.pending
    .map(
      (c) => `
      <div class="card" data-atom="${esc(c.atom)}">
        <span class="atom">${esc(c.atom)}</span>
        <button data-choice="yes">yes</button>
        <button data-choice="no">no</button>
        <button data-choice="unknown">unknown</button>
        ${c.status === "failed" ? '<button data-choice="retry">retry</button>' : ""}
      </div>`,
    )
    .join("");
  const frontier = view.frontier
    .map(
      (row) => `
      <tr><td>${row.seq}</td><td>${esc(row.value)}</td>
      <td>${esc(row.assumptions.join(", "))}</td><td>${esc(row.status)}</td></tr>`,
    )
    .join("");
  const results = view.results
    .map(
      (r) => `
      <tr><td>${esc(r.value)}</td><td>${esc(r.posterior)}</td>
      <td>${esc(r.assumptions.join(", "))}</td></tr>`,
    )
    .join("");
  const timeline = view.timeline
    .map((t) => `<li class="${t.kind}">[${t.kind}] ${esc(t.text)}</li>`)
    .join("");
  const banner =
    view.connection === "closed"
      ? '<div class="banner">connection lost — read-only</div>'
      : view.exhausted
        ? '<div class="banner">no further explanations</div>'
        : "";
  const injectDisabled = view.exhausted || view.halted ? "disabled" : "";
  return `
  ${banner}
  <section id="questions"><h2>Questions</h2>${questions || "<p>none pending</p>"}</section>
  <section id="frontier"><h2>Frontier</h2>
    <table><tr><th>#</th><th>value</th><th>assumptions</th><th>status</th></tr>${frontier}</table>
  </section>
  <section id="results"><h2>Explanations</h2>
    <table><tr><th>value</th><th>posterior</th><th>assumptions</th></tr>${results}</table>
  </section>
  <section id="inject"><h2>Observe</h2>
    <input id="obs" placeholder="atom, e.g. fever(john)" ${injectDisabled}/>
    <button id="obs-send" ${injectDisabled}>inject</button>
    <span id="obs-error"></span>
  </section>
  <section id="timeline"><h2>Timeline</h2><ul>${timeline}</ul></section>`;
}
