import init, { diagonal_table, series_grid, asymptotic_curve } from "./pkg/bicensus_wasm.js";

const status = document.getElementById("status");

function cell(tag, text) {
  const el = document.createElement(tag);
  el.textContent = text;
  return el;
}

function table(headers, rows) {
  const t = document.createElement("table");
  const head = t.insertRow();
  headers.forEach((h) => head.appendChild(cell("th", h)));
  rows.forEach((r) => {
    const tr = t.insertRow();
    r.forEach((v) => tr.appendChild(cell("td", v)));
  });
  return t;
}

function show(target, node) {
  const out = document.getElementById(target);
  out.replaceChildren(node);
}

function fail(target, err) {
  show(target, cell("p", String(err)));
  document.getElementById(target).firstChild.className = "error";
}

function timed(target, f) {
  const t0 = performance.now();
  try {
    f();
    status.textContent = `computed in ${(performance.now() - t0).toFixed(0)} ms`;
  } catch (e) {
    fail(target, e);
  }
}

function onSubmit(id, handler) {
  document.getElementById(id).addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler(new FormData(ev.target));
  });
}

function renderDiagonal(form) {
  timed("diag-out", () => {
    const rows = JSON.parse(diagonal_table(Number(form.get("k")), Number(form.get("max_n"))));
    show("diag-out", table(
      ["n", "bipartite", "complete", "ratio"],
      rows.map((r) => [
        r.n,
        r.bipartite,
        r.complete ?? "",
        r.complete && r.complete !== "0" ? (Number(r.bipartite) / Number(r.complete)).toFixed(6) : "",
      ]),
    ));
  });
}

function renderGrid(form) {
  timed("grid-out", () => {
    const g = JSON.parse(series_grid(Number(form.get("k")), Number(form.get("order"))));
    const top = Math.max(1, ...g.log10.flat());
    const t = table(["r \\ s", ...g.counts[0].map((_, s) => s)], g.counts.map((row, r) => [r, ...row]));
    t.className = "grid";
    [...t.rows].slice(1).forEach((tr, r) => {
      [...tr.cells].slice(1).forEach((td, s) => {
        const v = g.log10[r][s] / top;
        td.style.background = v > 0 ? `hsl(210, 70%, ${95 - 55 * v}%)` : "";
        td.style.color = v > 0.6 ? "#fff" : "";
        td.title = `N_bi(${r}, ${s}, ${g.k}) = ${g.counts[r][s]}`;
      });
    });
    show("grid-out", t);
  });
}

function renderCurve(form) {
  timed("curve-out", () => {
    const pts = JSON.parse(asymptotic_curve(Number(form.get("k")), Number(form.get("max_n")), Number(form.get("step"))));
    const canvas = document.getElementById("curve");
    const ctx = canvas.getContext("2d");
    const pad = 40;
    const w = canvas.width - 2 * pad;
    const h = canvas.height - 2 * pad;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (pts.length === 0) {
      show("curve-out", cell("p", "no sizes in range"));
      return;
    }
    const nMax = pts[pts.length - 1].n;
    const nMin = pts[0].n;
    const yMax = Math.max(1.05, ...pts.map((p) => p.ratio));
    const x = (n) => pad + (w * (n - nMin)) / Math.max(1, nMax - nMin);
    const y = (v) => pad + h - (h * v) / yMax;
    ctx.strokeStyle = "#999";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, y(1));
    ctx.lineTo(pad + w, y(1));
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.strokeStyle = "#1565c0";
    ctx.beginPath();
    pts.forEach((p, i) => (i === 0 ? ctx.moveTo(x(p.n), y(p.ratio)) : ctx.lineTo(x(p.n), y(p.ratio))));
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText(`n = ${nMin}`, pad, canvas.height - 12);
    ctx.fillText(`n = ${nMax}`, pad + w - 40, canvas.height - 12);
    ctx.fillText("1", 8, y(1) + 4);
    const last = pts[pts.length - 1];
    show("curve-out", cell("p", `ratio at n = ${last.n}: ${last.ratio.toFixed(8)} (prediction ${last.predicted})`));
  });
}

await init();
onSubmit("diag-form", renderDiagonal);
onSubmit("grid-form", renderGrid);
onSubmit("curve-form", renderCurve);
status.textContent = "ready";
