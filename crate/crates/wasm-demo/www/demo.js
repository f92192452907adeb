import init, { analyze, bootstrap, simulate } from "./pkg/roc_ties_demo.js";

const PRESETS = {
  binary: "value,neg,pos\n0,52,35\n1,32,50\n",
  likert: "value,neg,pos\n1,31,21\n2,21,14\n3,11,17\n4,21,33\n",
  spread: "value,neg,pos\n1,9,2\n2,8,3\n3,7,4\n4,6,5\n5,5,6\n6,4,7\n7,3,8\n8,2,9\n",
};
const STYLE = {
  strict: { color: "#c0392b", dash: "6,4" },
  half_ties: { color: "#1f4e9c", dash: "" },
  optimistic: { color: "#27ae60", dash: "2,3" },
};
const NS = "http://www.w3.org/2000/svg";
const $ = (id) => document.getElementById(id);

function el(name, attrs, parent) {
  const node = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

function text(parent, x, y, str, anchor = "middle") {
  el("text", { x, y, "text-anchor": anchor }, parent).textContent = str;
}

function drawRoc(report) {
  const svg = $("roc");
  svg.replaceChildren();
  const size = 440, pad = 40, span = size - 2 * pad;
  const X = (f) => pad + f * span;
  const Y = (t) => size - pad - t * span;
  el("rect", { x: pad, y: pad, width: span, height: span, fill: "none", stroke: "#999" }, svg);
  el("line", { x1: X(0), y1: Y(0), x2: X(1), y2: Y(1), stroke: "#ccc", "stroke-dasharray": "4,4" }, svg);

  const byConv = Object.fromEntries(report.curves.map((c) => [c.convention, c]));
  // Shade the band between the staircases: the AUC uncertainty due to ties.
  const lower = byConv.strict.points, upper = byConv.optimistic.points;
  const band = [...upper, ...[...lower].reverse()].map((p) => `${X(p.fpr)},${Y(p.tpr)}`).join(" ");
  el("polygon", { points: band, fill: "#f1c40f", "fill-opacity": 0.18, stroke: "none" }, svg);

  for (const conv of ["strict", "optimistic", "half_ties"]) {
    const pts = byConv[conv].points.map((p) => `${X(p.fpr)},${Y(p.tpr)}`).join(" ");
    el("polyline", {
      points: pts, fill: "none", stroke: STYLE[conv].color,
      "stroke-width": conv === "half_ties" ? 2.5 : 2, "stroke-dasharray": STYLE[conv].dash,
    }, svg);
  }
  for (const p of byConv.half_ties.points) {
    el("circle", { cx: X(p.fpr), cy: Y(p.tpr), r: 3, fill: "#1f4e9c" }, svg);
  }
  for (const t of [0, 0.5, 1]) {
    text(svg, X(t), size - pad + 16, t);
    text(svg, pad - 8, Y(t) + 4, t, "end");
  }
  text(svg, size / 2, size - 6, "false positive rate");
  const ylab = el("text", { x: 12, y: size / 2, "text-anchor": "middle", transform: `rotate(-90 12 ${size / 2})` }, svg);
  ylab.textContent = "true positive rate";
}

function showReport(report) {
  const rows = [["convention", "AUC", "exact"]];
  for (const key of ["strict", "half_ties", "optimistic"]) {
    const e = report.auc[key];
    rows.push([key, e.value.toFixed(7), `${e.num}/${e.den}`]);
  }
  const rs = report.reversed_strict;
  rows.push(["strict, labels swapped", rs.value.toFixed(7), `${rs.num}/${rs.den}`]);
  if (report.asymptotic) {
    const a = report.asymptotic;
    rows.push(["asymptotic se (half ties)", a.se.toFixed(5),
      `[${a.ci_lower.toFixed(5)}, ${a.ci_upper.toFixed(5)}]`]);
  }
  rows.push(["tie mass", report.diagnostics.tie_mass.toFixed(7), ""]);
  $("aucs").innerHTML = rows
    .map((r, i) => `<tr>${r.map((c) => (i ? `<td>${c}</td>` : `<th>${c}</th>`)).join("")}</tr>`)
    .join("");
  $("warnings").innerHTML = [...report.diagnostics.warnings, ...report.notes]
    .map((w) => `<p class="warn"><b>${w.code}</b>: ${w.message}</p>`)
    .join("");
}

function refresh() {
  try {
    const report = JSON.parse(analyze($("counts").value));
    $("error").textContent = "";
    showReport(report);
    drawRoc(report);
  } catch (e) {
    $("error").textContent = String(e);
  }
}

function drawHistogram(view) {
  const svg = $("hist");
  svg.replaceChildren();
  const w = 440, h = 180, pad = 24;
  const { lo, hi, counts } = view.histogram;
  const max = Math.max(...counts, 1);
  const bw = (w - 2 * pad) / counts.length;
  const span = hi - lo || 1;
  const X = (v) => pad + ((v - lo) / span) * (w - 2 * pad);
  counts.forEach((c, i) => {
    const bh = (c / max) * (h - 2 * pad);
    el("rect", { x: pad + i * bw, y: h - pad - bh, width: Math.max(bw - 1, 1), height: bh, fill: "#8fa8d6" }, svg);
  });
  const s = view.summary;
  const mark = (v, color) => el("line", { x1: X(v), x2: X(v), y1: pad / 2, y2: h - pad, stroke: color, "stroke-width": 2 }, svg);
  mark(s.ci_percentile.lower, "#c0392b");
  mark(s.ci_percentile.upper, "#c0392b");
  mark(s.observed, "#222");
  text(svg, pad, h - 6, lo.toFixed(3), "start");
  text(svg, w - pad, h - 6, hi.toFixed(3), "end");
}

function runBootstrap() {
  try {
    const view = JSON.parse(bootstrap(
      $("counts").value, $("boot-conv").value, Number($("boot-b").value),
      Number($("boot-seed").value), Number($("boot-level").value)));
    drawHistogram(view);
    const s = view.summary;
    const ci = (c) => `[${c.lower.toFixed(5)}, ${c.upper.toFixed(5)}]`;
    $("boot-out").innerHTML =
      `observed ${s.observed.toFixed(7)}, bias ${s.bias.toFixed(7)}, se ${s.se.toFixed(7)}<br>` +
      `normal ${ci(s.ci_normal)} &middot; percentile ${ci(s.ci_percentile)} &middot; BC ${ci(s.ci_bc)}` +
      (s.redraws ? `<br>${s.redraws} resamples redrawn (a class was missing)` : "");
  } catch (e) {
    $("boot-out").innerHTML = `<span class="err">${e}</span>`;
  }
}

function runSimulation() {
  try {
    const v = JSON.parse(simulate($("counts").value, Number($("mc-n").value), Number($("mc-seed").value)));
    const r = v.result;
    $("mc-out").innerHTML =
      `strict: ${r.auc_definition.toFixed(6)} (exact ${v.exact_strict.toFixed(6)})<br>` +
      `half ties: ${r.auc_wties.toFixed(6)} (exact ${v.exact_half_ties.toFixed(6)})<br>` +
      `${r.greater} wins, ${r.ties} ties in ${r.n_draws} draws`;
  } catch (e) {
    $("mc-out").innerHTML = `<span class="err">${e}</span>`;
  }
}

await init();
$("counts").value = PRESETS.binary;
$("counts").addEventListener("input", refresh);
for (const b of document.querySelectorAll("[data-preset]")) {
  b.addEventListener("click", () => {
    $("counts").value = PRESETS[b.dataset.preset];
    refresh();
  });
}
$("boot-run").addEventListener("click", runBootstrap);
$("mc-run").addEventListener("click", runSimulation);
refresh();
