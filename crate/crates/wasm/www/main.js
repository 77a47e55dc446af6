import init, { bracket, bvwg_explore, decompose } from "./pkg/poissonlie_wasm.js";

const heisenberg = {
  name: "heisenberg",
  lie: { dim: 3, basis: ["x", "y", "z"], brackets: [{ i: 0, j: 1, coeffs: { "2": "1" } }] },
};

const eng4 = {
  name: "eng4",
  lie: {
    dim: 4,
    basis: ["e1", "e2", "e3", "e4"],
    brackets: [
      { i: 0, j: 1, coeffs: { "2": "1" } },
      { i: 0, j: 2, coeffs: { "3": "1" } },
    ],
  },
};

const bvwg = {
  name: "weyl-with-group",
  bvwg: { v_names: ["v1", "v2"], omega: [[0, 1], [-1, 0]], g_names: ["g1", "g2"], weights: [[1, 0], [0, 1]] },
};

const $ = (id) => document.getElementById(id);
const STATUS = ["ok", "negative", "input error", "search exhausted"];

function show(el, response) {
  el.textContent = JSON.stringify(response.report, null, 2);
}

function plot(canvas, counts, exponent) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const pts = counts.map(([d, c]) => [Math.log(d), Math.log(c)]);
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const pad = 40;
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  ctx.fillText("log d", w - pad - 24, h - pad + 16);
  ctx.fillText("log #monomials", pad + 4, pad - 8);
  ctx.fillText(`slope near d = 40: ${exponent}`, pad + 8, pad + 12);
  ctx.strokeStyle = "#1f5fa8";
  ctx.beginPath();
  pts.forEach(([x, y], k) => (k ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
  ctx.stroke();
  ctx.fillStyle = "#1f5fa8";
  for (const [x, y] of pts) {
    ctx.beginPath();
    ctx.arc(sx(x), sy(y), 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function run(fn) {
  try {
    return JSON.parse(fn());
  } catch (e) {
    return { status: 2, report: { error: String(e) } };
  }
}

await init();

$("br-problem").value = JSON.stringify(heisenberg, null, 2);
$("bv-problem").value = JSON.stringify(bvwg, null, 2);
$("de-problem").value = JSON.stringify(eng4, null, 2);

$("br-run").onclick = () => {
  const r = run(() => bracket($("br-problem").value, $("br-p").value, $("br-q").value));
  $("br-out").textContent = r.status === 0 ? r.report.bracket : JSON.stringify(r.report, null, 2);
};

$("bv-run").onclick = () => {
  const r = run(() => bvwg_explore($("bv-problem").value));
  $("bv-status").textContent = STATUS[r.status] + (r.summary ? `: ${r.summary}` : "");
  show($("bv-out"), r);
  if (r.report.growth) plot($("bv-plot"), r.report.growth.counts, r.report.growth.exponent);
};

$("de-run").onclick = () => {
  const r = run(() => decompose($("de-problem").value, Number($("de-degree").value)));
  $("de-status").textContent = STATUS[r.status] + (r.summary ? `: ${r.summary}` : "");
  show($("de-out"), r);
};
