import init, {
  coverage_grid,
  coverage_distribution,
  estimate_netlist,
  estimate_random,
} from "./pkg/qlatency_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function heat(t) {
  // white -> dark blue
  const c = Math.round(255 * (1 - t));
  return `rgb(${c},${Math.round(c * 0.9 + 20 * t)},${Math.round(255 - 120 * t)})`;
}

function drawGrid() {
  const g = JSON.parse(coverage_grid(num("cg-a"), num("cg-b"), num("cg-area")));
  const info = $("cg-info");
  const ctx = $("cg-canvas").getContext("2d");
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  if (g.error) {
    info.textContent = g.error;
    info.className = "err";
    return;
  }
  const max = Math.max(...g.cells);
  info.className = "";
  info.textContent = `side ${g.side}${g.clamped ? " (clamped)" : ""}, max P = ${max.toFixed(4)}`;
  const w = ctx.canvas.width / g.width;
  const h = ctx.canvas.height / g.length;
  for (let x = 0; x < g.width; x++) {
    for (let y = 0; y < g.length; y++) {
      ctx.fillStyle = heat(g.cells[x * g.length + y] / max);
      ctx.fillRect(x * w, y * h, Math.ceil(w), Math.ceil(h));
    }
  }
}

function drawDistribution() {
  const levels = JSON.parse(
    coverage_distribution(num("cg-a"), num("cg-b"), num("cg-area"), num("cd-q"), num("cd-qmax"), num("cd-cap")),
  );
  const ctx = $("cd-canvas").getContext("2d");
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  if (levels.error) return;
  const pad = 24;
  const bw = (width - 2 * pad) / levels.length;
  const maxE = Math.max(...levels.map((l) => l.expected_area));
  const maxD = Math.max(...levels.map((l) => l.delay), 1);
  ctx.font = "10px sans-serif";
  levels.forEach((l, i) => {
    const bh = (l.expected_area / maxE) * (height - 2 * pad);
    ctx.fillStyle = "#4a78c2";
    ctx.fillRect(pad + i * bw + 1, height - pad - bh, bw - 2, bh);
    ctx.fillStyle = "#333";
    ctx.fillText(String(l.q), pad + i * bw + bw / 2 - 3, height - pad + 12);
  });
  ctx.strokeStyle = "#d0542c";
  ctx.beginPath();
  levels.forEach((l, i) => {
    const px = pad + i * bw + bw / 2;
    const py = height - pad - (l.delay / maxD) * (height - 2 * pad);
    if (i === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  });
  ctx.stroke();
}

function plotCurve(curve, current) {
  const ctx = $("le-canvas").getContext("2d");
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  if (!curve.length) return;
  const pad = 36;
  const xs = curve.map((p) => Math.log10(p[0]));
  const ys = curve.map((p) => p[1] * 1e-6);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (width - 2 * pad);
  const sy = (y) => height - pad - ((y - y0) / (y1 - y0 || 1)) * (height - 2 * pad);
  ctx.strokeStyle = "#4a78c2";
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.font = "10px sans-serif";
  ctx.fillText(`${y1.toExponential(3)} s`, 2, pad - 4);
  ctx.fillText(`${y0.toExponential(3)} s`, 2, height - pad + 12);
  ctx.fillText("log10 v (ULB/us)", width / 2 - 40, height - 6);
  if (current > 0) {
    ctx.strokeStyle = "#d0542c";
    const cx = sx(Math.log10(current));
    ctx.beginPath();
    ctx.moveTo(cx, pad);
    ctx.lineTo(cx, height - pad);
    ctx.stroke();
  }
}

function showEstimate(json) {
  const v = JSON.parse(json);
  const out = $("le-out");
  if (v.error) {
    out.textContent = v.error;
    out.className = "err";
    plotCurve([], 0);
    return;
  }
  const r = v.result;
  out.className = "";
  out.textContent = [
    `qubits ${r.qubit_count}, operations ${r.operation_count}, QODG ${r.qodg_nodes} nodes / ${r.qodg_edges} edges`,
    `B = ${r.average_zone_area ?? "-"}, d_uncong = ${r.d_uncong.toFixed(3)} us`,
    `L_CNOT avg = ${r.l_cnot_avg.toFixed(3)} us, L_g avg = ${r.l_g_avg} us`,
    `critical path: ${r.critical.cnot} CNOT, ${JSON.stringify(r.critical.one_qubit)}`,
    `D = ${r.latency_us.toFixed(1)} us = ${r.latency_s.toExponential(3)} s`,
  ].join("\n");
  plotCurve(v.speed_curve, num("le-v"));
}

function fabricArgs() {
  return [num("le-a"), num("le-b"), num("le-cap"), num("le-v")];
}

await init();
for (const id of ["cg-a", "cg-b", "cg-area"]) {
  $(id).addEventListener("input", () => {
    drawGrid();
    drawDistribution();
  });
}
for (const id of ["cd-q", "cd-qmax", "cd-cap"]) $(id).addEventListener("input", drawDistribution);
$("le-netlist").addEventListener("click", () => showEstimate(estimate_netlist($("le-text").value, ...fabricArgs())));
$("le-random").addEventListener("click", () =>
  showEstimate(estimate_random(num("le-q"), num("le-ops"), num("le-frac"), num("le-seed"), ...fabricArgs())),
);
drawGrid();
drawDistribution();
$("le-netlist").click();
