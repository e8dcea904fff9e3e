import init, { asymptoticCurves, pasturCurve, finiteNComparison } from "./pkg/rho_ensembles_web.js";

const PAD = { left: 48, right: 12, top: 12, bottom: 30 };

function frame(canvas, xmax, ymax) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width - PAD.left - PAD.right;
  const h = canvas.height - PAD.top - PAD.bottom;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#444";
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui, sans-serif";
  ctx.beginPath();
  ctx.moveTo(PAD.left, PAD.top);
  ctx.lineTo(PAD.left, PAD.top + h);
  ctx.lineTo(PAD.left + w, PAD.top + h);
  ctx.stroke();
  for (let i = 0; i <= 5; i++) {
    const xv = (xmax * i) / 5;
    const yv = (ymax * i) / 5;
    ctx.fillText(xv.toPrecision(3), PAD.left + (w * i) / 5 - 10, PAD.top + h + 18);
    ctx.fillText(yv.toPrecision(2), 4, PAD.top + h - (h * i) / 5 + 4);
  }
  return {
    ctx,
    x: (v) => PAD.left + (w * v) / xmax,
    y: (v) => PAD.top + h - (h * Math.min(v, ymax)) / ymax,
  };
}

// `data` is interleaved with `stride` values per row; plots column `col` against column 0.
function line(f, data, stride, col, color, width = 2) {
  f.ctx.strokeStyle = color;
  f.ctx.lineWidth = width;
  f.ctx.beginPath();
  for (let i = 0; i < data.length; i += stride) {
    const px = f.x(data[i]);
    const py = f.y(data[i + col]);
    if (i === 0) f.ctx.moveTo(px, py);
    else f.ctx.lineTo(px, py);
  }
  f.ctx.stroke();
  f.ctx.lineWidth = 1;
}

function drawAsymptotic() {
  const data = asymptoticCurves(800);
  const f = frame(document.getElementById("asym"), 5.4, 1.2);
  line(f, data, 3, 1, "#1f77b4");
  line(f, data, 3, 2, "#d62728");
}

const references = {};

function drawPastur() {
  const alpha = Number(document.getElementById("alpha").value);
  document.getElementById("alpha-value").textContent = alpha.toFixed(2);
  const edge = Math.pow(1 + alpha, (1 + alpha) / alpha);
  document.getElementById("edge").textContent = edge.toFixed(4);
  references.hs ??= pasturCurve(1, 400);
  references.b ??= pasturCurve(2, 400);
  const data = pasturCurve(alpha, 400);
  const f = frame(document.getElementById("pastur"), 8.5, 1.2);
  line(f, references.hs, 2, 1, "#bbb", 1.5);
  line(f, references.b, 2, 1, "#bbb", 1.5);
  line(f, data, 2, 1, "#2ca02c");
}

function drawFinite() {
  const get = (id) => Number(document.getElementById(id).value);
  const info = document.getElementById("finite-info");
  info.classList.remove("error");
  let c;
  try {
    c = finiteNComparison(get("n"), get("k"), get("samples"), get("bins"), get("seed"));
  } catch (e) {
    info.textContent = String(e.message ?? e);
    info.classList.add("error");
    return;
  }
  const edges = c.edges;
  const hist = c.histogram;
  const curve = c.curve;
  let ymax = 0;
  for (const v of hist) ymax = Math.max(ymax, v);
  for (let i = 1; i < curve.length; i += 2) ymax = Math.max(ymax, curve[i]);
  const f = frame(document.getElementById("finite"), edges[edges.length - 1], ymax * 1.1);
  f.ctx.fillStyle = "rgba(31,119,180,0.35)";
  for (let i = 0; i < hist.length; i++) {
    const x0 = f.x(edges[i]);
    const x1 = f.x(edges[i + 1]);
    const y = f.y(hist[i]);
    f.ctx.fillRect(x0, y, x1 - x0, f.y(0) - y);
  }
  line(f, curve, 2, 1, "#d62728");
  info.textContent = `Histogram of all eigenvalues λ (bars) and the exact one-eigenvalue density (line). ` +
    `L1 distance ${c.l1.toFixed(4)}.`;
  c.free();
}

async function main() {
  const status = document.getElementById("status");
  try {
    await init();
  } catch (e) {
    status.textContent = "Could not load the WebAssembly module: " + e;
    status.classList.add("error");
    return;
  }
  status.textContent = "";
  drawAsymptotic();
  drawPastur();
  drawFinite();
  document.getElementById("alpha").addEventListener("input", drawPastur);
  document.getElementById("run").addEventListener("click", drawFinite);
}

main();
