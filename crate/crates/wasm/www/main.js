import init, { family, chromatic_roots, decompose, bounded_expo_profile } from "./pkg/hyperchrom_wasm.js";

const $ = (id) => document.getElementById(id);
const canvas = $("canvas");
const ctx = canvas.getContext("2d");
const palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

function show(doc) {
  $("output").classList.toggle("error", "error" in doc);
  $("output").textContent = "error" in doc ? doc.error : JSON.stringify(doc, null, 1);
}

function clear() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
}

function call(fn) {
  const doc = JSON.parse(fn($("input").value));
  clear();
  show(doc);
  return "error" in doc ? null : doc;
}

function drawRoots(doc) {
  const cx = canvas.width / 2, cy = canvas.height / 2;
  const view = $("zoom").checked ? Math.max(doc.max_modulus, 1e-9) * 1.25 : Math.max(doc.bound_8etd, 1) * 1.1;
  const scale = (Math.min(cx, cy) - 10) / view;
  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  ctx.moveTo(0, cy); ctx.lineTo(canvas.width, cy);
  ctx.moveTo(cx, 0); ctx.lineTo(cx, canvas.height);
  ctx.stroke();
  for (const [r, color, label] of [[doc.bound_cr, "#2ca02c", "7.04 etD"], [doc.bound_8etd, "#d62728", "8 etD"]]) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.arc(cx, cy, r * scale, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.fillStyle = color;
    ctx.fillText(`${label} = ${r.toFixed(3)}`, 8, label === "8 etD" ? 16 : 30);
  }
  ctx.fillStyle = "#000";
  for (const z of doc.roots) {
    ctx.beginPath();
    ctx.arc(cx + z.re * scale, cy - z.im * scale, 3, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.fillText(`P = ${doc.display}`, 8, canvas.height - 24);
  ctx.fillText(`max |z| = ${doc.max_modulus.toFixed(6)}`, 8, canvas.height - 8);
}

function drawDecomposition(doc) {
  const n = doc.num_vertices;
  const cx = canvas.width / 2, cy = canvas.height / 2, radius = Math.min(cx, cy) - 40;
  const pos = Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [cx + radius * Math.cos(a), cy + radius * Math.sin(a)];
  });
  const pieceOf = new Array(n);
  doc.decomposition.forEach((piece, k) => piece.forEach((v) => (pieceOf[v] = k)));
  ctx.globalAlpha = 0.5;
  for (const edge of doc.edges) {
    const mx = edge.reduce((s, v) => s + pos[v][0], 0) / edge.length;
    const my = edge.reduce((s, v) => s + pos[v][1], 0) / edge.length;
    ctx.strokeStyle = "#555";
    for (const v of edge) {
      ctx.beginPath();
      ctx.moveTo(mx, my);
      ctx.lineTo(pos[v][0], pos[v][1]);
      ctx.stroke();
    }
    ctx.fillStyle = "#555";
    ctx.fillRect(mx - 2, my - 2, 4, 4);
  }
  ctx.globalAlpha = 1;
  pos.forEach(([x, y], v) => {
    ctx.fillStyle = palette[pieceOf[v] % palette.length];
    ctx.beginPath();
    ctx.arc(x, y, 11, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fff";
    ctx.fillText(String(v), x - 3, y + 4);
  });
  ctx.fillStyle = "#000";
  ctx.fillText(doc.partition_connected ? "partition connected" : `${doc.decomposition.length} partition-connected pieces`, 8, 16);
}

function drawProfile(doc) {
  const rows = doc.rows;
  const log = (x) => Math.log10(Math.max(x, 1e-300));
  const values = rows.flatMap((r) => [r.lhs_approx, r.rhs_approx]).filter((x) => x > 0).map(log);
  const lo = Math.min(0, ...values), hi = Math.max(1, ...values);
  const h = canvas.height - 40, w = (canvas.width - 40) / rows.length;
  const y = (x) => 20 + h - ((log(x) - lo) / (hi - lo)) * h;
  rows.forEach((r, i) => {
    const x0 = 30 + i * w;
    ctx.fillStyle = r.ok ? "#1f77b4" : "#d62728";
    if (r.lhs_approx > 0) ctx.fillRect(x0, y(r.lhs_approx), w * 0.4, 20 + h - y(r.lhs_approx));
    ctx.fillStyle = "#bbb";
    if (r.rhs_approx > 0) ctx.fillRect(x0 + w * 0.45, y(r.rhs_approx), w * 0.4, 20 + h - y(r.rhs_approx));
    ctx.fillStyle = "#000";
    ctx.fillText(`s=${r.s}`, x0, canvas.height - 6);
  });
  ctx.fillText("log10 scale: blue = largest sum over v, grey = (etD)^(s-1)", 8, 14);
}

await init();
$("generate").onclick = () => {
  const text = family($("family").value, +$("n").value, +$("t").value, +$("p").value, BigInt($("seed").value));
  const doc = JSON.parse(text);
  if ("error" in doc) show(doc); else $("input").value = text;
};
$("roots").onclick = () => { const d = call(chromatic_roots); if (d) drawRoots(d); };
$("zoom").onchange = () => $("roots").onclick();
$("decompose").onclick = () => { const d = call(decompose); if (d) drawDecomposition(d); };
$("profile").onclick = () => { const d = call(bounded_expo_profile); if (d) drawProfile(d); };
