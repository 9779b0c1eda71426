import init, { quad_field, theta_valuation, sweep } from "./pkg/eistwist_web.js";

const $ = (id) => document.getElementById(id);
const level = () => [Number($("n").value), Number($("p").value)];

function show(out, f) {
  out.classList.remove("err");
  try {
    const v = JSON.parse(f());
    out.textContent = JSON.stringify(v, null, 2);
    return v;
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
    return null;
  }
}

function valuationNumber(s) {
  return s.startsWith(">=") ? Number(s.slice(2)) : Number(s);
}

function plot(rows) {
  const c = $("plot");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  if (rows.length === 0) return;
  const pad = 30;
  const ds = rows.map((r) => r.D);
  const lo = Math.min(...ds), hi = Math.max(...ds);
  const vmax = Math.max(4, ...rows.map((r) => valuationNumber(r.eis_valuation)));
  const x = (d) => pad + ((d - lo) / Math.max(1, hi - lo)) * (c.width - 2 * pad);
  const y = (v) => c.height - pad - (v / vmax) * (c.height - 2 * pad);
  g.strokeStyle = "#999";
  g.fillStyle = "#333";
  g.font = "12px sans-serif";
  for (let v = 0; v <= vmax; v++) {
    g.beginPath();
    g.moveTo(pad, y(v));
    g.lineTo(c.width - pad, y(v));
    g.stroke();
    g.fillText(String(v), 8, y(v) + 4);
  }
  g.fillText(String(lo), pad, c.height - 8);
  g.fillText(String(hi), c.width - pad - 30, c.height - 8);
  for (const r of rows) {
    const px = x(r.D), py = y(valuationNumber(r.eis_valuation));
    if (!r.consistent) {
      g.strokeStyle = "#000";
      g.beginPath();
      g.moveTo(px - 4, py - 4); g.lineTo(px + 4, py + 4);
      g.moveTo(px + 4, py - 4); g.lineTo(px - 4, py + 4);
      g.stroke();
      continue;
    }
    g.fillStyle = r.criterion ? "#d62728" : "#1f77b4";
    g.beginPath();
    g.arc(px, py, 3, 0, 2 * Math.PI);
    g.fill();
  }
}

await init();

$("qbtn").onclick = () => show($("qout"), () => quad_field(...level(), Number($("qd").value)));
$("tbtn").onclick = () => show($("tout"), () => theta_valuation(...level(), Number($("td").value)));
$("sbtn").onclick = () => {
  const rep = show($("sout"), () => sweep(...level(), Number($("smin").value), Number($("smax").value)));
  if (rep) {
    const s = rep.summary;
    $("ssum").textContent = `${s.total} rows, ${s.passed} consistent, ${s.failed} failed`;
    plot(rep.rows);
  } else {
    $("ssum").textContent = "";
    plot([]);
  }
};
