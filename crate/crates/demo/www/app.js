import init, { seriesTable, characteristic, abelCurve } from "./pkg/color_euler_demo.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"];

function renderTable(t) {
  const head = "<tr><th>n</th>" + t.elements.map((e) => `<th>${e}</th>`).join("") + "</tr>";
  const rows = t.rows.map((r, n) => `<tr><td>${n}</td>` + r.map((c) => `<td>${c}</td>`).join("") + "</tr>");
  $("table").innerHTML = head + rows.join("");
}

function renderChi(c) {
  if (c.status === "exists") $("chi").textContent = `χ = ${c.pretty}`;
  else if (c.status === "diverges") $("chi").textContent = `no limit; diverges in degrees ${c.witnesses.join(", ")}`;
  else $("chi").textContent = JSON.stringify(c);
}

// x axis: log2 of the offset δ, so the dyadic schedule is evenly spaced.
function renderCurve(c) {
  const svg = $("curve");
  const W = svg.width.baseVal.value, H = svg.height.baseVal.value, pad = 36;
  const xs = c.offsets_numeric.map(Math.log2);
  const series = Object.entries(c.values_numeric);
  const ys = series.flatMap(([, v]) => v).map((y) => Math.max(-50, Math.min(50, y)));
  const [x0, x1] = [Math.max(...xs), Math.min(...xs)];
  let [y0, y1] = [Math.min(0, ...ys), Math.max(0, ...ys)];
  if (y1 - y0 < 1e-9) { y0 -= 1; y1 += 1; }
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (W - 2 * pad);
  const py = (y) => H - pad - ((Math.max(-50, Math.min(50, y)) - y0) / (y1 - y0)) * (H - 2 * pad);
  let out = `<line x1="${pad}" x2="${W - pad}" y1="${py(0)}" y2="${py(0)}" stroke="#aaa"/>`;
  out += `<text x="${pad}" y="${H - 8}" font-size="11">δ = 2^${x0}</text>`;
  out += `<text x="${W - pad - 60}" y="${H - 8}" font-size="11">δ = 2^${x1}</text>`;
  series.forEach(([el, vals], i) => {
    const pts = vals.map((y, k) => `${px(xs[k])},${py(y)}`).join(" ");
    const col = COLORS[i % COLORS.length];
    out += `<polyline fill="none" stroke="${col}" stroke-width="1.5" points="${pts}"/>`;
    out += `<text x="${W - pad + 4}" y="${py(vals[vals.length - 1])}" font-size="11" fill="${col}">${el}</text>`;
  });
  svg.innerHTML = out;
}

function run() {
  $("error").textContent = "";
  const spec = $("spec").value, variant = $("variant").value;
  try {
    renderChi(JSON.parse(characteristic(spec, variant)));
    renderCurve(JSON.parse(abelCurve(spec, variant)));
    renderTable(JSON.parse(seriesTable(spec, variant, Number($("order").value))));
  } catch (e) {
    $("error").textContent = String(e);
  }
}

await init();
$("spec").value = $("preset").value;
$("preset").addEventListener("change", () => { $("spec").value = $("preset").value; run(); });
$("variant").addEventListener("change", run);
$("run").addEventListener("click", run);
run();
