import init, { analyze, compare, query, library, sample } from "./pkg/mathml_tools_demo.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function svgEl(name, attrs, text) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

// Horizontal bars; `series` is a list of [label, histogram pairs, colour].
function drawBars(svg, series) {
  svg.replaceChildren();
  const names = [...new Set(series.flatMap(([, h]) => (h || []).map(([n]) => n)))].sort();
  const max = Math.max(1, ...series.flatMap(([, h]) => (h || []).map(([, c]) => c)));
  const barH = 12, gap = 6, left = 110, width = 260;
  const rowH = series.length * barH + gap;
  names.forEach((name, i) => {
    const y = i * rowH;
    svg.append(svgEl("text", { x: 0, y: y + barH }, name));
    series.forEach(([label, h, colour], j) => {
      const count = (h || []).find(([n]) => n === name)?.[1] ?? 0;
      const w = (count / max) * width;
      svg.append(svgEl("rect", { x: left, y: y + j * barH, width: w, height: barH - 2, fill: colour }));
      svg.append(svgEl("text", { x: left + w + 4, y: y + j * barH + barH - 3 }, `${count}`));
    });
  });
  svg.setAttribute("height", Math.max(10, names.length * rowH));
}

function renderTree(node, byId) {
  const div = document.createElement("div");
  const span = document.createElement("span");
  span.className = "el" + (node.branch === "presentation" ? " p" : node.branch === "content" ? " c" : "");
  let label = `<${node.name}>`;
  if (node.id) label += ` #${node.id}`;
  if (node.text) label += ` "${node.text}"`;
  if (node.branch) label += `  [${node.branch} root]`;
  span.textContent = label;
  if (node.id) byId.set(node.id, span);
  if (node.xref) {
    span.addEventListener("mouseenter", () => { span.classList.add("hot"); byId.get(node.xref)?.classList.add("hot"); });
    span.addEventListener("mouseleave", () => { span.classList.remove("hot"); byId.get(node.xref)?.classList.remove("hot"); });
  }
  div.append(span);
  for (const child of node.children) div.append(renderTree(child, byId));
  return div;
}

function runAnalyze() {
  const r = JSON.parse(analyze($("an-input").value, $("an-lenient").checked));
  $("an-error").textContent = r.ok ? "" : r.error;
  if (!r.ok) return;
  const rows = [
    ["presentation root", r.presentation ?? "none"],
    ["content root", r.content ?? "none"],
    ["TeX", r.tex ?? "none"],
    ["xref pairs", r.xrefPairs.map(([a, b]) => `${a} ↔ ${b}`).join(", ") || "none"],
    ["repairs", r.repairs.map((x) => `${x.kind} @${x.offset}`).join(", ") || "none"],
    ["dangling xrefs", r.dangling.join(", ") || "none"],
  ];
  $("an-summary").replaceChildren(...rows.map(([k, v]) => {
    const tr = document.createElement("tr");
    tr.append(Object.assign(document.createElement("th"), { textContent: k }));
    tr.append(Object.assign(document.createElement("td"), { textContent: v }));
    return tr;
  }));
  const hist = r.histograms[$("an-scope").value];
  drawBars($("an-hist"), [["count", hist, "#4a7bd0"]]);
  $("an-tree").replaceChildren(renderTree(r.tree, new Map()));
  runQuery();
}

function runCompare() {
  const cost = (id) => Number($(id).value);
  const r = JSON.parse(compare($("cmp-a").value, $("cmp-b").value, $("cmp-scope").value,
    $("cmp-lenient").checked, cost("cost-ins"), cost("cost-del"), cost("cost-ren")));
  $("cmp-error").textContent = r.ok ? "" : r.error;
  if (!r.ok) return;
  const fmt = (x) => (x === null ? "n/a" : Number(x.toPrecision(10)).toString());
  const rows = [
    ["absolute histogram distance", r.histAbs],
    ["relative histogram distance", r.histRel],
    ["earth mover's distance", r.emd],
    ["cosine similarity", r.cosine],
    ["tree edit distance", r.ted],
  ];
  $("cmp-table").replaceChildren(...rows.map(([k, v]) => {
    const tr = document.createElement("tr");
    tr.append(Object.assign(document.createElement("th"), { textContent: k }));
    tr.append(Object.assign(document.createElement("td"), { className: "num", textContent: fmt(v) }));
    return tr;
  }));
  drawBars($("cmp-hist"), [["left", r.left, "#4a7bd0"], ["right", r.right, "#e08a2c"]]);
}

function runQuery() {
  const r = JSON.parse(query($("an-input").value, $("q-expr").value, $("an-lenient").checked));
  $("q-error").textContent = r.ok ? "" : r.error;
  $("q-out").textContent = r.ok
    ? (r.matches.map((m) => `[${m.node}] ${m.markup}`).join("\n") || "no matches")
    : "";
}

await init();

$("an-input").value = sample("frac");
$("cmp-a").value = sample("frac");
$("cmp-b").value = sample("x-plus-x");
for (const entry of JSON.parse(library())) {
  $("q-lib").append(new Option(`${entry.name}: ${entry.expr}`, entry.expr));
}

document.querySelectorAll("[data-sample]").forEach((b) =>
  b.addEventListener("click", () => { $("an-input").value = sample(b.dataset.sample); runAnalyze(); }));
for (const id of ["an-input", "an-lenient", "an-scope"]) $(id).addEventListener("input", runAnalyze);
for (const id of ["cmp-a", "cmp-b", "cmp-scope", "cost-ins", "cost-del", "cost-ren", "cmp-lenient"]) {
  $(id).addEventListener("input", runCompare);
}
$("q-expr").addEventListener("input", runQuery);
$("q-lib").addEventListener("change", () => {
  if ($("q-lib").value) $("q-expr").value = $("q-lib").value;
  runQuery();
});

runAnalyze();
runCompare();
