import init, {
  allSignatures,
  extremeSignatures,
  checkSignature,
  formulaStats,
  randomFormula,
} from "./pkg/xorsig_web.js";

const $ = (id) => document.getElementById(id);

function showError(e) {
  $("error").textContent = e ? String(e.message ?? e) : "";
}

function refreshStats() {
  try {
    const s = JSON.parse(formulaStats($("xnf").value));
    $("stats").textContent =
      `n=${s.n}  m=${s.m}  rank=${s.rank}  components=${s.components}  max width=${s.max_width}`;
    showError(null);
  } catch (e) {
    $("stats").textContent = "";
    showError(e);
  }
}

function render(result, millis) {
  const body = $("out").querySelector("tbody");
  body.replaceChildren();
  result.rows.forEach((row, i) => {
    const tr = document.createElement("tr");
    for (const text of [i + 1, row.signature === "" ? "(empty)" : row.signature, row.witness ?? ""]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.append(td);
    }
    body.append(tr);
  });
  const more = result.truncated ? " (limit reached)" : "";
  $("summary").textContent = `${result.rows.length} results in ${millis.toFixed(1)} ms${more}`;
}

function run() {
  const xnf = $("xnf").value;
  const kind = document.querySelector("input[name=kind]:checked").value;
  const limit = Math.max(1, Number($("limit").value) || 1);
  const t0 = performance.now();
  try {
    const json = kind === "all"
      ? allSignatures(xnf, limit)
      : extremeSignatures(xnf, kind, $("engine").value, limit);
    render(JSON.parse(json), performance.now() - t0);
    showError(null);
  } catch (e) {
    showError(e);
  }
}

function check() {
  try {
    const v = JSON.parse(checkSignature($("xnf").value, $("sig").value));
    $("verdict").textContent = `signature=${v.signature} maximal=${v.maximal} minimal=${v.minimal}`;
    showError(null);
  } catch (e) {
    $("verdict").textContent = "";
    showError(e);
  }
}

function random() {
  const seed = Math.floor(Math.random() * 2 ** 32);
  $("xnf").value = `c seed ${seed}\n` + randomFormula(seed, Number($("rn").value), Number($("rm").value), $("r2").checked);
  refreshStats();
}

await init();
$("xnf").addEventListener("input", refreshStats);
$("run").addEventListener("click", run);
$("check").addEventListener("click", check);
$("random").addEventListener("click", random);
refreshStats();
run();
