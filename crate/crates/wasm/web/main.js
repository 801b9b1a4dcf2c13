// Loads the bindings generated into ../pkg by wasm-bindgen (see README).
import init, { decide, excluded_rays, witness_svg } from "../pkg/flatres_wasm.js";

const $ = (id) => document.getElementById(id);

function list(text) {
  return text.split(/[\s,]+/).filter((x) => x.length > 0);
}

// "a", "a/b", "x+yi", "x-yi", "yi" to {"re":[n,d],"im":[n,d]}
function fraction(text) {
  const m = text.match(/^([+-]?\d+)(?:\/(\d+))?$/);
  if (!m) throw new Error(`not a rational: ${text}`);
  return [Number(m[1]), Number(m[2] ?? 1)];
}

function gaussian(text) {
  const t = text.replace(/\s+/g, "");
  if (!t.endsWith("i")) return { re: fraction(t), im: [0, 1] };
  const body = t.slice(0, -1);
  // the imaginary part starts at the last sign that is not the first character
  const cut = Math.max(body.lastIndexOf("+"), body.lastIndexOf("-"));
  const re = cut > 0 ? fraction(body.slice(0, cut)) : [0, 1];
  const coeff = cut > 0 ? body.slice(cut) : body;
  const im = coeff === "" || coeff === "+" ? [1, 1] : coeff === "-" ? [-1, 1] : fraction(coeff);
  return { re, im };
}

function request() {
  return JSON.stringify({
    format_version: 1,
    stratum: {
      genus: Number($("genus").value),
      zeros: list($("zeros").value).map(Number),
      poles: list($("poles").value).map(Number),
      simple_poles: Number($("simple").value),
    },
    residues: list($("residues").value).map(gaussian),
  });
}

function show(text, isError) {
  $("status").textContent = isError ? text : "";
  $("status").className = isError ? "error" : "";
  $("output").hidden = isError || text === "";
  if (!isError) $("output").textContent = text;
}

function guarded(action) {
  return () => {
    try {
      action();
    } catch (e) {
      show(String(e.message ?? e), true);
    }
  };
}

await init();

$("decide").addEventListener("click", guarded(() => {
  $("drawing").innerHTML = "";
  show(decide(request()), false);
}));

$("witness").addEventListener("click", guarded(() => {
  show("", false);
  $("drawing").innerHTML = witness_svg(request());
}));

$("rays").addEventListener("click", guarded(() => {
  $("drawing").innerHTML = "";
  const doc = JSON.parse(excluded_rays(Number($("s").value), Number($("maxzero").value)));
  const rows = doc.rays.map((r) => `(${r.join(", ")})`);
  show(`${doc.count} excluded rays\n${rows.join("\n")}`, false);
}));
