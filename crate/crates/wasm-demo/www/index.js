import init, { cmi_sweep, commutation_report, denoise } from "./pkg/qgm_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guarded(errorId, fn) {
  return () => {
    $(errorId).textContent = "";
    try {
      fn();
    } catch (e) {
      $(errorId).textContent = String(e);
    }
  };
}

function fields() {
  return [num("h1"), num("h2"), num("h3")];
}

const runSweep = guarded("sweep-error", () => {
  const out = JSON.parse(cmi_sweep(...fields(), num("bmax"), num("steps")));
  $("plot").innerHTML = out.svg;
  const link = $("csv");
  URL.revokeObjectURL(link.href);
  link.href = URL.createObjectURL(new Blob([out.csv], { type: "text/csv" }));
});

const runAudit = guarded("audit-error", () => {
  const out = JSON.parse(commutation_report(...fields(), num("gbeta")));
  const rows = out.commutation.pairs.map(
    (p) => `<tr><td>${p.first}</td><td>${p.second}</td><td>${p.norm.toExponential(3)}</td><td>${p.commutes ? "commute" : "do not commute"}</td></tr>`
  );
  $("pairs").innerHTML = "<tr><th>group</th><th>group</th><th>||[h, h']||</th><th></th></tr>" + rows.join("");
  const f = out.factorization;
  $("gap").textContent =
    `Tr exp(-beta H) = ${f.exact_z.toPrecision(8)}, ordered product of exp(-beta h) = ` +
    `${f.sequential.toPrecision(8)}, relative gap ${f.gap.toExponential(3)}`;
});

const runDenoise = guarded("denoise-error", () => {
  $("cleaned").textContent = denoise($("grid").value, num("coupling"), num("evidence"));
});

await init();
$("run").addEventListener("click", runSweep);
$("audit").addEventListener("click", runAudit);
$("clean").addEventListener("click", runDenoise);
for (const id of ["h1", "h2", "h3", "bmax", "steps"]) {
  $(id).addEventListener("change", () => {
    runSweep();
    runAudit();
  });
}
runSweep();
runAudit();
runDenoise();
