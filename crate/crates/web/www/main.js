import init, { checkPair, partMapTable, dumpOperator } from "./pkg/kms_web.js";

const $ = (id) => document.getElementById(id);

function guarded(out, f) {
  out.classList.remove("err");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

await init();

$("check").onclick = () => {
  $("summary").textContent = "";
  guarded($("check-out"), () => {
    const json = checkPair($("a").value, $("b").value, Number($("n").value), 1);
    const r = JSON.parse(json);
    $("summary").textContent = `L^p: ${r.lp_valid}, L^1: ${r.l1_valid}, via: ${r.via ?? "-"}`;
    return json;
  });
};
$("table").onclick = () => guarded($("table-out"), () => partMapTable(3, 1));
$("dump").onclick = () => guarded($("dump-out"), () => dumpOperator($("expr").value, 3));
