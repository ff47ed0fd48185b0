import init, { analyze, syllables, score } from "./pkg/readcorpus_wasm.js";

const $ = (id) => document.getElementById(id);
let last = null;

function row(name, value) {
  const tr = document.createElement("tr");
  const th = document.createElement("th");
  const td = document.createElement("td");
  th.textContent = name;
  td.textContent = value;
  td.className = "num";
  tr.append(th, td);
  return tr;
}

function refresh() {
  $("error").textContent = "";
  const lang = $("lang").value;
  try {
    last = JSON.parse(analyze($("text").value, lang, $("stop").value));
    $("counts").replaceChildren(
      row("sentences", last.sentences),
      row("words", last.words),
      row("syllables", last.syllables),
      row("letters", last.letters),
      row("hard words", last.hard_words),
      row("distinct words", last.distinct_words),
    );
    $("scores").replaceChildren(
      ...Object.entries(last.scores).map(([k, v]) => row(k, v.toFixed(2))),
      ...last.errors.map((e) => row("error", e)),
    );
    $("words").replaceChildren(
      ...JSON.parse(syllables($("text").value, lang)).map((w) => {
        const span = document.createElement("span");
        span.className = w.hard ? "hard" : "";
        span.textContent = w.word;
        const sub = document.createElement("sub");
        sub.textContent = w.syllables;
        span.append(sub);
        return span;
      }),
    );
    if (last.words > 0 && last.sentences > 0) {
      $("wps").value = (last.words / last.sentences).toFixed(1);
      $("spw").value = (last.syllables / last.words).toFixed(2);
    }
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
  }
  whatIf();
}

function whatIf() {
  const wps = Number($("wps").value);
  const spw = Number($("spw").value);
  $("wps-out").textContent = wps.toFixed(1);
  $("spw-out").textContent = spw.toFixed(2);
  // scale to integer counts over a notional 1000 sentences
  const sentences = 1000;
  const words = Math.round(wps * sentences);
  const lettersPerWord = last && last.words ? last.letters / last.words : 5;
  const hardShare = last && last.words ? last.hard_words / last.words : 0.1;
  try {
    const v = score(
      $("formula").value,
      words,
      sentences,
      Math.round(spw * words),
      Math.round(lettersPerWord * words),
      Math.round(hardShare * words),
    );
    $("what-if").textContent = v.toFixed(2);
  } catch (e) {
    $("what-if").textContent = e.message ?? String(e);
  }
}

await init();
for (const id of ["text", "lang", "stop"]) $(id).addEventListener("input", refresh);
for (const id of ["wps", "spw", "formula"]) $(id).addEventListener("input", whatIf);
refresh();
