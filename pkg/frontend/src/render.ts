/** Pure view -> HTML string.  No state, no formatting of numbers: every
 * rational lands in the DOM as the exact string the API sent.  Snapshot
 * tests freeze this output, so keep it deterministic.
 */

import type { BoundSides, SessionView } from "./model";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function boundsText(b: BoundSides): string {
  // italic endpoint = approached but not attained
  const lo = b.attainedLower ? esc(b.lower) : `<em>${esc(b.lower)}</em>`;
  const hi = b.attainedUpper ? esc(b.upper) : `<em>${esc(b.upper)}</em>`;
  return `${lo} … ${hi}`;
}

function caretBlock(text: string, offset: number, message: string): string {
  const pad = " ".repeat(offset);
  return `<pre class="caret">${esc(text)}\n${pad}^ ${esc(message)}</pre>`;
}

function banner(view: SessionView): string {
  if (view.consistent) {
    const margin = view.margin === null ? "" : ` · margin ${esc(view.margin)}`;
    return `<div class="banner ok">consistent${margin}</div>`;
  }
  const members = view.conflict
    .map(
      (jid) =>
        `<button data-action="retract" data-jid="${esc(jid)}"${view.pending ? " disabled" : ""}>retract ${esc(jid)}</button>`,
    )
    .join(" ");
  return `<div class="banner bad">inconsistent · minimal conflict: ${view.conflict.map(esc).join(", ")} ${members}</div>`;
}

function judgmentRows(view: SessionView): string {
  if (view.judgments.length === 0) {
    return `<tr><td colspan="4" class="empty">no judgments yet</td></tr>`;
  }
  const inConflict = new Set(view.conflict);
  return view.judgments
    .map((j) => {
      const classes = [];
      if (!j.active) classes.push("retracted");
      if (j.active && inConflict.has(j.id)) classes.push("conflict");
      const badge = !j.active ? "retracted" : j.a3Trivial ? "A3-trivial" : "active";
      const button = j.active
        ? `<button data-action="retract" data-jid="${esc(j.id)}"${view.pending ? " disabled" : ""}>retract</button>`
        : "";
      return (
        `<tr${classes.length ? ` class="${classes.join(" ")}"` : ""}>` +
        `<td>${esc(j.id)}</td>` +
        `<td><code>${esc(j.lhs)}</code> ${esc(j.rel)} <code>${esc(j.rhs)}</code></td>` +
        `<td>${badge}</td>` +
        `<td>${button}</td></tr>`
      );
    })
    .join("\n");
}

function entrySection(view: SessionView): string {
  const dis = view.pending ? " disabled" : "";
  const err =
    view.inlineError && (view.inlineError.field === "lhs" || view.inlineError.field === "rhs")
      ? `<div class="inline-error" data-field="${view.inlineError.field}">${caretBlock(
          view.inlineError.text,
          view.inlineError.offset,
          view.inlineError.message,
        )}</div>`
      : "";
  return `<section class="entry">
<h2>new judgment</h2>
<form data-action="assert">
<input name="lhs" placeholder="sentence"${dis}>
<select name="rel"${dis}><option>&gt;</option><option>&gt;=</option><option>=</option></select>
<input name="rhs" placeholder="sentence"${dis}>
<button type="submit"${dis}>assert</button>
</form>
${err}
</section>`;
}

function pinnedSection(view: SessionView): string {
  const dis = view.pending ? " disabled" : "";
  const rows =
    view.pinned.length === 0
      ? `<tr><td colspan="2" class="empty">no pinned events</td></tr>`
      : view.pinned
          .map(
            (c) =>
              `<tr${c.stale ? ` class="stale"` : ""}><td><code>${esc(c.event)}</code></td>` +
              `<td class="bounds-cell">${c.stale ? "…" : boundsText(c)}</td></tr>`,
          )
          .join("\n");
  const err =
    view.inlineError && view.inlineError.field === "pin"
      ? `<div class="inline-error" data-field="pin">${caretBlock(
          view.inlineError.text,
          view.inlineError.offset,
          view.inlineError.message,
        )}</div>`
      : "";
  return `<section class="pinned">
<h2>pinned bounds</h2>
<table>${rows}</table>
<form data-action="pin"><input name="event" placeholder="event to pin"${dis}><button type="submit"${dis}>pin</button></form>
${err}
<p class="legend">italic endpoint = bound approached but not attained</p>
</section>`;
}

function whatIfSection(view: SessionView): string {
  const dis = view.pending || !view.consistent ? " disabled" : "";
  let result = "";
  if (view.whatIf) {
    const w = view.whatIf;
    const head = `<p class="verdict">candidate <code>${esc(w.lhs)}</code> ${esc(w.rel)} <code>${esc(w.rhs)}</code>: <strong>${w.verdict}</strong></p>`;
    const rows = w.narrowed
      .map(
        (n) =>
          `<tr><td><code>${esc(n.event)}</code></td>` +
          `<td class="bounds-cell">${boundsText(n.before)}</td>` +
          `<td class="bounds-cell">${boundsText(n.after)}</td></tr>`,
      )
      .join("\n");
    const table = w.narrowed.length
      ? `<table><tr><th>event</th><th>now</th><th>if committed</th></tr>\n${rows}</table>`
      : "";
    result = head + table;
  }
  const err =
    view.inlineError &&
    (view.inlineError.field === "whatif-lhs" || view.inlineError.field === "whatif-rhs")
      ? `<div class="inline-error" data-field="${view.inlineError.field}">${caretBlock(
          view.inlineError.text,
          view.inlineError.offset,
          view.inlineError.message,
        )}</div>`
      : "";
  return `<section class="whatif">
<h2>what if</h2>
<form data-action="whatif">
<input name="lhs" placeholder="sentence"${dis}>
<select name="rel"${dis}><option>&gt;</option><option>&gt;=</option><option>=</option></select>
<input name="rhs" placeholder="sentence"${dis}>
<button type="submit"${dis}>preview</button>
<button type="button" data-action="commit-whatif"${view.whatIf && view.whatIf.verdict !== "would be inconsistent" ? dis : " disabled"}>commit</button>
<button type="button" data-action="discard-whatif"${view.whatIf ? dis : " disabled"}>discard</button>
</form>
${err}
${result}
</section>`;
}

export function render(view: SessionView): string {
  return `<div class="console">
<header>
<h1>belief elicitation console</h1>
<div class="session">session <code>${esc(view.sessionId)}</code> · space <code>${esc(view.space)}</code> · revision ${view.revision}</div>
${banner(view)}
</header>
<section class="judgments">
<h2>judgments</h2>
<table>
<tr><th>id</th><th>comparison</th><th>status</th><th></th></tr>
${judgmentRows(view)}
</table>
</section>
${entrySection(view)}
${pinnedSection(view)}
${whatIfSection(view)}
</div>`;
}

/** The pre-session form.  Kept here so everything user-visible renders
 * through one pure module. */
export function renderCreateForm(pending: boolean, error: string | null): string {
  const dis = pending ? " disabled" : "";
  const err = error ? `<div class="inline-error">${esc(error)}</div>` : "";
  return `<div class="console">
<header><h1>belief elicitation console</h1></header>
<section class="create">
<h2>new session</h2>
<form data-action="create">
<input name="space" placeholder="worlds: w1 w2 w3" value="worlds: w1 w2 w3"${dis}>
<button type="submit"${dis}>create</button>
</form>
${err}
</section>
</div>`;
}
