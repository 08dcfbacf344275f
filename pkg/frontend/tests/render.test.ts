import { describe, expect, it } from "vitest";

import type { StatusDelta } from "../src/api";
import {
  emptyView,
  onAsserted,
  onRetracted,
  pinCell,
  setBound,
  setInlineError,
  setWhatIf,
  type SessionView,
} from "../src/model";
import { esc, render, renderCreateForm } from "../src/render";
import { assertNoFloats } from "./lint";

function checked(view: SessionView): string {
  const html = render(view);
  assertNoFloats(html);
  return html;
}

const ok = (revision: number, extra: Partial<StatusDelta> = {}): StatusDelta => ({
  revision,
  consistent: true,
  margin: "1/9",
  conflict: null,
  ...extra,
});

function chainView(): SessionView {
  let v = emptyView("s1", "worlds: w1 w2 w3");
  v = onAsserted(v, "w1", ">=", "w2", ok(1, { judgment_id: "j1", margin: "0" }));
  v = onAsserted(v, "w2", ">=", "w3", ok(2, { judgment_id: "j2", margin: "0" }));
  v = pinCell(v, "w1");
  v = setBound(v, "w1", { revision: 2, lower: "1/3", upper: "1", attained_lower: true, attained_upper: true });
  return v;
}

describe("escaping", () => {
  it("escapes markup in user text", () => {
    expect(esc(`<b a="c">&`)).toBe("&lt;b a=&quot;c&quot;&gt;&amp;");
  });

  it("never emits raw judgment text", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "w1 & w2", ">", "F", ok(1, { judgment_id: "j1" }));
    const html = checked(v);
    expect(html).toContain("w1 &amp; w2");
    expect(html).not.toContain("w1 & w2</code>");
  });
});

describe("frames", () => {
  it("empty session", () => {
    expect(checked(emptyView("s1", "worlds: w1 w2 w3"))).toMatchSnapshot();
  });

  it("chain with one pinned cell", () => {
    const html = checked(chainView());
    expect(html).toContain(`<td class="bounds-cell">1/3 … 1</td>`);
    expect(html).toMatchSnapshot();
  });

  it("unattained endpoints render emphasized", () => {
    let v = chainView();
    v = setBound(v, "w1", { revision: 2, lower: "1/3", upper: "1", attained_lower: false, attained_upper: true });
    expect(checked(v)).toContain(`<td class="bounds-cell"><em>1/3</em> … 1</td>`);
  });

  it("conflict banner lists one-click retractions", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "w1", ">", "w2", ok(1, { judgment_id: "j1", margin: "1/9" }));
    v = onAsserted(v, "w2", ">", "w1", {
      revision: 2,
      consistent: false,
      margin: null,
      conflict: ["j1", "j2"],
      judgment_id: "j2",
    });
    const html = checked(v);
    expect(html).toContain("inconsistent");
    expect(html).toContain(`data-action="retract" data-jid="j1"`);
    expect(html).toContain(`data-action="retract" data-jid="j2"`);
    expect(html).toMatchSnapshot();
  });

  it("inline caret lands under the offending column", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = setInlineError(v, { field: "lhs", text: "w1 or", message: "unexpected end of sentence", offset: 5 });
    const html = checked(v);
    expect(html).toContain(`<pre class="caret">w1 or\n     ^ unexpected end of sentence</pre>`);
  });

  it("what-if comparison table shows both intervals", () => {
    let v = chainView();
    v = setWhatIf(v, {
      lhs: "w1",
      rel: ">=",
      rhs: "w2 or w3",
      verdict: "informative",
      narrowed: [
        {
          event: "w1",
          before: { lower: "1/3", upper: "1", attainedLower: true, attainedUpper: true },
          after: { lower: "1/2", upper: "1", attainedLower: true, attainedUpper: true },
        },
      ],
    });
    const html = checked(v);
    expect(html).toContain("<strong>informative</strong>");
    expect(html).toContain("1/2 … 1");
    expect(html).toMatchSnapshot();
  });

  it("retracted rows stay visible but inert", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "w1", ">", "w2", ok(1, { judgment_id: "j1" }));
    v = onRetracted(v, "j1", ok(2, { margin: "0" }));
    const html = checked(v);
    expect(html).toContain(`class="retracted"`);
    expect(html).not.toContain(`data-jid="j1"`);
  });

  it("create form", () => {
    const html = renderCreateForm(false, null);
    assertNoFloats(html);
    expect(html).toMatchSnapshot();
  });
});

describe("determinism", () => {
  it("replaying the same operations reproduces the frame byte for byte", () => {
    const run = (): string => {
      let v = emptyView("s1", "worlds: w1 w2 w3");
      v = onAsserted(v, "w1", ">=", "w2", ok(1, { judgment_id: "j1", margin: "0" }));
      v = pinCell(v, "w2");
      v = setBound(v, "w2", { revision: 1, lower: "0", upper: "1/2", attained_lower: true, attained_upper: true });
      v = onAsserted(v, "w2", ">=", "w3", ok(2, { judgment_id: "j2", margin: "0" }));
      v = setBound(v, "w2", { revision: 2, lower: "0", upper: "1/2", attained_lower: true, attained_upper: true });
      v = onRetracted(v, "j1", ok(3, { margin: "0" }));
      return render(v);
    };
    expect(run()).toBe(run());
  });

  it("the linter itself catches a float", () => {
    expect(() => assertNoFloats("<td>0.333</td>")).toThrow(/floating-point/);
  });
});
