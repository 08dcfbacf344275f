import { describe, expect, it } from "vitest";

import type { StatusDelta, StatusPayload } from "../src/api";
import {
  activeJudgments,
  emptyView,
  onAsserted,
  onRetracted,
  onStatus,
  pinCell,
  setBound,
  setInlineError,
  setPending,
  setWhatIf,
} from "../src/model";

const ok = (revision: number, extra: Partial<StatusDelta> = {}): StatusDelta => ({
  revision,
  consistent: true,
  margin: "1/9",
  conflict: null,
  ...extra,
});

describe("judgment reducers", () => {
  it("starts consistent with zero margin", () => {
    const v = emptyView("s1", "worlds: w1 w2 w3");
    expect(v.consistent).toBe(true);
    expect(v.margin).toBe("0");
    expect(v.revision).toBe(0);
    expect(v.judgments).toEqual([]);
  });

  it("appends asserted rows and adopts the delta", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "w1", ">", "w2", ok(1, { judgment_id: "j1" }));
    expect(v.judgments).toEqual([
      { id: "j1", lhs: "w1", rel: ">", rhs: "w2", active: true, a3Trivial: false },
    ]);
    expect(v.revision).toBe(1);
    expect(v.margin).toBe("1/9");
  });

  it("keeps the A3 flag only when the delta raised it", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "F", ">", "w1", {
      revision: 1,
      consistent: false,
      margin: null,
      conflict: ["j1"],
      judgment_id: "j1",
      a3_trivial: true,
    });
    expect(v.judgments[0]?.a3Trivial).toBe(true);
    expect(v.consistent).toBe(false);
    expect(v.conflict).toEqual(["j1"]);
    expect(v.margin).toBeNull();
  });

  it("retraction deactivates without deleting", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "w1", ">", "w2", ok(1, { judgment_id: "j1" }));
    v = onRetracted(v, "j1", ok(2, { margin: "0" }));
    expect(v.judgments).toHaveLength(1);
    expect(v.judgments[0]?.active).toBe(false);
    expect(activeJudgments(v)).toEqual([]);
  });

  it("poll merge keeps local flags and learns foreign rows", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = onAsserted(v, "F", ">", "w1", {
      revision: 1,
      consistent: false,
      margin: null,
      conflict: ["j1"],
      judgment_id: "j1",
      a3_trivial: true,
    });
    const st: StatusPayload = {
      revision: 3,
      consistent: true,
      margin: "1/4",
      conflict: null,
      judgments: [{ id: "j2", lhs: "w2", rel: ">=", rhs: "w3" }],
    };
    v = onStatus(v, st);
    // j1 was retracted elsewhere, j2 asserted elsewhere
    expect(v.judgments.map((j) => [j.id, j.active])).toEqual([
      ["j1", false],
      ["j2", true],
    ]);
    expect(v.judgments[0]?.a3Trivial).toBe(true);
    expect(v.revision).toBe(3);
  });
});

describe("pinned bounds reducers", () => {
  it("pins once per event and starts stale", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = pinCell(v, "w1");
    v = pinCell(v, "w1");
    expect(v.pinned).toHaveLength(1);
    expect(v.pinned[0]?.stale).toBe(true);
  });

  it("setBound fills the cell verbatim and clears staleness", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = pinCell(v, "w1");
    v = setBound(v, "w1", {
      revision: 2,
      lower: "1/3",
      upper: "1",
      attained_lower: true,
      attained_upper: true,
    });
    expect(v.pinned[0]).toEqual({
      event: "w1",
      lower: "1/3",
      upper: "1",
      attainedLower: true,
      attainedUpper: true,
      stale: false,
    });
  });

  it("any mutation marks every pin stale", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = pinCell(v, "w1");
    v = setBound(v, "w1", {
      revision: 1,
      lower: "0",
      upper: "1",
      attained_lower: true,
      attained_upper: true,
    });
    v = onAsserted(v, "w1", ">", "w2", ok(2, { judgment_id: "j1" }));
    expect(v.pinned[0]?.stale).toBe(true);
  });
});

describe("transient state", () => {
  it("pending and inline errors flip independently", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = setPending(v, true);
    v = setInlineError(v, { field: "lhs", text: "w1 or", message: "unexpected end of sentence", offset: 5 });
    expect(v.pending).toBe(true);
    expect(v.inlineError?.offset).toBe(5);
    v = setPending(v, false);
    expect(v.inlineError).not.toBeNull();
  });

  it("a successful delta clears the inline error", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = setInlineError(v, { field: "rhs", text: "(w1", message: "expected ')'", offset: 3 });
    v = onAsserted(v, "w1", ">", "w2", ok(1, { judgment_id: "j1" }));
    expect(v.inlineError).toBeNull();
  });

  it("what-if result is held until discarded", () => {
    let v = emptyView("s1", "worlds: w1 w2 w3");
    v = setWhatIf(v, { lhs: "w1", rel: ">", rhs: "w2", verdict: "informative", narrowed: [] });
    expect(v.whatIf?.verdict).toBe("informative");
    v = setWhatIf(v, null);
    expect(v.whatIf).toBeNull();
  });
});
