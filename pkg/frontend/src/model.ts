/** View state for one session: everything the renderer shows, nothing it
 * computes.  All updates are pure so the replay invariant is testable:
 * running the same journal of operations through these reducers must
 * land on the same state.
 */

import type { BoundsPayload, StatusDelta, StatusPayload } from "./api";

export interface JudgmentView {
  id: string;
  lhs: string;
  rel: string;
  rhs: string;
  active: boolean;
  a3Trivial: boolean;
}

export interface BoundCell {
  event: string;
  lower: string;
  upper: string;
  attainedLower: boolean;
  attainedUpper: boolean;
  stale: boolean;
}

export interface BoundSides {
  lower: string;
  upper: string;
  attainedLower: boolean;
  attainedUpper: boolean;
}

export interface NarrowRow {
  event: string;
  before: BoundSides;
  after: BoundSides;
}

export type WhatIfVerdict =
  | "already entailed"
  | "would be inconsistent"
  | "informative"
  | "no effect on pinned bounds";

export interface WhatIfView {
  lhs: string;
  rel: string;
  rhs: string;
  verdict: WhatIfVerdict;
  narrowed: NarrowRow[];
}

export interface InlineError {
  field: "lhs" | "rhs" | "pin" | "whatif-lhs" | "whatif-rhs";
  text: string;
  message: string;
  offset: number;
}

export interface SessionView {
  sessionId: string;
  space: string;
  revision: number;
  consistent: boolean;
  margin: string | null;
  conflict: string[];
  judgments: JudgmentView[];
  pinned: BoundCell[];
  whatIf: WhatIfView | null;
  pending: boolean;
  inlineError: InlineError | null;
}

export function emptyView(sessionId: string, space: string): SessionView {
  return {
    sessionId,
    space,
    revision: 0,
    consistent: true,
    margin: "0",
    conflict: [],
    judgments: [],
    pinned: [],
    whatIf: null,
    pending: false,
    inlineError: null,
  };
}

function withDelta(view: SessionView, delta: StatusDelta): SessionView {
  return {
    ...view,
    revision: delta.revision,
    consistent: delta.consistent,
    margin: delta.margin,
    conflict: delta.conflict ?? [],
    inlineError: null,
  };
}

export function onAsserted(
  view: SessionView,
  lhs: string,
  rel: string,
  rhs: string,
  delta: StatusDelta,
): SessionView {
  const row: JudgmentView = {
    id: delta.judgment_id ?? "",
    lhs,
    rel,
    rhs,
    active: true,
    a3Trivial: delta.a3_trivial === true,
  };
  const next = withDelta(view, delta);
  next.judgments = [...view.judgments, row];
  next.pinned = markStale(view.pinned);
  return next;
}

export function onRetracted(view: SessionView, jid: string, delta: StatusDelta): SessionView {
  const next = withDelta(view, delta);
  next.judgments = view.judgments.map((j) => (j.id === jid ? { ...j, active: false } : j));
  next.pinned = markStale(view.pinned);
  return next;
}

/** Poll path: adopt server status wholesale.  Rows the server no longer
 * lists were retracted elsewhere; rows it lists that we lack were
 * asserted elsewhere (no a3 flag is recoverable for those). */
export function onStatus(view: SessionView, st: StatusPayload): SessionView {
  const alive = new Map(st.judgments.map((j) => [j.id, j]));
  const seen = new Set<string>();
  const judgments = view.judgments.map((j) => {
    seen.add(j.id);
    return alive.has(j.id) ? { ...j, active: true } : { ...j, active: false };
  });
  for (const j of st.judgments) {
    if (!seen.has(j.id)) {
      judgments.push({ ...j, active: true, a3Trivial: false });
    }
  }
  const next = withDelta(view, st);
  next.judgments = judgments;
  next.pinned = markStale(view.pinned);
  return next;
}

function markStale(pinned: BoundCell[]): BoundCell[] {
  return pinned.map((c) => ({ ...c, stale: true }));
}

export function pinCell(view: SessionView, event: string): SessionView {
  if (view.pinned.some((c) => c.event === event)) return view;
  const cell: BoundCell = {
    event,
    lower: "0",
    upper: "1",
    attainedLower: false,
    attainedUpper: false,
    stale: true,
  };
  return { ...view, pinned: [...view.pinned, cell], inlineError: null };
}

export function setBound(view: SessionView, event: string, payload: BoundsPayload): SessionView {
  const pinned = view.pinned.map((c) =>
    c.event === event
      ? {
          event,
          lower: payload.lower,
          upper: payload.upper,
          attainedLower: payload.attained_lower,
          attainedUpper: payload.attained_upper,
          stale: false,
        }
      : c,
  );
  return { ...view, pinned };
}

export function setWhatIf(view: SessionView, whatIf: WhatIfView | null): SessionView {
  return { ...view, whatIf, inlineError: null };
}

export function setPending(view: SessionView, pending: boolean): SessionView {
  return { ...view, pending };
}

export function setInlineError(view: SessionView, err: InlineError | null): SessionView {
  return { ...view, inlineError: err };
}

export function activeJudgments(view: SessionView): JudgmentView[] {
  return view.judgments.filter((j) => j.active);
}
