/** Orchestration between the API client and the view model.  The DOM layer
 * and the integration tests both drive this class, so nothing in here may
 * touch `document` or `window`.
 *
 * Division of labor: the server owns every number.  The only arithmetic on
 * this side is comparing two server-sent rationals so the what-if panel can
 * say whether an interval moved.
 */

import { ApiError, SessionApi, type Rel, type StatusDelta } from "./api";
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
  type BoundCell,
  type BoundSides,
  type InlineError,
  type NarrowRow,
  type SessionView,
  type WhatIfView,
} from "./model";
import { cmpRatText } from "./rational";
import { checkSentence, spaceNames } from "./sentence";

type Field = InlineError["field"];

function sides(cell: { lower: string; upper: string; attainedLower: boolean; attainedUpper: boolean }): BoundSides {
  return {
    lower: cell.lower,
    upper: cell.upper,
    attainedLower: cell.attainedLower,
    attainedUpper: cell.attainedUpper,
  };
}

/** Did the interval get strictly smaller, counting a lost endpoint
 * (attained -> open) as smaller? */
function narrower(before: BoundSides, after: BoundSides): boolean {
  const lo = cmpRatText(after.lower, before.lower);
  const hi = cmpRatText(after.upper, before.upper);
  if (lo > 0 || hi < 0) return true;
  if (lo === 0 && before.attainedLower && !after.attainedLower) return true;
  if (hi === 0 && before.attainedUpper && !after.attainedUpper) return true;
  return false;
}

export class SessionController {
  view: SessionView;
  private names: readonly string[];

  private constructor(
    private api: SessionApi,
    view: SessionView,
    private onChange: (v: SessionView) => void,
  ) {
    this.view = view;
    this.names = spaceNames(view.space);
  }

  static async create(
    api: SessionApi,
    space: string,
    onChange: (v: SessionView) => void = () => {},
  ): Promise<SessionController> {
    const created = await api.createSession(space);
    const view = emptyView(created.id, space);
    const ctl = new SessionController(api, view, onChange);
    ctl.set({ ...view, revision: created.revision, consistent: created.consistent });
    return ctl;
  }

  private set(next: SessionView): void {
    this.view = next;
    this.onChange(next);
  }

  /** Client-side grammar check.  Returns true when the text parses; on a
   * reject it records the inline error and the caller must not send any
   * request for evaluation. */
  private accept(field: Field, text: string): boolean {
    const problem = checkSentence(text, this.names);
    if (problem === null) return true;
    this.set(
      setInlineError(this.view, {
        field,
        text,
        message: problem.message,
        offset: problem.offset,
      }),
    );
    return false;
  }

  /** Fallback for a server-side reject the mirror failed to predict: map the
   * `lhs:`/`rhs:`/`event:` prefix back onto a field so the caret still lands
   * somewhere sensible. */
  private serverReject(err: ApiError, texts: Partial<Record<string, string>>, fallback: Field): boolean {
    if (!(err instanceof ApiError) || err.payload.error !== "parse_error") return false;
    const m = /^(\w+): (.*)$/s.exec(err.payload.message);
    const which = m ? m[1] : null;
    const field: Field =
      which === "lhs" || which === "rhs" ? (fallback.startsWith("whatif") ? (`whatif-${which}` as Field) : which) : fallback;
    const key = which ?? "lhs";
    this.set(
      setInlineError(this.view, {
        field,
        text: texts[key] ?? "",
        message: m ? m[2]! : err.payload.message,
        offset: err.payload.offset ?? 0,
      }),
    );
    return true;
  }

  private async refreshPinned(): Promise<void> {
    if (!this.view.consistent) return;
    for (const cell of this.view.pinned) {
      const b = await this.api.bounds(this.view.sessionId, cell.event);
      this.set(setBound(this.view, cell.event, b));
    }
  }

  async enterJudgment(lhs: string, rel: Rel, rhs: string): Promise<void> {
    if (!this.accept("lhs", lhs)) return;
    if (!this.accept("rhs", rhs)) return;
    this.set(setPending(this.view, true));
    try {
      const delta = await this.api.assertJudgment(this.view.sessionId, lhs, rel, rhs);
      this.set(onAsserted(this.view, lhs, rel, rhs, delta));
      await this.refreshPinned();
    } catch (err) {
      if (!(err instanceof ApiError) || !this.serverReject(err, { lhs, rhs }, "lhs")) throw err;
    } finally {
      this.set(setPending(this.view, false));
    }
  }

  async retract(jid: string): Promise<void> {
    this.set(setPending(this.view, true));
    try {
      const delta = await this.api.retractJudgment(this.view.sessionId, jid);
      this.set(onRetracted(this.view, jid, delta));
      await this.refreshPinned();
    } finally {
      this.set(setPending(this.view, false));
    }
  }

  async pin(event: string): Promise<void> {
    if (!this.accept("pin", event)) return;
    this.set(setPending(this.view, true));
    try {
      this.set(pinCell(this.view, event));
      await this.refreshPinned();
    } catch (err) {
      if (!(err instanceof ApiError) || !this.serverReject(err, { event }, "pin")) throw err;
    } finally {
      this.set(setPending(this.view, false));
    }
  }

  /** Poll hook.  Adopts the server's revision when someone else moved the
   * session; cheap no-op otherwise. */
  async poll(): Promise<boolean> {
    if (this.view.pending) return false;
    const status = await this.api.status(this.view.sessionId);
    if (status.revision === this.view.revision) return false;
    this.set(onStatus(this.view, status));
    await this.refreshPinned();
    return true;
  }

  /** Preview a candidate judgment without committing it.  All evaluation is
   * delegated: a shadow session carries the current judgments plus the
   * candidate, and every interval in the comparison table is a server
   * answer. */
  async whatIf(lhs: string, rel: Rel, rhs: string): Promise<void> {
    if (!this.accept("whatif-lhs", lhs)) return;
    if (!this.accept("whatif-rhs", rhs)) return;
    this.set(setPending(this.view, true));
    try {
      const verdictView = await this.evaluateCandidate(lhs, rel, rhs);
      this.set(setWhatIf(this.view, verdictView));
    } catch (err) {
      if (!(err instanceof ApiError) || !this.serverReject(err, { lhs, rhs }, "whatif-lhs")) throw err;
    } finally {
      this.set(setPending(this.view, false));
    }
  }

  private async shadow(extra: { lhs: string; rel: Rel; rhs: string }): Promise<StatusDelta & { shadow_id: string }> {
    const created = await this.api.createSession(this.view.space);
    for (const j of activeJudgments(this.view)) {
      await this.api.assertJudgment(created.id, j.lhs, j.rel as Rel, j.rhs);
    }
    const delta = await this.api.assertJudgment(created.id, extra.lhs, extra.rel, extra.rhs);
    return { ...delta, shadow_id: created.id };
  }

  private async evaluateCandidate(lhs: string, rel: Rel, rhs: string): Promise<WhatIfView> {
    const committed = await this.shadow({ lhs, rel, rhs });
    if (!committed.consistent) {
      return { lhs, rel, rhs, verdict: "would be inconsistent", narrowed: [] };
    }
    if (await this.entailed(lhs, rel, rhs)) {
      return { lhs, rel, rhs, verdict: "already entailed", narrowed: [] };
    }
    const narrowed: NarrowRow[] = [];
    for (const cell of this.view.pinned.filter((c: BoundCell) => !c.stale)) {
      const b = await this.api.bounds(committed.shadow_id, cell.event);
      const after: BoundSides = {
        lower: b.lower,
        upper: b.upper,
        attainedLower: b.attained_lower,
        attainedUpper: b.attained_upper,
      };
      if (narrower(sides(cell), after)) {
        narrowed.push({ event: cell.event, before: sides(cell), after });
      }
    }
    return {
      lhs,
      rel,
      rhs,
      verdict: narrowed.length ? "informative" : "no effect on pinned bounds",
      narrowed,
    };
  }

  /** Does the current judgment set already force the candidate?
   * `>=` and `=` reduce to the entails query; a strict candidate holds
   * everywhere exactly when granting the reverse weak comparison is
   * unsatisfiable, which a throwaway session answers. */
  private async entailed(lhs: string, rel: Rel, rhs: string): Promise<boolean> {
    if (rel === ">=") {
      return (await this.api.entails(this.view.sessionId, lhs, rhs)).always;
    }
    if (rel === "=") {
      const fwd = await this.api.entails(this.view.sessionId, lhs, rhs);
      if (!fwd.always) return false;
      return (await this.api.entails(this.view.sessionId, rhs, lhs)).always;
    }
    const reversed = await this.shadow({ lhs: rhs, rel: ">=", rhs: lhs });
    return !reversed.consistent;
  }

  async commitWhatIf(): Promise<void> {
    const w = this.view.whatIf;
    if (w === null || w.verdict === "would be inconsistent") return;
    await this.enterJudgment(w.lhs, w.rel as Rel, w.rhs);
    this.set(setWhatIf(this.view, null));
  }

  discardWhatIf(): void {
    this.set(setWhatIf(this.view, null));
  }
}
