/** Browser entry point.  All state lives in the controller; this file only
 * wires DOM events to flows and repaints on change.
 */

import { SessionApi, type Rel } from "./api";
import { SessionController } from "./flows";
import { render, renderCreateForm } from "./render";

const POLL_MS = 1500;

function apiBase(): string {
  const q = new URLSearchParams(window.location.search);
  return q.get("api") ?? "";
}

function field(form: HTMLFormElement, name: string): string {
  const data = new FormData(form);
  const value = data.get(name);
  return typeof value === "string" ? value : "";
}

function main(): void {
  const root = document.getElementById("root");
  if (root === null) throw new Error("missing #root element");
  const api = new SessionApi(apiBase());

  let controller: SessionController | null = null;
  let creating = false;

  const paintCreate = (error: string | null) => {
    root.innerHTML = renderCreateForm(creating, error);
  };

  const attach = (ctl: SessionController) => {
    controller = ctl;
    root.innerHTML = render(ctl.view);
    window.setInterval(() => {
      if (controller !== null && !controller.view.pending) {
        controller.poll().catch((err) => console.error(err));
      }
    }, POLL_MS);
  };

  root.addEventListener("submit", (e) => {
    const form = e.target;
    if (!(form instanceof HTMLFormElement)) return;
    e.preventDefault();
    const action = form.dataset["action"];
    const run = async () => {
      if (action === "create") {
        creating = true;
        paintCreate(null);
        try {
          attach(
            await SessionController.create(api, field(form, "space"), (v) => {
              root.innerHTML = render(v);
            }),
          );
        } catch (err) {
          creating = false;
          paintCreate(err instanceof Error ? err.message : String(err));
        }
        return;
      }
      if (controller === null) return;
      if (action === "assert") {
        await controller.enterJudgment(field(form, "lhs"), field(form, "rel") as Rel, field(form, "rhs"));
      } else if (action === "pin") {
        await controller.pin(field(form, "event"));
      } else if (action === "whatif") {
        await controller.whatIf(field(form, "lhs"), field(form, "rel") as Rel, field(form, "rhs"));
      }
    };
    run().catch((err) => console.error(err));
  });

  root.addEventListener("click", (e) => {
    if (controller === null) return;
    const target = e.target;
    if (!(target instanceof HTMLElement)) return;
    const button = target.closest("button[data-action]");
    if (!(button instanceof HTMLButtonElement) || button.disabled) return;
    const action = button.dataset["action"];
    const run = async () => {
      if (action === "retract") {
        const jid = button.dataset["jid"];
        if (jid !== undefined && controller !== null) await controller.retract(jid);
      } else if (action === "commit-whatif") {
        if (controller !== null) await controller.commitWhatIf();
      } else if (action === "discard-whatif") {
        controller?.discardWhatIf();
      }
    };
    run().catch((err) => console.error(err));
  });

  paintCreate(null);
}

main();
