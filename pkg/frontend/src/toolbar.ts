import type { Refactoring } from "./types.js";
import { kindLabel } from "./format.js";

/** Count button plus the full refactoring list for the pair on screen.
 *  The list stays in the DOM; the count button only toggles visibility. */
export function renderToolbar(
  refactorings: Refactoring[],
  onOpen: (r: Refactoring) => void,
): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "toolbar";

  const count = document.createElement("button");
  count.type = "button";
  count.className = "toolbar-count";
  const n = refactorings.length;
  count.textContent = `${n} refactoring${n === 1 ? "" : "s"}`;
  count.disabled = n === 0;

  const panel = document.createElement("div");
  panel.className = "toolbar-panel";
  panel.hidden = true;
  for (const r of refactorings) {
    const entry = document.createElement("button");
    entry.type = "button";
    entry.className = "toolbar-entry";
    const kind = document.createElement("span");
    kind.className = "toolbar-entry-kind";
    kind.textContent = kindLabel(r.kind);
    const desc = document.createElement("span");
    desc.className = "toolbar-entry-desc";
    desc.textContent = r.description;
    entry.append(kind, desc);
    entry.addEventListener("click", () => onOpen(r));
    panel.append(entry);
  }

  count.addEventListener("click", () => {
    panel.hidden = !panel.hidden;
  });

  bar.append(count, panel);
  return bar;
}
